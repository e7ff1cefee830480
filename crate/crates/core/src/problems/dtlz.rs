use std::f64::consts::{FRAC_PI_2, PI};

/// Rastrigin-like distance function shared by DTLZ1 and DTLZ3.
fn g_multimodal(tail: &[f64]) -> f64 {
    let sum: f64 = tail
        .iter()
        .map(|&x| (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos())
        .sum();
    100.0 * (tail.len() as f64 + sum)
}

fn g_sphere(tail: &[f64]) -> f64 {
    tail.iter().map(|&x| (x - 0.5).powi(2)).sum()
}

pub(super) fn dtlz1(x: &[f64], m: usize) -> Vec<f64> {
    let (head, tail) = x.split_at(m - 1);
    let scale = 0.5 * (1.0 + g_multimodal(tail));
    (0..m)
        .map(|i| {
            // objective i keeps the first m-1-i position variables
            let kept = m - 1 - i;
            let mut f = scale * head[..kept].iter().product::<f64>();
            if i > 0 {
                f *= 1.0 - head[kept];
            }
            f
        })
        .collect()
}

fn spherical(head: &[f64], radius: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let kept = m - 1 - i;
            let mut f = radius
                * head[..kept]
                    .iter()
                    .map(|&t| (t * FRAC_PI_2).cos())
                    .product::<f64>();
            if i > 0 {
                f *= (head[kept] * FRAC_PI_2).sin();
            }
            f
        })
        .collect()
}

pub(super) fn dtlz2(x: &[f64], m: usize) -> Vec<f64> {
    let (head, tail) = x.split_at(m - 1);
    spherical(head, 1.0 + g_sphere(tail), m)
}

pub(super) fn dtlz3(x: &[f64], m: usize) -> Vec<f64> {
    let (head, tail) = x.split_at(m - 1);
    spherical(head, 1.0 + g_multimodal(tail), m)
}

pub(super) fn dtlz4(x: &[f64], m: usize) -> Vec<f64> {
    const ALPHA: i32 = 100;
    let (head, tail) = x.split_at(m - 1);
    let mapped: Vec<f64> = head.iter().map(|t| t.powi(ALPHA)).collect();
    spherical(&mapped, 1.0 + g_sphere(tail), m)
}
