//! The WFG toolkit: transformation and shape functions, and the nine
//! standard problems built from them.
//!
//! The working vector `z` is normalized to `y_i = z_i / (2i)`, pushed through
//! the problem's transformation chain to `t` (length `M`), degeneracy-mapped
//! to `x`, and scored as `f_m = x_M + 2m * h_m(x_1, ..., x_{M-1})`.

use std::f64::consts::{FRAC_PI_2, PI};

use super::ProblemId;

/// Default distance-parameter count `l`.
pub const WFG_DISTANCE_PARAMS: usize = 20;

const EPS: f64 = 1e-10;

// Rounding in the transformations can leave values a hair outside [0, 1].
fn correct_to_01(a: f64) -> f64 {
    if (-EPS..=0.0).contains(&a) {
        0.0
    } else if (1.0..=1.0 + EPS).contains(&a) {
        1.0
    } else {
        a
    }
}

// --- transformations -------------------------------------------------------

fn s_linear(y: f64, a: f64) -> f64 {
    correct_to_01((y - a).abs() / ((a - y).floor() + a).abs())
}

fn s_deceptive(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let tmp2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    correct_to_01(1.0 + ((y - a).abs() - b) * (tmp1 + tmp2 + 1.0 / b))
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let tmp2 = (4.0 * a + 2.0) * PI * (0.5 - tmp1);
    correct_to_01((1.0 + tmp2.cos() + 4.0 * b * tmp1 * tmp1) / (b + 2.0))
}

fn b_poly(y: f64, alpha: f64) -> f64 {
    correct_to_01(y.powf(alpha))
}

fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - b).floor().min(0.0) * a * (b - y) / b;
    let tmp2 = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
    correct_to_01(a + tmp1 - tmp2)
}

fn b_param_exponent(u: f64, a: f64, b: f64, c: f64) -> f64 {
    b + (c - b) * (a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs())
}

fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    correct_to_01(y.powf(b_param_exponent(u, a, b, c)))
}

fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    let den: f64 = w.iter().sum();
    correct_to_01(num / den)
}

fn r_sum_uniform(y: &[f64]) -> f64 {
    correct_to_01(y.iter().sum::<f64>() / y.len() as f64)
}

fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let n = y.len();
    let mut num = 0.0;
    for j in 0..n {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(j + k + 1) % n]).abs();
        }
    }
    let half = a.div_ceil(2) as f64;
    let den = n as f64 / a as f64 * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
    correct_to_01(num / den)
}

// --- shapes (x is 0-based, m is 1-based) ------------------------------------

fn linear(x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    let mut r: f64 = x[..big_m - m].iter().product();
    if m > 1 {
        r *= 1.0 - x[big_m - m];
    }
    correct_to_01(r)
}

fn convex(x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    let mut r: f64 = x[..big_m - m]
        .iter()
        .map(|&v| 1.0 - (v * FRAC_PI_2).cos())
        .product();
    if m > 1 {
        r *= 1.0 - (x[big_m - m] * FRAC_PI_2).sin();
    }
    correct_to_01(r)
}

fn concave(x: &[f64], m: usize) -> f64 {
    let big_m = x.len() + 1;
    let mut r: f64 = x[..big_m - m]
        .iter()
        .map(|&v| (v * FRAC_PI_2).sin())
        .product();
    if m > 1 {
        r *= (x[big_m - m] * FRAC_PI_2).cos();
    }
    correct_to_01(r)
}

fn mixed(x: &[f64], a: f64, alpha: f64) -> f64 {
    let tmp = 2.0 * a * PI;
    correct_to_01((1.0 - x[0] - (tmp * x[0] + FRAC_PI_2).cos() / tmp).powf(alpha))
}

fn disc(x: &[f64], a: f64, alpha: f64, beta: f64) -> f64 {
    let tmp = (a * x[0].powf(beta) * PI).cos();
    correct_to_01(1.0 - x[0].powf(alpha) * tmp * tmp)
}

// --- shared reduction steps -------------------------------------------------

/// Reduces `y` to `M` values: each of the `M-1` position groups and the
/// distance block via a weighted sum.
fn reduce_sum(y: &[f64], k: usize, m: usize, weighted: bool) -> Vec<f64> {
    let group = k / (m - 1);
    let reduce = |lo: usize, hi: usize| {
        if weighted {
            let w: Vec<f64> = (lo..hi).map(|i| 2.0 * (i + 1) as f64).collect();
            r_sum(&y[lo..hi], &w)
        } else {
            r_sum_uniform(&y[lo..hi])
        }
    };
    let mut t: Vec<f64> = (0..m - 1).map(|i| reduce(i * group, (i + 1) * group)).collect();
    t.push(reduce(k, y.len()));
    t
}

fn reduce_nonsep(y: &[f64], k: usize, m: usize) -> Vec<f64> {
    let group = k / (m - 1);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_nonsep(&y[i * group..(i + 1) * group], group))
        .collect();
    t.push(r_nonsep(&y[k..], y.len() - k));
    t
}

/// Pairs up the distance parameters with a two-element non-separable reduction.
fn pair_nonsep(y: &[f64], k: usize) -> Vec<f64> {
    let mut t = y[..k].to_vec();
    t.extend(y[k..].chunks_exact(2).map(|pair| r_nonsep(pair, 2)));
    t
}

fn linear_tail(y: &mut [f64], k: usize) {
    for v in &mut y[k..] {
        *v = s_linear(*v, 0.35);
    }
}

const PARAM_A: f64 = 0.98 / 49.98;

fn transform(id: ProblemId, mut y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    let n = y.len();
    match id {
        ProblemId::Wfg1 => {
            linear_tail(&mut y, k);
            for v in &mut y[k..] {
                *v = b_flat(*v, 0.8, 0.75, 0.85);
            }
            for v in &mut y {
                *v = b_poly(*v, 0.02);
            }
            reduce_sum(&y, k, m, true)
        }
        ProblemId::Wfg2 | ProblemId::Wfg3 => {
            linear_tail(&mut y, k);
            let y = pair_nonsep(&y, k);
            reduce_sum(&y, k, m, false)
        }
        ProblemId::Wfg4 => {
            for v in &mut y {
                *v = s_multi(*v, 30.0, 10.0, 0.35);
            }
            reduce_sum(&y, k, m, false)
        }
        ProblemId::Wfg5 => {
            for v in &mut y {
                *v = s_deceptive(*v, 0.35, 0.001, 0.05);
            }
            reduce_sum(&y, k, m, false)
        }
        ProblemId::Wfg6 => {
            linear_tail(&mut y, k);
            reduce_nonsep(&y, k, m)
        }
        ProblemId::Wfg7 => {
            // each position parameter is biased by the mean of everything after it
            let orig = y.clone();
            for i in 0..k {
                let u = r_sum_uniform(&orig[i + 1..]);
                y[i] = b_param(orig[i], u, PARAM_A, 0.02, 50.0);
            }
            linear_tail(&mut y, k);
            reduce_sum(&y, k, m, false)
        }
        ProblemId::Wfg8 => {
            // each distance parameter is biased by the mean of everything before it
            let orig = y.clone();
            for i in k..n {
                let u = r_sum_uniform(&orig[..i]);
                y[i] = b_param(orig[i], u, PARAM_A, 0.02, 50.0);
            }
            linear_tail(&mut y, k);
            reduce_sum(&y, k, m, false)
        }
        ProblemId::Wfg9 => {
            let orig = y.clone();
            for i in 0..n - 1 {
                let u = r_sum_uniform(&orig[i + 1..]);
                y[i] = b_param(orig[i], u, PARAM_A, 0.02, 50.0);
            }
            for v in &mut y[..k] {
                *v = s_deceptive(*v, 0.35, 0.001, 0.05);
            }
            for v in &mut y[k..] {
                *v = s_multi(*v, 30.0, 95.0, 0.35);
            }
            reduce_nonsep(&y, k, m)
        }
        _ => unreachable!("not a WFG problem"),
    }
}

pub(super) fn evaluate(id: ProblemId, z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, &v)| v / (2.0 * (i + 1) as f64))
        .collect();
    let t = transform(id, y, k, m);

    // WFG3 is degenerate: only the first position coordinate is kept free.
    let last = t[m - 1];
    let x: Vec<f64> = (0..m - 1)
        .map(|i| {
            let a = if id == ProblemId::Wfg3 && i > 0 { 0.0 } else { 1.0 };
            last.max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();

    (1..=m)
        .map(|obj| {
            let h = match id {
                ProblemId::Wfg1 => {
                    if obj < m {
                        convex(&x, obj)
                    } else {
                        mixed(&x, 5.0, 1.0)
                    }
                }
                ProblemId::Wfg2 => {
                    if obj < m {
                        convex(&x, obj)
                    } else {
                        disc(&x, 5.0, 1.0, 1.0)
                    }
                }
                ProblemId::Wfg3 => linear(&x, obj),
                _ => concave(&x, obj),
            };
            last + 2.0 * obj as f64 * h
        })
        .collect()
}

/// A Pareto-optimal decision vector for WFG4–WFG9 whose position parameters
/// take the fractions `position` of their ranges (length `k`, values in
/// `[0, 1]`). The distance parameters are placed where every transformation
/// chain maps them to zero distance.
pub fn wfg_optimal_solution(
    id: ProblemId,
    position: &[f64],
    l: usize,
) -> crate::Result<Vec<f64>> {
    use crate::Error;
    if !matches!(
        id,
        ProblemId::Wfg4
            | ProblemId::Wfg5
            | ProblemId::Wfg6
            | ProblemId::Wfg7
            | ProblemId::Wfg8
            | ProblemId::Wfg9
    ) {
        return Err(Error::Unsupported(format!(
            "optimal-set construction is provided for WFG4-WFG9, not {id}"
        )));
    }
    if position.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Contract("position fractions must lie in [0, 1]".into()));
    }
    let k = position.len();
    let n = k + l;
    let mut y: Vec<f64> = position.to_vec();
    y.resize(n, 0.35);
    match id {
        ProblemId::Wfg8 => {
            for i in k..n {
                let u = r_sum_uniform(&y[..i]);
                y[i] = 0.35f64.powf(1.0 / b_param_exponent(u, PARAM_A, 0.02, 50.0));
            }
        }
        ProblemId::Wfg9 => {
            for i in (k..n - 1).rev() {
                let u = r_sum_uniform(&y[i + 1..]);
                y[i] = 0.35f64.powf(1.0 / b_param_exponent(u, PARAM_A, 0.02, 50.0));
            }
        }
        _ => {}
    }
    Ok(y
        .iter()
        .enumerate()
        .map(|(i, &v)| (v * 2.0 * (i + 1) as f64).min(2.0 * (i + 1) as f64))
        .collect())
}
