//! Hypervolume by exclusive-volume slicing (the WFG algorithm) and by Monte
//! Carlo sampling.
//!
//! Both routes ignore points that are not strictly better than the reference
//! point in every objective; such points dominate no volume inside the box.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::Rng;

fn inside_box(solutions: &[Vec<f64>], z_ref: &[f64]) -> Vec<Vec<f64>> {
    solutions
        .iter()
        .filter(|p| {
            assert_eq!(p.len(), z_ref.len(), "point and reference differ in length");
            p.iter().zip(z_ref).all(|(a, r)| a < r)
        })
        .cloned()
        .collect()
}

/// Exact hypervolume of the region dominated by `solutions` and bounded by
/// `z_ref`.
///
/// Points are sorted worst-first on the last objective. The exclusive
/// contribution of each point relative to the points after it is then a slab
/// of height `z_ref[last] - p[last]` times a hypervolume one dimension lower,
/// which is computed recursively.
pub fn hv_exact(solutions: &[Vec<f64>], z_ref: &[f64]) -> f64 {
    let pts = nondominated(inside_box(solutions, z_ref), z_ref.len());
    match z_ref.len() {
        0 => 0.0,
        1 => pts.iter().map(|p| z_ref[0] - p[0]).fold(0.0, f64::max),
        d => wfg(pts, z_ref, d),
    }
}

fn wfg(mut pts: Vec<Vec<f64>>, z_ref: &[f64], dims: usize) -> f64 {
    if pts.is_empty() {
        return 0.0;
    }
    if dims == 2 {
        return area_2d(pts, z_ref);
    }
    let last = dims - 1;
    pts.sort_by(|a, b| b[last].total_cmp(&a[last]));
    let mut total = 0.0;
    for k in 0..pts.len() {
        let p = &pts[k];
        let height = z_ref[last] - p[last];
        if height <= 0.0 {
            continue;
        }
        let base: f64 = (0..last).map(|i| z_ref[i] - p[i]).product();
        let limited: Vec<Vec<f64>> = pts[k + 1..]
            .iter()
            .map(|q| (0..last).map(|i| p[i].max(q[i])).collect())
            .collect();
        let covered = wfg(nondominated(limited, last), z_ref, last);
        total += height * (base - covered);
    }
    total
}

fn area_2d(mut pts: Vec<Vec<f64>>, z_ref: &[f64]) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut best_y = z_ref[1];
    let mut area = 0.0;
    for p in &pts {
        if p[1] < best_y {
            area += (z_ref[0] - p[0]) * (best_y - p[1]);
            best_y = p[1];
        }
    }
    area
}

/// Keeps one copy of each point not weakly dominated by another, looking only
/// at the first `dims` coordinates.
fn nondominated(mut pts: Vec<Vec<f64>>, dims: usize) -> Vec<Vec<f64>> {
    pts.sort_by(|a, b| {
        a[..dims]
            .iter()
            .zip(&b[..dims])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    pts.dedup_by(|a, b| a[..dims] == b[..dims]);
    // after the lexicographic sort a point can only be dominated by an earlier one
    let mut keep: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    for p in pts {
        let dominated = keep
            .iter()
            .any(|q| q[..dims].iter().zip(&p[..dims]).all(|(a, b)| a <= b));
        if !dominated {
            keep.push(p);
        }
    }
    keep
}

/// A sampled hypervolume with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub samples: usize,
    /// Volume of the sampling box `[min(S), z_ref]`.
    pub box_volume: f64,
}

/// Uniform sampling over the box spanned by the componentwise minimum of the
/// (in-box) solutions and `z_ref`.
pub fn hv_monte_carlo(
    solutions: &[Vec<f64>],
    z_ref: &[f64],
    samples: usize,
    rng: &mut Rng,
) -> Result<HvEstimate> {
    if samples == 0 {
        return Err(Error::Contract("Monte Carlo hypervolume needs at least one sample".into()));
    }
    let pts = nondominated(inside_box(solutions, z_ref), z_ref.len());
    if pts.is_empty() {
        return Ok(HvEstimate {
            value: 0.0,
            standard_error: 0.0,
            samples,
            box_volume: 0.0,
        });
    }
    let m = z_ref.len();
    let lower: Vec<f64> = (0..m)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = lower.iter().zip(z_ref).map(|(l, r)| r - l).product();
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for ((s, l), r) in sample.iter_mut().zip(&lower).zip(z_ref) {
            *s = l + (r - l) * rng.random::<f64>();
        }
        if pts
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(a, b)| a <= b))
        {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    Ok(HvEstimate {
        value: frac * box_volume,
        standard_error: box_volume * (frac * (1.0 - frac) / samples as f64).sqrt(),
        samples,
        box_volume,
    })
}
