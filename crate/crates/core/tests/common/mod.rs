//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// DTLZ objectives written straight from the textbook definitions, with
/// 1-based loops, sharing no code with the library.
pub fn dtlz_oracle(problem: u8, x: &[f64], m: usize) -> Vec<f64> {
    let n = x.len();
    let k = n - m + 1;
    let tail = &x[n - k..];
    let g = match problem {
        1 | 3 => {
            let s: f64 = tail
                .iter()
                .map(|&xi| (xi - 0.5).powi(2) - (20.0 * PI * (xi - 0.5)).cos())
                .sum();
            100.0 * (k as f64 + s)
        }
        _ => tail.iter().map(|&xi| (xi - 0.5).powi(2)).sum(),
    };
    let mut f = vec![0.0; m];
    for i in 1..=m {
        let mut v = if problem == 1 { 0.5 * (1.0 + g) } else { 1.0 + g };
        // product over the first M - i variables
        for j in 1..=(m - i) {
            let xj = x[j - 1];
            v *= match problem {
                1 => xj,
                4 => (xj.powi(100) * PI / 2.0).cos(),
                _ => (xj * PI / 2.0).cos(),
            };
        }
        if i > 1 {
            let xj = x[m - i];
            v *= match problem {
                1 => 1.0 - xj,
                4 => (xj.powi(100) * PI / 2.0).sin(),
                _ => (xj * PI / 2.0).sin(),
            };
        }
        f[i - 1] = v;
    }
    f
}

/// Hypervolume by inclusion–exclusion over every non-empty subset.
/// Exponential, so only for small sets.
pub fn hv_inclusion_exclusion(points: &[Vec<f64>], z_ref: &[f64]) -> f64 {
    let n = points.len();
    assert!(n <= 20, "inclusion-exclusion oracle is exponential");
    let m = z_ref.len();
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::NEG_INFINITY; m];
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for d in 0..m {
                    corner[d] = corner[d].max(p[d]);
                }
            }
        }
        let vol: f64 = corner
            .iter()
            .zip(z_ref)
            .map(|(c, r)| (r - c).max(0.0))
            .product();
        if mask.count_ones() % 2 == 1 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    total
}

/// Small deterministic generator so oracle inputs do not depend on the
/// library's RNG plumbing.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn point(&mut self, m: usize) -> Vec<f64> {
        (0..m).map(|_| self.unit()).collect()
    }
}
