//! Simplex-lattice weight vectors and their neighborhoods.
//!
//! A lattice with `D` divisions over `M` objectives contains every vector
//! whose components are multiples of `1/D` and sum to one. For many objectives
//! a single lattice is either too coarse or too large, so a second, smaller
//! lattice can be shrunk towards the centroid and appended (the "two-layer"
//! construction).

use std::fmt::Write as _;
use std::ops::Deref;
use std::path::Path;

use crate::error::{Error, Result};

/// A direction on the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Wraps raw components. Components must be non-negative and sum to one
    /// within `1e-12`.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::Contract(format!(
                "weight vector needs at least 2 components, got {}",
                components.len()
            )));
        }
        if components.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return Err(Error::Contract(format!(
                "weight components must lie in [0, 1]: {components:?}"
            )));
        }
        let sum: f64 = components.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Contract(format!(
                "weight components must sum to 1, got {sum}"
            )));
        }
        Ok(Self(components))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for WeightVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for WeightVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// How a [`WeightSet`] was produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Layout {
    Single {
        divisions: usize,
    },
    TwoLayer {
        boundary: usize,
        inside: usize,
        shrinkage: f64,
    },
}

/// An ordered set of weight vectors, optionally with a neighborhood table.
///
/// Slot `i` of a population always belongs to `vectors()[i]`.
#[derive(Debug, Clone)]
pub struct WeightSet {
    objectives: usize,
    layout: Layout,
    vectors: Vec<WeightVector>,
    neighborhoods: Vec<Vec<usize>>,
}

impl WeightSet {
    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[WeightVector] {
        &self.vectors
    }

    pub fn get(&self, index: usize) -> &WeightVector {
        &self.vectors[index]
    }

    /// Neighborhood size `T`, or 0 if no table has been computed.
    pub fn neighborhood_size(&self) -> usize {
        self.neighborhoods.first().map_or(0, Vec::len)
    }

    /// Row `index` of the neighborhood table, nearest first.
    ///
    /// # Panics
    ///
    /// If [`WeightSet::with_neighborhoods`] has not been called.
    pub fn neighborhood(&self, index: usize) -> &[usize] {
        assert!(
            !self.neighborhoods.is_empty(),
            "neighborhood table has not been computed"
        );
        &self.neighborhoods[index]
    }

    pub fn neighborhoods(&self) -> &[Vec<usize>] {
        &self.neighborhoods
    }

    /// Attaches a table of the `size` nearest vectors to each vector.
    pub fn with_neighborhoods(mut self, size: usize) -> Result<Self> {
        self.neighborhoods = compute_neighborhoods(&self.vectors, size)?;
        Ok(self)
    }

    /// True if any two vectors are bitwise equal.
    pub fn has_duplicates(&self) -> bool {
        let mut keys: Vec<Vec<u64>> = self
            .vectors
            .iter()
            .map(|w| w.iter().map(|c| c.to_bits()).collect())
            .collect();
        keys.sort_unstable();
        keys.windows(2).any(|w| w[0] == w[1])
    }

    /// One vector per line, components space-separated with 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.vectors {
            let line: Vec<String> = w.iter().map(|c| format!("{c:.16e}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn write_text(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

/// Size of the lattice with `divisions` steps per axis over `objectives`
/// objectives: `C(D + M - 1, M - 1)`.
pub fn count_weights(divisions: usize, objectives: usize) -> Result<usize> {
    if divisions == 0 || objectives < 2 {
        return Err(Error::Config(format!(
            "lattice needs divisions >= 1 and objectives >= 2, got D={divisions}, M={objectives}"
        )));
    }
    let overflow = || Error::Sizing {
        divisions,
        objectives,
    };
    let n = (divisions as u128) + (objectives as u128) - 1;
    let k = (objectives as u128 - 1).min(divisions as u128);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n - k + i) is always divisible by i at this point.
        acc = acc.checked_mul(n - k + i).ok_or_else(overflow)? / i;
    }
    usize::try_from(acc).map_err(|_| overflow())
}

/// Enumerates the lattice recursively: the first component sweeps
/// `0, 1/D, ..., 1`, and the remaining mass is distributed the same way over
/// the later components.
pub fn generate_simplex_weights(divisions: usize, objectives: usize) -> Result<WeightSet> {
    let count = count_weights(divisions, objectives)?;
    let mut vectors = Vec::with_capacity(count);
    let mut steps = vec![0usize; objectives];
    fill_level(&mut steps, 0, 0, divisions, &mut vectors);
    debug_assert_eq!(vectors.len(), count);
    Ok(WeightSet {
        objectives,
        layout: Layout::Single { divisions },
        vectors,
        neighborhoods: Vec::new(),
    })
}

fn fill_level(
    steps: &mut [usize],
    allocated: usize,
    level: usize,
    divisions: usize,
    out: &mut Vec<WeightVector>,
) {
    let last = steps.len() - 1;
    if allocated == divisions {
        steps[level..].iter_mut().for_each(|s| *s = 0);
        out.push(to_vector(steps, divisions));
        return;
    }
    if level == last {
        steps[level] = divisions - allocated;
        out.push(to_vector(steps, divisions));
        return;
    }
    for j in 0..=(divisions - allocated) {
        steps[level] = j;
        fill_level(steps, allocated + j, level + 1, divisions, out);
    }
}

fn to_vector(steps: &[usize], divisions: usize) -> WeightVector {
    WeightVector(
        steps
            .iter()
            .map(|&j| j as f64 / divisions as f64)
            .collect(),
    )
}

/// Boundary lattice followed by an inside lattice shrunk towards the centroid
/// by `v = (1 - shrinkage) / M + shrinkage * w`.
pub fn generate_two_layer(
    boundary: usize,
    inside: usize,
    objectives: usize,
    shrinkage: f64,
) -> Result<WeightSet> {
    if !(0.0..=1.0).contains(&shrinkage) {
        return Err(Error::Config(format!(
            "shrinkage must lie in [0, 1], got {shrinkage}"
        )));
    }
    let outer = generate_simplex_weights(boundary, objectives)?;
    let inner = generate_simplex_weights(inside, objectives)?;
    let offset = (1.0 - shrinkage) / objectives as f64;
    let mut vectors = outer.vectors;
    vectors.extend(inner.vectors.into_iter().map(|w| {
        WeightVector(w.iter().map(|&c| offset + shrinkage * c).collect())
    }));
    Ok(WeightSet {
        objectives,
        layout: Layout::TwoLayer {
            boundary,
            inside,
            shrinkage,
        },
        vectors,
        neighborhoods: Vec::new(),
    })
}

/// For every vector, the indices of the `size` nearest vectors by Euclidean
/// distance, nearest first. Ties go to the lower index, so each row starts
/// with the vector itself.
pub fn compute_neighborhoods(vectors: &[WeightVector], size: usize) -> Result<Vec<Vec<usize>>> {
    if size == 0 || size > vectors.len() {
        return Err(Error::Config(format!(
            "neighborhood size {size} must be in 1..={}",
            vectors.len()
        )));
    }
    Ok(vectors
        .iter()
        .map(|wi| {
            let mut order: Vec<(f64, usize)> = vectors
                .iter()
                .enumerate()
                .map(|(j, wj)| (squared_distance(wi, wj), j))
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.into_iter().take(size).map(|(_, j)| j).collect()
        })
        .collect())
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_match_table_sizes() {
        assert_eq!(count_weights(12, 3).unwrap(), 91);
        assert_eq!(count_weights(6, 5).unwrap(), 210);
        for m in 2..20 {
            assert_eq!(count_weights(1, m).unwrap(), m);
        }
    }

    #[test]
    fn count_reports_overflow() {
        assert!(matches!(
            count_weights(usize::MAX / 2, 60),
            Err(Error::Sizing { .. })
        ));
        assert!(count_weights(0, 3).is_err());
        assert!(count_weights(3, 1).is_err());
    }

    #[test]
    fn half_step_lattice_in_recursion_order() {
        let set = generate_simplex_weights(2, 3).unwrap();
        let got: Vec<&[f64]> = set.vectors().iter().map(|w| w.components()).collect();
        let want: [&[f64]; 6] = [
            &[0.0, 0.0, 1.0],
            &[0.0, 0.5, 0.5],
            &[0.0, 1.0, 0.0],
            &[0.5, 0.0, 0.5],
            &[0.5, 0.5, 0.0],
            &[1.0, 0.0, 0.0],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn single_division_gives_axes() {
        let set = generate_simplex_weights(1, 2).unwrap();
        assert_eq!(set.get(0).components(), &[0.0, 1.0]);
        assert_eq!(set.get(1).components(), &[1.0, 0.0]);
    }

    #[test]
    fn matches_brute_force_compositions() {
        // All (a, b, c) with a + b + c = 3, enumerated independently.
        let mut expected = Vec::new();
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                expected.push(vec![a, b, 3 - a - b]);
            }
        }
        expected.sort();
        let set = generate_simplex_weights(3, 3).unwrap();
        let mut got: Vec<Vec<u32>> = set
            .vectors()
            .iter()
            .map(|w| w.iter().map(|c| (c * 3.0).round() as u32).collect())
            .collect();
        got.sort();
        assert_eq!(got, expected);
        assert!(!set.has_duplicates());
        for w in set.vectors() {
            assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn two_layer_sizes() {
        assert_eq!(generate_two_layer(3, 2, 8, 0.5).unwrap().len(), 156);
        assert_eq!(generate_two_layer(3, 2, 10, 0.5).unwrap().len(), 275);
        assert_eq!(generate_two_layer(2, 1, 15, 0.5).unwrap().len(), 135);
    }

    #[test]
    fn two_layer_full_shrinkage_is_identity() {
        let set = generate_two_layer(3, 2, 4, 1.0).unwrap();
        let inner = generate_simplex_weights(2, 4).unwrap();
        let n1 = count_weights(3, 4).unwrap();
        assert_eq!(&set.vectors()[n1..], inner.vectors());
    }

    #[test]
    fn two_layer_inside_is_interior() {
        let tau = 0.5;
        let m = 8;
        let set = generate_two_layer(3, 2, m, tau).unwrap();
        let n1 = count_weights(3, m).unwrap();
        for w in &set.vectors()[n1..] {
            assert!(w.iter().all(|&c| c >= (1.0 - tau) / m as f64 - 1e-12));
            assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
        assert!(!set.has_duplicates());
        assert!(generate_two_layer(3, 2, m, 1.5).is_err());
    }

    #[test]
    fn neighborhood_of_corner() {
        let set = generate_simplex_weights(2, 3).unwrap().with_neighborhoods(3).unwrap();
        // (1,0,0) is index 5; (0.5,0.5,0) is 4 and (0.5,0,0.5) is 3, both at
        // distance sqrt(0.5). Every other vector is at least 1 away.
        let row = set.neighborhood(5);
        assert_eq!(row[0], 5);
        let mut rest = row[1..].to_vec();
        rest.sort();
        assert_eq!(rest, vec![3, 4]);
        assert_eq!(row, &[5, 3, 4]);
    }

    #[test]
    fn full_neighborhood_is_permutation() {
        let set = generate_simplex_weights(4, 3).unwrap();
        let n = set.len();
        let set = set.with_neighborhoods(n).unwrap();
        for (i, row) in set.neighborhoods().iter().enumerate() {
            assert_eq!(row[0], i);
            let mut sorted = row.clone();
            sorted.sort();
            assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn oversized_neighborhood_rejected() {
        let set = generate_simplex_weights(2, 3).unwrap();
        assert!(matches!(set.with_neighborhoods(7), Err(Error::Config(_))));
    }

    #[test]
    fn text_export_round_trips() {
        let set = generate_two_layer(2, 1, 4, 0.5).unwrap();
        let text = set.to_text();
        let parsed: Vec<Vec<f64>> = text
            .lines()
            .map(|l| l.split(' ').map(|t| t.parse().unwrap()).collect())
            .collect();
        let original: Vec<Vec<f64>> = set.vectors().iter().map(|w| w.to_vec()).collect();
        assert_eq!(parsed, original);
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.6, 0.5]).is_err());
        assert!(WeightVector::new(vec![-0.5, 1.5]).is_err());
        assert!(WeightVector::new(vec![1.0]).is_err());
    }

    proptest! {
        #[test]
        fn lattice_properties(d in 1usize..9, m in 2usize..6) {
            let set = generate_simplex_weights(d, m).unwrap();
            prop_assert_eq!(set.len(), count_weights(d, m).unwrap());
            prop_assert!(!set.has_duplicates());
            for w in set.vectors() {
                prop_assert_eq!(w.len(), m);
                prop_assert!((w.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
                for &c in w.iter() {
                    let j = (c * d as f64).round();
                    prop_assert!((c - j / d as f64).abs() <= 1e-15);
                }
            }
        }

        #[test]
        fn neighborhood_rows_sorted(d in 1usize..6, m in 2usize..5, t_frac in 0.0f64..1.0) {
            let set = generate_simplex_weights(d, m).unwrap();
            let n = set.len();
            let t = 1 + ((n - 1) as f64 * t_frac) as usize;
            let set = set.with_neighborhoods(t).unwrap();
            for (i, row) in set.neighborhoods().iter().enumerate() {
                prop_assert_eq!(row.len(), t);
                prop_assert_eq!(row[0], i);
                let dist: Vec<f64> = row
                    .iter()
                    .map(|&j| squared_distance(set.get(i), set.get(j)))
                    .collect();
                prop_assert!(dist.windows(2).all(|p| p[0] <= p[1]));
            }
        }
    }
}
