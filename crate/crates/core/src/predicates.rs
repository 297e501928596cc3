//! Pointwise predicates on a finite metric space: anisometry, collinearity,
//! isolation, connectivity at a scale, and the distance set.

use serde::Serialize;

use crate::cayley_menger::{min_cayley_menger, CayleyMengerMinimum};
use crate::metric::{DistanceMatrix, MetricError};

pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Anisometry {
    pub anisometric: bool,
    /// Pairs of distinct point pairs whose distances agree within tolerance.
    pub collisions: Vec<(Pair, Pair)>,
}

/// Checks that distinct unordered pairs have distinct distances, up to `tol`.
///
/// Collisions are listed in lexicographic order of `((i,j),(k,l))` with
/// `(i,j) < (k,l)`.
pub fn is_totally_anisometric(x: &DistanceMatrix, tol: f64) -> Anisometry {
    let mut pairs: Vec<(f64, Pair)> = x.pairs().map(|(i, j, v)| (v, (i, j))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut collisions = Vec::new();
    for (a, &(va, pa)) in pairs.iter().enumerate() {
        for &(vb, pb) in &pairs[a + 1..] {
            if vb - va > tol {
                break;
            }
            collisions.push(if pa < pb { (pa, pb) } else { (pb, pa) });
        }
    }
    collisions.sort_unstable();
    Anisometry {
        anisometric: collisions.is_empty(),
        collisions,
    }
}

/// A triple with `d(i,j) = d(i,k) + d(k,j)`: `k` lies between `i` and `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CollinearTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// All triples of distinct points with `|d(i,j) - d(i,k) - d(k,j)| <= tol` and
/// both summands at least `epsilon`.
///
/// The relation is symmetric in `i` and `j`, so only `i < j` is reported.
pub fn collinear_triples(x: &DistanceMatrix, epsilon: f64, tol: f64) -> Vec<CollinearTriple> {
    let n = x.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = x.get(i, j);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let (dik, dkj) = (x.get(i, k), x.get(k, j));
                if dik >= epsilon && dkj >= epsilon && (dij - dik - dkj).abs() <= tol {
                    out.push(CollinearTriple { i, j, k });
                }
            }
        }
    }
    out
}

/// Nearest-neighbour distance of every point.
pub fn isolation_profile(x: &DistanceMatrix) -> Result<Vec<f64>, MetricError> {
    if x.len() < 2 {
        return Err(MetricError::SinglePoint);
    }
    Ok((0..x.len())
        .map(|i| {
            x.row(i)
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// True if some point has no other point within `scale`, i.e. all its
/// distances lie in `{0} ∪ (scale, ∞)`.
pub fn fails_perfectness_at(x: &DistanceMatrix, scale: f64) -> bool {
    match isolation_profile(x) {
        Ok(profile) => profile.iter().any(|&v| v > scale),
        // A single point is isolated at every scale.
        Err(_) => true,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub members: Vec<usize>,
    pub diameter: f64,
}

/// Connected components of the graph joining `i` and `j` when
/// `d(i,j) <= delta`, ordered by smallest member.
pub fn components_at_scale(x: &DistanceMatrix, delta: f64) -> Vec<Component> {
    let n = x.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (i, j, v) in x.pairs() {
        if v <= delta {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
        .into_iter()
        .map(|members| {
            let mut diameter = 0.0f64;
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    diameter = diameter.max(x.get(i, j));
                }
            }
            Component { members, diameter }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceSet {
    /// Sorted distinct distances, starting with 0.
    pub values: Vec<f64>,
    /// Consecutive differences of `values`.
    pub gaps: Vec<f64>,
}

/// The set `{d(x,y)}` of all distances realised in the space.
pub fn distance_set(x: &DistanceMatrix) -> DistanceSet {
    let mut values: Vec<f64> = x.as_slice().to_vec();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let gaps = values.windows(2).map(|w| w[1] - w[0]).collect();
    DistanceSet { values, gaps }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOptions {
    /// Lower bound on the summands of a collinear triple.
    pub epsilon: f64,
    /// Connectivity scales to report component counts for.
    pub deltas: Vec<f64>,
    pub tol: f64,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            deltas: Vec::new(),
            tol: crate::metric::DEFAULT_TOL,
        }
    }
}

/// All predicates evaluated on one space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub anisometric: bool,
    pub collisions: Vec<(Pair, Pair)>,
    pub collinear_triples: Vec<CollinearTriple>,
    /// Nearest-neighbour distances; empty for a single point.
    pub isolation_scale: Vec<f64>,
    /// `(delta, number of components at delta)`.
    pub component_count_at: Vec<(f64, usize)>,
    /// `None` when the space has fewer than four points.
    pub min_cayley_menger: Option<CayleyMengerMinimum>,
}

impl PropertyReport {
    pub fn max_isolation(&self) -> Option<f64> {
        self.isolation_scale.iter().copied().reduce(f64::max)
    }
}

pub fn property_report(x: &DistanceMatrix, options: &PropertyOptions) -> PropertyReport {
    let anisometry = is_totally_anisometric(x, options.tol);
    PropertyReport {
        n: x.len(),
        anisometric: anisometry.anisometric,
        collisions: anisometry.collisions,
        collinear_triples: collinear_triples(x, options.epsilon, options.tol),
        isolation_scale: isolation_profile(x).unwrap_or_default(),
        component_count_at: options
            .deltas
            .iter()
            .map(|&delta| (delta, components_at_scale(x, delta).len()))
            .collect(),
        min_cayley_menger: min_cayley_menger(x).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gadget;
    use crate::metric::validate;

    fn line(points: &[f64]) -> DistanceMatrix {
        validate(
            points
                .iter()
                .map(|p| points.iter().map(|q| (p - q).abs()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn anisometry_examples() {
        let a = is_totally_anisometric(&line(&[0.0, 1.0, 2.0]), 0.0);
        assert!(!a.anisometric);
        assert_eq!(a.collisions, vec![((0, 1), (1, 2))]);
        assert!(is_totally_anisometric(&line(&[0.0, 1.0, 3.0]), 0.0).anisometric);
        assert!(is_totally_anisometric(&DistanceMatrix::singleton(), 0.0).anisometric);
    }

    #[test]
    fn anisometry_tolerance_window() {
        let l = line(&[0.0, 1.0, 2.0005]);
        assert!(is_totally_anisometric(&l, 1e-4).anisometric);
        assert!(!is_totally_anisometric(&l, 1e-3).anisometric);
    }

    #[test]
    fn collinear_examples() {
        let t = collinear_triples(&line(&[0.0, 1.0, 3.0]), 0.5, 1e-9);
        assert!(t.contains(&CollinearTriple { i: 0, j: 2, k: 1 }));
        // Each pair of tips is 2 apart with the centre at 1 from both.
        assert_eq!(
            collinear_triples(&gadget(1.0), 0.5, 1e-9),
            vec![
                CollinearTriple { i: 0, j: 1, k: 3 },
                CollinearTriple { i: 0, j: 2, k: 3 },
                CollinearTriple { i: 1, j: 2, k: 3 },
            ]
        );
        let tri = validate(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(collinear_triples(&tri, 0.5, 1e-9).is_empty());
        // Summands below epsilon are ignored.
        assert!(collinear_triples(&line(&[0.0, 1.0, 3.0]), 1.5, 1e-9).is_empty());
    }

    #[test]
    fn isolation_examples() {
        assert_eq!(
            isolation_profile(&line(&[0.0, 1.0, 3.0])).unwrap(),
            vec![1.0, 1.0, 2.0]
        );
        assert_eq!(isolation_profile(&line(&[0.0, 5.0])).unwrap(), vec![5.0, 5.0]);
        assert_eq!(
            isolation_profile(&DistanceMatrix::singleton()).unwrap_err(),
            MetricError::SinglePoint
        );
        assert!(fails_perfectness_at(&line(&[0.0, 1.0, 3.0]), 1.5));
        assert!(!fails_perfectness_at(&line(&[0.0, 1.0, 3.0]), 2.0));
    }

    #[test]
    fn components_examples() {
        let l = line(&[0.0, 1.0, 3.0]);
        let members =
            |delta| -> Vec<Vec<usize>> { components_at_scale(&l, delta).into_iter().map(|c| c.members).collect() };
        assert_eq!(members(1.0), vec![vec![0, 1], vec![2]]);
        assert_eq!(members(2.0), vec![vec![0, 1, 2]]);
        assert_eq!(members(0.0).len(), 3);
        let comps = components_at_scale(&l, 1.0);
        assert_eq!(comps[0].diameter, 1.0);
        assert_eq!(comps[1].diameter, 0.0);
    }

    #[test]
    fn distance_set_examples() {
        let s = distance_set(&line(&[0.0, 1.0, 3.0]));
        assert_eq!(s.values, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(s.gaps, vec![1.0, 1.0, 1.0]);
        assert_eq!(distance_set(&gadget(1.0)).values, vec![0.0, 1.0, 2.0]);
        assert_eq!(distance_set(&DistanceMatrix::singleton()).values, vec![0.0]);
    }

    #[test]
    fn report_collects_everything() {
        let r = property_report(
            &gadget(1.0),
            &PropertyOptions {
                deltas: vec![0.5, 1.0],
                ..Default::default()
            },
        );
        assert!(!r.anisometric);
        assert_eq!(r.collinear_triples.len(), 3);
        assert_eq!(r.component_count_at, vec![(0.5, 4), (1.0, 1)]);
        assert_eq!(r.max_isolation(), Some(1.0));
        let cm = r.min_cayley_menger.unwrap();
        assert!((cm.value + 1.0 / 9.0).abs() < 1e-15);
    }
}
