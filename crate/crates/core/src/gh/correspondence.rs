use serde::Serialize;

use super::{GhError, Side};
use crate::metric::DistanceMatrix;

/// A relation between the points of two spaces whose projections are both
/// surjective. Pairs are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    /// Checks indices and surjectivity onto `0..left` and `0..right`.
    pub fn new(
        mut pairs: Vec<(usize, usize)>,
        left: usize,
        right: usize,
    ) -> Result<Self, GhError> {
        let mut seen_left = vec![false; left];
        let mut seen_right = vec![false; right];
        for &(i, j) in &pairs {
            if i >= left {
                return Err(GhError::IndexOutOfRange {
                    side: Side::Left,
                    index: i,
                    len: left,
                });
            }
            if j >= right {
                return Err(GhError::IndexOutOfRange {
                    side: Side::Right,
                    index: j,
                    len: right,
                });
            }
            seen_left[i] = true;
            seen_right[j] = true;
        }
        if let Some(i) = seen_left.iter().position(|s| !s) {
            return Err(GhError::NotSurjective {
                side: Side::Left,
                index: i,
            });
        }
        if let Some(j) = seen_right.iter().position(|s| !s) {
            return Err(GhError::NotSurjective {
                side: Side::Right,
                index: j,
            });
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self { pairs })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// Every point related to every point.
    pub fn full(left: usize, right: usize) -> Self {
        Self {
            pairs: (0..left)
                .flat_map(|i| (0..right).map(move |j| (i, j)))
                .collect(),
        }
    }

    /// `graph(f) ∪ graph(g)` for maps `f: left → right` and `g: right → left`.
    pub fn from_maps(f: &[usize], g: &[usize]) -> Result<Self, GhError> {
        let pairs = f
            .iter()
            .enumerate()
            .map(|(i, &j)| (i, j))
            .chain(g.iter().enumerate().map(|(j, &i)| (i, j)))
            .collect();
        Self::new(pairs, f.len(), g.len())
    }

    /// The bijection `i ↦ perm[i]`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, GhError> {
        let n = perm.len();
        Self::new(perm.iter().copied().enumerate().collect(), n, n)
    }

    pub(crate) fn from_sorted_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Swaps the roles of the two spaces.
    pub fn transpose(&self) -> Self {
        Self::from_sorted_pairs(self.pairs.iter().map(|&(i, j)| (j, i)).collect())
    }

    /// Keeps the pairs accepted by `keep`, failing if surjectivity is lost.
    pub fn restrict(
        &self,
        left: usize,
        right: usize,
        keep: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, GhError> {
        Self::new(
            self.pairs.iter().copied().filter(|&(i, j)| keep(i, j)).collect(),
            left,
            right,
        )
    }
}

/// `max |d_X(x, x') - d_Y(y, y')|` over all pairs of related pairs.
pub fn distortion(
    r: &Correspondence,
    x: &DistanceMatrix,
    y: &DistanceMatrix,
) -> Result<f64, GhError> {
    for &(i, j) in r.pairs() {
        if i >= x.len() {
            return Err(GhError::IndexOutOfRange {
                side: Side::Left,
                index: i,
                len: x.len(),
            });
        }
        if j >= y.len() {
            return Err(GhError::IndexOutOfRange {
                side: Side::Right,
                index: j,
                len: y.len(),
            });
        }
    }
    Ok(distortion_unchecked(r.pairs(), x, y))
}

pub(crate) fn distortion_unchecked(
    pairs: &[(usize, usize)],
    x: &DistanceMatrix,
    y: &DistanceMatrix,
) -> f64 {
    let mut worst = 0.0f64;
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            worst = worst.max((x.get(i, k) - y.get(j, l)).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate;

    fn two(d: f64) -> DistanceMatrix {
        validate(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn construction_checks_surjectivity() {
        assert!(Correspondence::new(vec![(0, 0)], 1, 2).is_err());
        assert!(matches!(
            Correspondence::new(vec![(0, 0), (0, 1)], 2, 2).unwrap_err(),
            GhError::NotSurjective {
                side: Side::Left,
                index: 1
            }
        ));
        assert!(matches!(
            Correspondence::new(vec![(3, 0)], 2, 1).unwrap_err(),
            GhError::IndexOutOfRange { .. }
        ));
        let r = Correspondence::new(vec![(1, 0), (0, 0), (1, 0)], 2, 1).unwrap();
        assert_eq!(r.pairs(), &[(0, 0), (1, 0)]);
    }

    #[test]
    fn distortion_examples() {
        let (a, b) = (two(1.0), two(3.0));
        assert_eq!(distortion(&Correspondence::identity(2), &a, &a).unwrap(), 0.0);
        assert_eq!(distortion(&Correspondence::full(2, 2), &a, &b).unwrap(), 3.0);
        assert_eq!(distortion(&Correspondence::identity(2), &a, &b).unwrap(), 2.0);
        let bad = Correspondence::identity(3);
        assert!(distortion(&bad, &a, &b).is_err());
    }

    #[test]
    fn from_maps_builds_union_of_graphs() {
        let r = Correspondence::from_maps(&[0, 0], &[1]).unwrap();
        assert_eq!(r.pairs(), &[(0, 0), (1, 0)]);
        assert_eq!(r.transpose().pairs(), &[(0, 0), (0, 1)]);
    }
}
