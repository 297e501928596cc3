//! Validated finite metric spaces.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative slack allowed by [`validate`] on the triangle inequality.
///
/// The slack is scaled by `max(1, diam)` so that matrices built from sums of
/// floating-point lengths are not rejected over a last-bit rounding error.
pub const TRIANGLE_SLACK: f64 = 1e-12;

/// Default absolute tolerance for the predicate equalities.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("matrix is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({0},{1}) is not a finite number")]
    NonFinite(usize, usize),
    #[error("diagonal entry ({0},{0}) is not zero")]
    NonZeroDiagonal(usize),
    #[error("entries ({0},{1}) and ({1},{0}) differ")]
    NotSymmetric(usize, usize),
    #[error("off-diagonal entry ({0},{1}) is not positive")]
    NegativeOrZeroOffDiagonal(usize, usize),
    #[error("triangle inequality fails: d({i},{j}) exceeds d({i},{k}) + d({k},{j}) by {deficit}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        deficit: f64,
    },
    #[error("operation needs at least two points")]
    SinglePoint,
    #[error("operation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
}

/// A finite metric space given by its distance matrix.
///
/// Instances can only be obtained through [`validate`] (or constructors that
/// call it), so every value satisfies the metric axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates a square array of distances.
    pub fn new(raw: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        validate(raw)
    }

    /// The one-point space.
    pub fn singleton() -> Self {
        Self { n: 1, d: vec![0.0] }
    }

    /// Validates a row-major `n × n` buffer.
    pub fn from_row_major(n: usize, d: Vec<f64>) -> Result<Self, MetricError> {
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if d.len() != n * n {
            return Err(MetricError::NotSquare {
                row: d.len() / n,
                len: d.len() % n,
                expected: n,
            });
        }
        check_axioms(n, &d, TRIANGLE_SLACK)?;
        Ok(Self { n, d })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a metric space here has at least one point.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.d
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Off-diagonal entries `d(i,j)` with `i < j`, in row order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// Minimum non-zero distance.
    pub fn codiameter(&self) -> Result<f64, MetricError> {
        if self.n < 2 {
            return Err(MetricError::SinglePoint);
        }
        Ok(self.pairs().map(|(_, _, v)| v).fold(f64::INFINITY, f64::min))
    }

    /// Largest distance from `i` to any other point.
    pub fn eccentricity(&self, i: usize) -> f64 {
        self.row(i).iter().copied().fold(0.0, f64::max)
    }

    /// Restriction to the listed points, in the given order.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self, MetricError> {
        if indices.is_empty() {
            return Err(MetricError::Empty);
        }
        let mut d = Vec::with_capacity(indices.len() * indices.len());
        for &i in indices {
            self.check_index(i)?;
            for &j in indices {
                d.push(self.get(i, j));
            }
        }
        // Repeated indices produce a zero off-diagonal entry.
        Self::from_row_major(indices.len(), d)
    }

    /// Applies `perm` simultaneously to rows and columns: entry `(i,j)` of the
    /// result is `d(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, MetricError> {
        if perm.len() != self.n {
            return Err(MetricError::NotSquare {
                row: 0,
                len: perm.len(),
                expected: self.n,
            });
        }
        self.subspace(perm)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), MetricError> {
        if index < self.n {
            Ok(())
        } else {
            Err(MetricError::IndexOutOfRange { index, len: self.n })
        }
    }

    /// Builds a matrix without checking axioms. Callers must guarantee them.
    pub(crate) fn from_trusted(n: usize, d: Vec<f64>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        Self { n, d }
    }
}

/// Serialised as an array of rows, the same shape [`Deserialize`] accepts.
impl Serialize for DistanceMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DistanceMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(deserializer)?;
        validate(rows).map_err(serde::de::Error::custom)
    }
}

/// Checks the metric axioms on a square array and returns the validated
/// matrix, or the first violated axiom.
///
/// Checks run in this order: shape, finiteness, zero diagonal, symmetry,
/// positivity off the diagonal, triangle inequality. Within a check, entries
/// are scanned in lexicographic index order.
pub fn validate(raw: Vec<Vec<f64>>) -> Result<DistanceMatrix, MetricError> {
    validate_with_slack(raw, TRIANGLE_SLACK)
}

/// [`validate`] with an explicit relative triangle slack.
pub fn validate_with_slack(raw: Vec<Vec<f64>>, slack: f64) -> Result<DistanceMatrix, MetricError> {
    let n = raw.len();
    if n == 0 {
        return Err(MetricError::Empty);
    }
    let mut d = Vec::with_capacity(n * n);
    for (row, values) in raw.into_iter().enumerate() {
        if values.len() != n {
            return Err(MetricError::NotSquare {
                row,
                len: values.len(),
                expected: n,
            });
        }
        d.extend(values);
    }
    check_axioms(n, &d, slack)?;
    Ok(DistanceMatrix { n, d })
}

fn check_axioms(n: usize, d: &[f64], slack: f64) -> Result<(), MetricError> {
    let at = |i: usize, j: usize| d[i * n + j];
    for i in 0..n {
        for j in 0..n {
            if !at(i, j).is_finite() {
                return Err(MetricError::NonFinite(i, j));
            }
        }
    }
    for i in 0..n {
        if at(i, i) != 0.0 {
            return Err(MetricError::NonZeroDiagonal(i));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if at(i, j) != at(j, i) {
                return Err(MetricError::NotSymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if at(i, j) <= 0.0 {
                return Err(MetricError::NegativeOrZeroOffDiagonal(i, j));
            }
        }
    }
    let diam = d.iter().copied().fold(0.0, f64::max);
    let allowed = slack * diam.max(1.0);
    for i in 0..n {
        for j in 0..n {
            let dij = at(i, j);
            for k in 0..n {
                let deficit = dij - (at(i, k) + at(k, j));
                if deficit > allowed {
                    return Err(MetricError::TriangleViolation { i, j, k, deficit });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn two_point_space_is_valid() {
        let m = validate(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.get(0, 1), 1.0);
    }

    #[test]
    fn asymmetry_is_reported() {
        let err = validate(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err();
        assert_eq!(err, MetricError::NotSymmetric(0, 1));
    }

    #[test]
    fn triangle_violation_names_indices_and_deficit() {
        let err = validate(vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ])
        .unwrap_err();
        assert_eq!(
            err,
            MetricError::TriangleViolation {
                i: 0,
                j: 2,
                k: 1,
                deficit: 1.0
            }
        );
    }

    #[test]
    fn other_axioms() {
        assert_eq!(
            validate(vec![vec![0.5]]).unwrap_err(),
            MetricError::NonZeroDiagonal(0)
        );
        assert_eq!(
            validate(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap_err(),
            MetricError::NegativeOrZeroOffDiagonal(0, 1)
        );
        assert_eq!(
            validate(vec![vec![0.0, f64::NAN], vec![f64::NAN, 0.0]]).unwrap_err(),
            MetricError::NonFinite(0, 1)
        );
        assert!(matches!(
            validate(vec![vec![0.0, 1.0], vec![1.0]]).unwrap_err(),
            MetricError::NotSquare { row: 1, .. }
        ));
        assert_eq!(validate(vec![]).unwrap_err(), MetricError::Empty);
    }

    #[test]
    fn diameter_and_codiameter() {
        assert_eq!(DistanceMatrix::singleton().diameter(), 0.0);
        assert_eq!(
            DistanceMatrix::singleton().codiameter().unwrap_err(),
            MetricError::SinglePoint
        );
        let l = line(&[0.0, 1.0, 3.0]);
        assert_eq!(l.diameter(), 3.0);
        assert_eq!(l.codiameter().unwrap(), 1.0);
        let r2 = 2f64.sqrt();
        let square = validate(vec![
            vec![0.0, 1.0, r2, 1.0],
            vec![1.0, 0.0, 1.0, r2],
            vec![r2, 1.0, 0.0, 1.0],
            vec![1.0, r2, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(square.diameter(), r2);
        let two = validate(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(two.codiameter().unwrap(), 2.0);
    }

    #[test]
    fn permutation_and_subspace() {
        let l = line(&[0.0, 1.0, 3.0]);
        let p = l.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.get(0, 1), 3.0);
        assert_eq!(p.get(1, 2), 1.0);
        assert!(l.subspace(&[0, 0]).is_err());
        assert!(matches!(
            l.subspace(&[5]).unwrap_err(),
            MetricError::IndexOutOfRange { index: 5, len: 3 }
        ));
    }

    #[test]
    fn deserialize_validates() {
        let ok: DistanceMatrix = serde_json::from_str("[[0,1],[1,0]]").unwrap();
        assert_eq!(ok.len(), 2);
        assert!(serde_json::from_str::<DistanceMatrix>("[[0,1],[2,0]]").is_err());
        let json = serde_json::to_string(&ok).unwrap();
        assert_eq!(json, "[[0.0,1.0],[1.0,0.0]]");
        assert_eq!(serde_json::from_str::<DistanceMatrix>(&json).unwrap(), ok);
    }
}
