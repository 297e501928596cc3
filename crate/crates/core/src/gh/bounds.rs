//! Cheap bounds on `d_GH` and the matrix-distance formula for nearby spaces
//! of equal cardinality.

use serde::Serialize;

use super::{Correspondence, GhError};
use crate::metric::DistanceMatrix;

/// Individual lower bounds; `value` is their maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundTerms {
    /// `½ |diam X - diam Y|`.
    pub diameter: f64,
    /// `½ |cdm X - cdm Y|`, equal cardinalities of at least two points.
    pub codiameter: f64,
    /// `½ cdm` of the larger space when cardinalities differ: two of its
    /// points must share a partner.
    pub cardinality: f64,
    /// `min(½ max_k |a_k - b_k|, ½ max(cdm X, cdm Y))` over the sorted
    /// distance lists `a`, `b`, equal cardinalities only.
    pub distribution: f64,
    pub value: f64,
}

pub fn lower_bound_terms(x: &DistanceMatrix, y: &DistanceMatrix) -> LowerBoundTerms {
    let diameter = 0.5 * (x.diameter() - y.diameter()).abs();
    let mut codiameter = 0.0;
    let mut cardinality = 0.0;
    let mut distribution = 0.0;
    if x.len() == y.len() {
        if let (Ok(cx), Ok(cy)) = (x.codiameter(), y.codiameter()) {
            codiameter = 0.5 * (cx - cy).abs();
            // Below ½ max(cdm) an optimal correspondence is a bijection, which
            // moves every order statistic of the distance list by at most 2 d_GH.
            let mut a: Vec<f64> = x.pairs().map(|p| p.2).collect();
            let mut b: Vec<f64> = y.pairs().map(|p| p.2).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            let gap = a
                .iter()
                .zip(&b)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max);
            distribution = (0.5 * gap).min(0.5 * cx.max(cy));
        }
    } else {
        let larger = if x.len() > y.len() { x } else { y };
        cardinality = 0.5 * larger.codiameter().unwrap_or(0.0);
    }
    let value = diameter.max(codiameter).max(cardinality).max(distribution);
    LowerBoundTerms {
        diameter,
        codiameter,
        cardinality,
        distribution,
        value,
    }
}

/// Best of the cheap lower bounds on `d_GH(X, Y)`.
pub fn gh_lower_bounds(x: &DistanceMatrix, y: &DistanceMatrix) -> f64 {
    lower_bound_terms(x, y).value
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermutationBound {
    /// `½ min_P ‖D_X - P D_Y Pᵀ‖_∞`.
    pub value: f64,
    /// Point `i` of `X` is matched with `permutation[i]` of `Y`.
    pub permutation: Vec<usize>,
}

impl PermutationBound {
    pub fn correspondence(&self) -> Correspondence {
        Correspondence::from_sorted_pairs(self.permutation.iter().copied().enumerate().collect())
    }
}

/// Minimum sup-norm distance between `D_X` and relabelings of `D_Y`, halved:
/// an upper bound on `d_GH`.
///
/// Branch and bound over partial assignments taken in lexicographic order;
/// the first optimal permutation in that order is returned.
pub fn gh_upper_permutation(
    x: &DistanceMatrix,
    y: &DistanceMatrix,
) -> Result<PermutationBound, GhError> {
    let n = x.len();
    if n != y.len() {
        return Err(GhError::CardinalityMismatch {
            left: n,
            right: y.len(),
        });
    }
    let mut state = PermState {
        x,
        y,
        n,
        best: f64::INFINITY,
        best_perm: Vec::new(),
        perm: Vec::with_capacity(n),
        used: vec![false; n],
    };
    let table = vec![0.0; n * n];
    state.descend(&table, 0.0);
    Ok(PermutationBound {
        value: 0.5 * state.best,
        permutation: state.best_perm,
    })
}

struct PermState<'a> {
    x: &'a DistanceMatrix,
    y: &'a DistanceMatrix,
    n: usize,
    best: f64,
    best_perm: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl PermState<'_> {
    /// `table[i * n + j]`: cost of matching `i` with `j` against the current
    /// partial assignment.
    fn descend(&mut self, table: &[f64], cur: f64) {
        let n = self.n;
        let i = self.perm.len();
        if i == n {
            if cur < self.best {
                self.best = cur;
                self.best_perm.clone_from(&self.perm);
            }
            return;
        }
        for j in 0..n {
            let cost = table[i * n + j].max(cur);
            if self.used[j] || cost >= self.best {
                continue;
            }
            let mut next = table.to_vec();
            let mut bound = cost;
            for k in (i + 1)..n {
                let dx = self.x.get(k, i);
                let mut cheapest = f64::INFINITY;
                for l in 0..n {
                    let slot = &mut next[k * n + l];
                    *slot = slot.max((dx - self.y.get(l, j)).abs());
                    if !self.used[l] && l != j {
                        cheapest = cheapest.min(*slot);
                    }
                }
                bound = bound.max(cheapest);
            }
            if bound >= self.best {
                continue;
            }
            self.used[j] = true;
            self.perm.push(j);
            self.descend(&next, cost);
            self.perm.pop();
            self.used[j] = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LocalOutcome {
    /// The permutation bound is at most `½ cdm(X)`, so it equals `d_GH`.
    Exact {
        value: f64,
        permutation: Vec<usize>,
    },
    /// The permutation bound is too large for the local formula to apply.
    Inapplicable {
        permutation_value: f64,
        half_codiameter: f64,
    },
}

/// `d_GH` through the local matrix formula, valid when the permutation bound
/// does not exceed half the codiameter of `X`.
pub fn gh_local(x: &DistanceMatrix, y: &DistanceMatrix) -> Result<LocalOutcome, GhError> {
    let bound = gh_upper_permutation(x, y)?;
    // One point each: the spaces are isometric.
    let half_codiameter = x.codiameter().map_or(f64::INFINITY, |c| 0.5 * c);
    Ok(if bound.value <= half_codiameter {
        LocalOutcome::Exact {
            value: bound.value,
            permutation: bound.permutation,
        }
    } else {
        LocalOutcome::Inapplicable {
            permutation_value: bound.value,
            half_codiameter,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate;

    fn two(d: f64) -> DistanceMatrix {
        validate(vec![vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

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
    fn lower_bound_examples() {
        let x = line(&[0.0, 1.0, 3.0]);
        assert_eq!(gh_lower_bounds(&x, &x), 0.0);
        assert!(gh_lower_bounds(&line(&[0.0, 3.0]), &line(&[0.0, 0.5, 1.0])) >= 1.0);
        assert_eq!(gh_lower_bounds(&two(1.0), &two(3.0)), 1.0);
        let t = lower_bound_terms(&two(1.0), &line(&[0.0, 0.2, 1.0]));
        assert_eq!(t.cardinality, 0.1);
        assert_eq!(t.codiameter, 0.0);
    }

    #[test]
    fn permutation_examples() {
        let x = line(&[0.0, 1.0, 3.0]);
        let relabeled = x.permuted(&[2, 0, 1]).unwrap();
        let b = gh_upper_permutation(&x, &relabeled).unwrap();
        assert_eq!(b.value, 0.0);
        // relabeled[k] = x[perm[k]], so x[i] matches relabeled[inverse(i)].
        assert_eq!(b.permutation, vec![1, 2, 0]);
        assert_eq!(gh_upper_permutation(&two(1.0), &two(3.0)).unwrap().value, 1.0);
        assert!(matches!(
            gh_upper_permutation(&two(1.0), &x),
            Err(GhError::CardinalityMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn lexicographic_tie_break() {
        // All relabelings of an equilateral triangle are optimal.
        let tri = validate(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(gh_upper_permutation(&tri, &tri).unwrap().permutation, vec![0, 1, 2]);
    }

    #[test]
    fn local_examples() {
        let x = line(&[0.0, 1.0, 3.0]);
        assert_eq!(
            gh_local(&x, &x).unwrap(),
            LocalOutcome::Exact {
                value: 0.0,
                permutation: vec![0, 1, 2]
            }
        );
        assert_eq!(
            gh_local(&two(1.0), &two(3.0)).unwrap(),
            LocalOutcome::Inapplicable {
                permutation_value: 1.0,
                half_codiameter: 0.5
            }
        );
        assert!(matches!(
            gh_local(&DistanceMatrix::singleton(), &DistanceMatrix::singleton()).unwrap(),
            LocalOutcome::Exact { value: 0.0, .. }
        ));
    }
}
