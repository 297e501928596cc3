//! Gluing several spaces along a common subspace.
//!
//! Each part `X_p` comes with an isometric embedding `e_p: Y → X_p`. On the
//! disjoint union, points of the same part keep their distance and points of
//! different parts `p ≠ q` are at
//!
//! ```text
//! d(a, b) = min over y in Y of d_p(a, e_p(y)) + d_q(e_q(y), b).
//! ```
//!
//! This is a pseudo-distance; the result is its quotient by zero distance, in
//! which all copies of `Y` coincide.

use serde::Serialize;

use super::GhError;
use crate::metric::{DistanceMatrix, TRIANGLE_SLACK};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gluing {
    pub matrix: DistanceMatrix,
    /// `base[y]` is the glued point of `y ∈ Y`.
    pub base: Vec<usize>,
    /// `parts[p][i]` is the glued point of point `i` of part `p`.
    pub parts: Vec<Vec<usize>>,
}

/// Glues with exact isometry checks on the embeddings.
pub fn glue(y: &DistanceMatrix, parts: &[(DistanceMatrix, Vec<usize>)]) -> Result<Gluing, GhError> {
    glue_with_tol(y, parts, 0.0)
}

pub fn glue_with_tol(
    y: &DistanceMatrix,
    parts: &[(DistanceMatrix, Vec<usize>)],
    tol: f64,
) -> Result<Gluing, GhError> {
    if parts.is_empty() {
        return Ok(Gluing {
            matrix: y.clone(),
            base: (0..y.len()).collect(),
            parts: Vec::new(),
        });
    }
    for (p, (x, emb)) in parts.iter().enumerate() {
        if emb.len() != y.len() {
            return Err(GhError::EmbeddingLength {
                part: p,
                len: emb.len(),
                expected: y.len(),
            });
        }
        for &e in emb {
            x.check_index(e)?;
        }
        for y1 in 0..y.len() {
            for y2 in (y1 + 1)..y.len() {
                if (x.get(emb[y1], emb[y2]) - y.get(y1, y2)).abs() > tol {
                    return Err(GhError::NotIsometricEmbedding { part: p, y1, y2 });
                }
            }
        }
    }

    // Global numbering of the disjoint union.
    let mut start = Vec::with_capacity(parts.len());
    let mut total = 0;
    for (x, _) in parts {
        start.push(total);
        total += x.len();
    }
    let owner: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(p, (x, _))| (0..x.len()).map(move |i| (p, i)))
        .collect();
    let union_distance = |a: usize, b: usize| -> f64 {
        let ((p, i), (q, j)) = (owner[a], owner[b]);
        let (xp, ep) = (&parts[p].0, &parts[p].1);
        if p == q {
            return xp.get(i, j);
        }
        let (xq, eq) = (&parts[q].0, &parts[q].1);
        (0..y.len())
            .map(|k| xp.get(i, ep[k]) + xq.get(eq[k], j))
            .fold(f64::INFINITY, f64::min)
    };

    // Quotient: the first point of each zero-distance class represents it.
    let mut class = vec![usize::MAX; total];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..total {
        if class[a] != usize::MAX {
            continue;
        }
        class[a] = reps.len();
        for b in (a + 1)..total {
            if class[b] == usize::MAX && union_distance(a, b) == 0.0 {
                class[b] = reps.len();
            }
        }
        reps.push(a);
    }
    let m = reps.len();
    let mut d = vec![0.0; m * m];
    for s in 0..m {
        for t in (s + 1)..m {
            let v = union_distance(reps[s], reps[t]);
            d[s * m + t] = v;
            d[t * m + s] = v;
        }
    }
    let matrix = DistanceMatrix::from_row_major(m, d).or_else(|e| {
        // Sums of tolerated embedding errors can exceed the default slack.
        if tol > 0.0 {
            let rows = (0..m)
                .map(|s| (0..m).map(|t| if s == t { 0.0 } else { union_distance(reps[s], reps[t]) }).collect())
                .collect();
            crate::metric::validate_with_slack(rows, TRIANGLE_SLACK + 4.0 * tol)
        } else {
            Err(e)
        }
    })?;
    let part_maps: Vec<Vec<usize>> = parts
        .iter()
        .enumerate()
        .map(|(p, (x, _))| (0..x.len()).map(|i| class[start[p] + i]).collect())
        .collect();
    let base = parts[0].1.iter().map(|&e| class[start[0] + e]).collect();
    Ok(Gluing {
        matrix,
        base,
        parts: part_maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn gluing_a_space_to_itself() {
        let x = line(&[0.0, 1.0, 3.0]);
        let id = vec![0, 1, 2];
        let g = glue(&x, &[(x.clone(), id.clone()), (x.clone(), id)]).unwrap();
        assert_eq!(g.matrix, x);
        assert_eq!(g.parts, vec![vec![0, 1, 2], vec![0, 1, 2]]);
        assert_eq!(g.base, vec![0, 1, 2]);
    }

    #[test]
    fn two_segments_at_an_endpoint() {
        let point = DistanceMatrix::singleton();
        let g = glue(
            &point,
            &[(line(&[0.0, 1.0]), vec![0]), (line(&[0.0, 2.0]), vec![0])],
        )
        .unwrap();
        assert_eq!(g.matrix, line(&[0.0, 1.0, -2.0]));
        assert_eq!(g.parts, vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn rejects_non_isometric_embedding() {
        let y = line(&[0.0, 1.0]);
        let err = glue(&y, &[(line(&[0.0, 2.0]), vec![0, 1])]).unwrap_err();
        assert_eq!(
            err,
            GhError::NotIsometricEmbedding {
                part: 0,
                y1: 0,
                y2: 1
            }
        );
        assert!(glue_with_tol(&y, &[(line(&[0.0, 1.0 + 1e-12]), vec![0, 1])], 1e-9).is_ok());
        assert!(matches!(
            glue(&y, &[(line(&[0.0, 1.0]), vec![0])]).unwrap_err(),
            GhError::EmbeddingLength { .. }
        ));
    }
}
