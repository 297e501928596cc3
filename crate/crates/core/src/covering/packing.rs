//! Maximum packing: the largest subset with all pairwise distances `>= eps`,
//! as a maximum clique of the threshold graph.

use serde::Serialize;

use super::bitset::BitSet;
use super::CoverError;
use crate::metric::DistanceMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Packing {
    pub count: usize,
    /// Lexicographically smallest maximum subset, increasing.
    pub subset: Vec<usize>,
}

/// `M(X, eps)`: the largest cardinality of a subset whose codiameter is at
/// least `eps`.
pub fn packing_number(x: &DistanceMatrix, eps: f64) -> Result<Packing, CoverError> {
    if eps.is_nan() {
        return Err(CoverError::InvalidScale(eps));
    }
    let n = x.len();
    let adjacency: Vec<BitSet> = (0..n)
        .map(|i| {
            let mut b = BitSet::new(n);
            for (j, &v) in x.row(i).iter().enumerate() {
                if j != i && v >= eps {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    let mut solver = MaxClique {
        adjacency: &adjacency,
        best: 1,
    };
    solver.expand(&BitSet::full(n), 0);
    let count = solver.best;
    let subset = lexicographic_clique(&adjacency, n, count).expect("a clique of maximum size exists");
    Ok(Packing { count, subset })
}

/// Greedy sequential colouring of `candidates`. Returns vertices in colour
/// order with the number of colours used up to each one.
fn colour_order(adjacency: &[BitSet], candidates: &BitSet) -> Vec<(usize, usize)> {
    let mut uncoloured = candidates.clone();
    let mut out = Vec::with_capacity(candidates.count());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut available = uncoloured.clone();
        while let Some(v) = available.first() {
            available.remove(v);
            available.difference_with(&adjacency[v]);
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}

fn colour_bound(adjacency: &[BitSet], candidates: &BitSet) -> usize {
    colour_order(adjacency, candidates).last().map_or(0, |&(_, c)| c)
}

struct MaxClique<'a> {
    adjacency: &'a [BitSet],
    best: usize,
}

impl MaxClique<'_> {
    /// Tomita-style search: vertices are taken in reverse colour order and the
    /// colour number bounds the clique still reachable.
    fn expand(&mut self, candidates: &BitSet, size: usize) {
        let order = colour_order(self.adjacency, candidates);
        let mut remaining = candidates.clone();
        for &(v, colour) in order.iter().rev() {
            if size + colour <= self.best {
                return;
            }
            let mut next = remaining.clone();
            next.intersect_with(&self.adjacency[v]);
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(&next, size + 1);
            }
            remaining.remove(v);
        }
    }
}

/// First clique of `size` vertices in lexicographic order.
fn lexicographic_clique(adjacency: &[BitSet], n: usize, size: usize) -> Option<Vec<usize>> {
    fn dfs(adjacency: &[BitSet], size: usize, candidates: &BitSet, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return true;
        }
        if chosen.len() + colour_bound(adjacency, candidates) < size {
            return false;
        }
        let mut remaining = candidates.clone();
        while let Some(v) = remaining.first() {
            remaining.remove(v);
            let mut next = remaining.clone();
            next.intersect_with(&adjacency[v]);
            chosen.push(v);
            if dfs(adjacency, size, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    dfs(adjacency, size, &BitSet::full(n), &mut chosen).then_some(chosen)
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
    fn line_examples() {
        let l = line(&[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(
            packing_number(&l, 2.0).unwrap(),
            Packing {
                count: 2,
                subset: vec![0, 2]
            }
        );
        assert_eq!(packing_number(&l, 1.0).unwrap().count, 4);
        assert_eq!(
            packing_number(&l, 3.5).unwrap(),
            Packing {
                count: 1,
                subset: vec![0]
            }
        );
        assert_eq!(packing_number(&l, 0.0).unwrap().count, 4);
        assert!(packing_number(&l, f64::NAN).is_err());
    }

    #[test]
    fn one_point() {
        let p = packing_number(&DistanceMatrix::singleton(), 1.0).unwrap();
        assert_eq!(p.subset, vec![0]);
    }
}
