//! Minimum covering by closed balls centred at points of the space.

use serde::Serialize;

use super::bitset::BitSet;
use super::CoverError;
use crate::metric::DistanceMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub count: usize,
    /// Lexicographically smallest minimum set of centres, increasing.
    pub centers: Vec<usize>,
}

/// `N(X, eps)`: the least number of closed `eps`-balls centred at points of
/// `X` that cover `X`.
///
/// The optimum is found by branch and bound (greedy incumbent, disjoint-ball
/// lower bound); a second search in lexicographic order then extracts the
/// canonical witness of that size.
pub fn covering_number(x: &DistanceMatrix, eps: f64) -> Result<Cover, CoverError> {
    if eps.is_nan() || eps < 0.0 {
        return Err(CoverError::InvalidScale(eps));
    }
    let n = x.len();
    let balls = balls(x, eps);
    if let Some(c) = (0..n).find(|&c| balls[c].count() == n) {
        return Ok(Cover {
            count: 1,
            centers: vec![c],
        });
    }
    let all = BitSet::full(n);
    let count = min_cover_within(&balls, &all, &all, greedy(&balls, n))
        .expect("the greedy cover has this size");
    let centers = lexicographic_cover(&balls, n, count).expect("a cover of optimal size exists");
    Ok(Cover { count, centers })
}

/// `balls[c]`: points within `eps` of `c`. By symmetry this is also the set
/// of centres covering `c`.
pub(crate) fn balls(x: &DistanceMatrix, eps: f64) -> Vec<BitSet> {
    let n = x.len();
    (0..n)
        .map(|c| {
            let mut b = BitSet::new(n);
            for (p, &v) in x.row(c).iter().enumerate() {
                if v <= eps {
                    b.insert(p);
                }
            }
            b
        })
        .collect()
}

fn greedy(balls: &[BitSet], n: usize) -> usize {
    let mut uncovered = BitSet::full(n);
    let mut count = 0;
    while !uncovered.is_empty() {
        let best = (0..n)
            .max_by_key(|&c| (balls[c].intersect_count(&uncovered), std::cmp::Reverse(c)))
            .expect("non-empty space");
        uncovered.difference_with(&balls[best]);
        count += 1;
    }
    count
}

/// Uncovered points whose admissible centre sets are pairwise disjoint; each
/// needs its own centre. `None` if some point has no admissible centre.
fn packing_bound(balls: &[BitSet], uncovered: &BitSet, allowed: &BitSet) -> Option<usize> {
    let mut points: Vec<(usize, usize)> = Vec::new();
    for u in uncovered.iter() {
        let size = balls[u].intersect_count(allowed);
        if size == 0 {
            return None;
        }
        points.push((size, u));
    }
    points.sort_unstable();
    let mut blocked = BitSet::new(balls.len());
    let mut bound = 0;
    for (_, u) in points {
        let mut avail = balls[u].clone();
        avail.intersect_with(allowed);
        if !avail.intersects(&blocked) {
            blocked.union_with(&avail);
            bound += 1;
        }
    }
    Some(bound)
}

/// A centre `c` covers `|B(c) ∩ U|` points, so weighting each uncovered `u`
/// by one over the largest such count among its centres gives a total to
/// which no single centre contributes more than 1.
fn fractional_bound(balls: &[BitSet], uncovered: &BitSet, allowed: &BitSet) -> usize {
    let gain: Vec<usize> = balls.iter().map(|b| b.intersect_count(uncovered)).collect();
    let total: f64 = uncovered
        .iter()
        .map(|u| {
            let best = balls[u]
                .iter()
                .filter(|&c| allowed.contains(c))
                .map(|c| gain[c])
                .max()
                .unwrap_or(1);
            1.0 / best as f64
        })
        .sum();
    // Guard against the sum landing just above an integer through rounding.
    (total - 1e-9).ceil().max(0.0) as usize
}

struct MinCover<'a> {
    balls: &'a [BitSet],
    allowed: &'a BitSet,
    /// Size of the best cover found, or the exclusive limit.
    best: usize,
}

impl MinCover<'_> {
    fn search(&mut self, uncovered: &BitSet, depth: usize) {
        if uncovered.is_empty() {
            self.best = self.best.min(depth);
            return;
        }
        let Some(bound) = packing_bound(self.balls, uncovered, self.allowed) else {
            return;
        };
        if depth + bound.max(1) >= self.best {
            return;
        }
        if depth + fractional_bound(self.balls, uncovered, self.allowed) >= self.best {
            return;
        }
        // Branch on the uncovered point with the fewest admissible centres.
        let u = uncovered
            .iter()
            .min_by_key(|&u| (self.balls[u].intersect_count(self.allowed), u))
            .expect("non-empty");
        let mut options: Vec<(usize, usize)> = self.balls[u]
            .iter()
            .filter(|&c| self.allowed.contains(c))
            .map(|c| (self.balls[c].intersect_count(uncovered), c))
            .collect();
        options.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in options {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.balls[c]);
            self.search(&rest, depth + 1);
            if depth + 1 >= self.best {
                return;
            }
        }
    }
}

/// Least number of `allowed` centres covering `uncovered`, if below `limit`.
fn min_cover_within(balls: &[BitSet], uncovered: &BitSet, allowed: &BitSet, limit: usize) -> Option<usize> {
    let mut solver = MinCover {
        balls,
        allowed,
        best: limit + 1,
    };
    solver.search(uncovered, 0);
    (solver.best <= limit).then_some(solver.best)
}

/// First cover of exactly `size` centres in lexicographic order of increasing
/// centre lists, given that no smaller cover exists.
///
/// Centres are fixed one at a time: the smallest candidate whose remainder
/// can still be covered by later centres within the budget is kept.
pub(crate) fn lexicographic_cover(balls: &[BitSet], n: usize, size: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(size);
    let mut uncovered = BitSet::full(n);
    let mut start = 0;
    while !uncovered.is_empty() {
        let remaining = size.checked_sub(chosen.len() + 1)?;
        let next = (start..n).find(|&c| {
            // With `size` optimal, every centre covers something new.
            if !balls[c].intersects(&uncovered) {
                return false;
            }
            let mut rest = uncovered.clone();
            rest.difference_with(&balls[c]);
            if rest.is_empty() {
                return true;
            }
            let mut later = BitSet::new(n);
            for d in (c + 1)..n {
                later.insert(d);
            }
            min_cover_within(balls, &rest, &later, remaining).is_some()
        })?;
        uncovered.difference_with(&balls[next]);
        chosen.push(next);
        start = next + 1;
    }
    Some(chosen)
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
            covering_number(&l, 1.0).unwrap(),
            Cover {
                count: 2,
                centers: vec![0, 2]
            }
        );
        assert_eq!(covering_number(&l, 3.0).unwrap().count, 1);
        assert_eq!(covering_number(&l, 0.0).unwrap().count, 4);
        assert_eq!(covering_number(&l, 0.0).unwrap().centers, vec![0, 1, 2, 3]);
        assert_eq!(covering_number(&l, 2.0).unwrap().centers, vec![1]);
        assert!(covering_number(&l, -1.0).is_err());
        assert!(covering_number(&l, f64::NAN).is_err());
    }

    #[test]
    fn one_point() {
        let c = covering_number(&DistanceMatrix::singleton(), 0.0).unwrap();
        assert_eq!(c.centers, vec![0]);
    }
}
