//! Exact Gromov-Hausdorff distance by branch and bound.
//!
//! Every correspondence contains a sub-correspondence `graph(f) ∪ graph(g)`
//! with `f: X → Y`, `g: Y → X`, and removing pairs never increases distortion,
//! so the search ranges over such pairs of maps only. Each point of `X` and of
//! `Y` is a decision variable whose value is its partner. Variables are
//! assigned in decreasing order of eccentricity.
//!
//! For every unassigned variable and candidate partner, the search maintains
//! the largest discrepancy the new pair would create against the pairs already
//! placed. The largest, over unassigned variables, of the smallest such cost
//! bounds the distortion of every completion. Candidates are tried cheapest
//! first and only strict improvements replace the incumbent, so the traversal
//! and the returned witness are deterministic.

use super::correspondence::distortion_unchecked;
use super::{bounds, Correspondence, GhError, GhResult};
use crate::metric::DistanceMatrix;

/// Maximum number of search nodes (placed pairs) to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

pub const DEFAULT_BUDGET: Budget = Budget(50_000_000);

impl Default for Budget {
    fn default() -> Self {
        DEFAULT_BUDGET
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget(u64::MAX);
}

#[derive(Debug, Clone, Copy)]
enum Var {
    /// Choose a partner in `Y` for this point of `X`.
    Left(usize),
    /// Choose a partner in `X` for this point of `Y`.
    Right(usize),
}

struct Frame {
    /// `(cost, candidate)` sorted ascending.
    candidates: Vec<(f64, usize)>,
    next: usize,
    /// Bound on every completion below this frame.
    bound: f64,
}

struct Search<'a> {
    x: &'a DistanceMatrix,
    y: &'a DistanceMatrix,
    order: Vec<Var>,
    /// Offset of each variable's row in a cost table.
    offsets: Vec<usize>,
    table_len: usize,
}

impl<'a> Search<'a> {
    fn new(x: &'a DistanceMatrix, y: &'a DistanceMatrix) -> Self {
        let mut keyed: Vec<(f64, u8, usize, Var)> = (0..x.len())
            .map(|i| (x.eccentricity(i), 0, i, Var::Left(i)))
            .chain((0..y.len()).map(|j| (y.eccentricity(j), 1, j, Var::Right(j))))
            .collect();
        keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let order: Vec<Var> = keyed.into_iter().map(|k| k.3).collect();
        let mut offsets = Vec::with_capacity(order.len());
        let mut table_len = 0;
        for v in &order {
            offsets.push(table_len);
            table_len += match v {
                Var::Left(_) => y.len(),
                Var::Right(_) => x.len(),
            };
        }
        Self {
            x,
            y,
            order,
            offsets,
            table_len,
        }
    }

    fn domain(&self, depth: usize) -> usize {
        match self.order[depth] {
            Var::Left(_) => self.y.len(),
            Var::Right(_) => self.x.len(),
        }
    }

    fn pair(&self, depth: usize, candidate: usize) -> (usize, usize) {
        match self.order[depth] {
            Var::Left(i) => (i, candidate),
            Var::Right(j) => (candidate, j),
        }
    }

    /// Folds the pair `(a, b)` into the cost rows of variables after `depth`.
    fn update(&self, table: &mut [f64], depth: usize, (a, b): (usize, usize)) {
        for later in (depth + 1)..self.order.len() {
            let row = &mut table[self.offsets[later]..][..self.domain(later)];
            match self.order[later] {
                Var::Left(i) => {
                    let dx = self.x.get(i, a);
                    for (j, cost) in row.iter_mut().enumerate() {
                        *cost = cost.max((dx - self.y.get(j, b)).abs());
                    }
                }
                Var::Right(j) => {
                    let dy = self.y.get(j, b);
                    for (i, cost) in row.iter_mut().enumerate() {
                        *cost = cost.max((self.x.get(i, a) - dy).abs());
                    }
                }
            }
        }
    }

    /// Largest over variables after `depth` of their cheapest candidate.
    fn lookahead(&self, table: &[f64], depth: usize) -> f64 {
        ((depth + 1)..self.order.len())
            .map(|v| {
                table[self.offsets[v]..][..self.domain(v)]
                    .iter()
                    .copied()
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    fn frame(&self, table: &[f64], depth: usize, bound: f64) -> Frame {
        let row = &table[self.offsets[depth]..][..self.domain(depth)];
        let mut candidates: Vec<(f64, usize)> =
            row.iter().copied().enumerate().map(|(c, cost)| (cost, c)).collect();
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Frame {
            candidates,
            next: 0,
            bound,
        }
    }
}

/// Computes `d_GH(X, Y)` exactly, or a certified interval when the node budget
/// runs out (returned inside [`GhError::BudgetExceeded`]).
pub fn gh_exact(
    x: &DistanceMatrix,
    y: &DistanceMatrix,
    budget: Budget,
) -> Result<GhResult, GhError> {
    // Distortions are compared in full units; the result is halved at the end.
    let floor = 2.0 * bounds::gh_lower_bounds(x, y);
    let full = Correspondence::full(x.len(), y.len());
    let mut best = distortion_unchecked(full.pairs(), x, y);
    let mut witness = full.pairs().to_vec();
    let mut nodes: u64 = 0;

    let search = Search::new(x, y);
    let vars = search.order.len();
    let mut tables: Vec<Vec<f64>> = vec![vec![0.0; search.table_len]];
    let mut current: Vec<f64> = vec![0.0];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(vars);
    let root_bound = search.lookahead(&tables[0], 0);
    let mut stack = vec![search.frame(&tables[0], 0, root_bound)];
    let mut exhausted = false;

    while best > floor {
        let depth = stack.len() - 1;
        let frame = stack.last_mut().expect("non-empty stack");
        let cur = current[depth];
        let next = frame.candidates.get(frame.next).copied();
        let (cost, candidate) = match next {
            Some((cost, c)) if frame.bound < best && cost.max(cur) < best => (cost, c),
            _ => {
                stack.pop();
                if stack.is_empty() {
                    break;
                }
                pairs.pop();
                tables.pop();
                current.pop();
                continue;
            }
        };
        if nodes >= budget.0 {
            exhausted = true;
            break;
        }
        frame.next += 1;
        nodes += 1;

        let placed = search.pair(depth, candidate);
        let reached = cost.max(cur);
        pairs.push(placed);
        if depth + 1 == vars {
            if reached < best {
                best = reached;
                witness.clone_from(&pairs);
            }
            pairs.pop();
            continue;
        }
        let mut table = tables[depth].clone();
        search.update(&mut table, depth, placed);
        let bound = reached.max(search.lookahead(&table, depth));
        if bound >= best {
            pairs.pop();
            continue;
        }
        stack.push(search.frame(&table, depth + 1, bound));
        tables.push(table);
        current.push(reached);
    }

    let witness = Correspondence::from_sorted_pairs(witness);
    debug_assert_eq!(distortion_unchecked(witness.pairs(), x, y), best);
    let upper = 0.5 * best;
    if !exhausted {
        return Ok(GhResult {
            lower: upper,
            upper,
            witness,
            exact: true,
            nodes,
        });
    }
    // Every unexplored subtree is bounded by its frame bound and the cost of
    // its cheapest remaining candidate; explored ones are covered by `best`.
    let frontier = stack
        .iter()
        .zip(&current)
        .filter_map(|(frame, &cur)| {
            frame
                .candidates
                .get(frame.next)
                .map(|&(cost, _)| frame.bound.max(cur).max(cost))
        })
        .fold(best, f64::min);
    let lower = (0.5 * floor.max(frontier)).min(upper);
    Err(GhError::BudgetExceeded(Box::new(GhResult {
        lower,
        upper,
        witness,
        exact: lower == upper,
        nodes,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gh::distortion;
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
    fn self_distance_is_zero_with_identity_witness() {
        let x = line(&[0.0, 1.0, 3.0, 7.0]);
        let r = gh_exact(&x, &x, Budget::UNLIMITED).unwrap();
        assert!(r.exact);
        assert_eq!(r.upper, 0.0);
        assert_eq!(r.witness, Correspondence::identity(4));
    }

    #[test]
    fn point_versus_pair() {
        let r = gh_exact(&DistanceMatrix::singleton(), &two(2.0), Budget::UNLIMITED).unwrap();
        assert_eq!((r.lower, r.upper), (1.0, 1.0));
    }

    #[test]
    fn two_point_spaces() {
        let r = gh_exact(&two(1.0), &two(3.0), Budget::UNLIMITED).unwrap();
        assert_eq!(r.upper, 1.0);
        assert!(r.exact);
        assert_eq!(distortion(&r.witness, &two(1.0), &two(3.0)).unwrap(), 2.0);
    }

    #[test]
    fn zero_budget_reports_interval() {
        let x = line(&[0.0, 1.0, 3.0, 7.0, 8.5]);
        let y = line(&[0.0, 2.0, 3.0, 6.0, 9.0, 9.5]);
        match gh_exact(&x, &y, Budget(0)) {
            Err(GhError::BudgetExceeded(r)) => {
                assert!(r.lower <= r.upper);
                assert!(!r.exact);
                assert_eq!(r.upper, 4.75);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let exact = gh_exact(&x, &y, Budget::UNLIMITED).unwrap();
        match gh_exact(&x, &y, Budget(5)) {
            Err(GhError::BudgetExceeded(r)) => {
                assert!(r.lower <= exact.upper && exact.upper <= r.upper);
            }
            Ok(r) => assert_eq!(r.upper, exact.upper),
            Err(e) => panic!("{e}"),
        }
    }
}
