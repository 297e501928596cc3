//! Slow, obviously-correct reference implementations. Each one enumerates the
//! whole search space and shares no code with the solvers it checks.

use ghspace_core::DistanceMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Axiom check over every ordered triple, with absolute `slack` on the
/// triangle inequality.
pub fn is_metric(raw: &[Vec<f64>], slack: f64) -> bool {
    let n = raw.len();
    if n == 0 || raw.iter().any(|r| r.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let v = raw[i][j];
            if !v.is_finite() || v != raw[j][i] {
                return false;
            }
            if (i == j) != (v == 0.0) || v < 0.0 {
                return false;
            }
            for k in 0..n {
                if v > raw[i][k] + raw[k][j] + slack {
                    return false;
                }
            }
        }
    }
    true
}

/// Every map `0..n -> 0..m`, in lexicographic order.
fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..m).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

/// Distortion of an explicit list of related pairs.
pub fn distortion_of(pairs: &[(usize, usize)], x: &DistanceMatrix, y: &DistanceMatrix) -> f64 {
    let mut d = 0.0f64;
    for &(a, b) in pairs {
        for &(c, e) in pairs {
            d = d.max((x.get(a, c) - y.get(b, e)).abs());
        }
    }
    d
}

/// `d_GH` as half the least distortion over all correspondences
/// `graph(f) ∪ graph(g)ᵀ` with `f: X -> Y`, `g: Y -> X`.
pub fn gh_enumerate(x: &DistanceMatrix, y: &DistanceMatrix) -> f64 {
    let fs = all_maps(x.len(), y.len());
    let gs = all_maps(y.len(), x.len());
    let mut best = f64::INFINITY;
    for f in &fs {
        for g in &gs {
            let mut pairs: Vec<(usize, usize)> = f.iter().enumerate().map(|(a, &b)| (a, b)).collect();
            pairs.extend(g.iter().enumerate().map(|(b, &a)| (a, b)));
            best = best.min(distortion_of(&pairs, x, y));
        }
    }
    0.5 * best
}

/// Subsets of `0..n` of size `k` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Least number of closed `eps`-balls centred in `X` covering `X`, with the
/// lexicographically first optimal centre set.
pub fn covering_brute(x: &DistanceMatrix, eps: f64) -> (usize, Vec<usize>) {
    let n = x.len();
    for k in 1..=n {
        for c in combinations(n, k) {
            if (0..n).all(|p| c.iter().any(|&q| x.get(p, q) <= eps)) {
                return (k, c);
            }
        }
    }
    unreachable!("all points cover the space")
}

/// Largest subset with pairwise distances `>= eps`, with the
/// lexicographically first optimal subset.
pub fn packing_brute(x: &DistanceMatrix, eps: f64) -> (usize, Vec<usize>) {
    let n = x.len();
    for k in (1..=n).rev() {
        for c in combinations(n, k) {
            let ok = c
                .iter()
                .enumerate()
                .all(|(a, &p)| c[a + 1..].iter().all(|&q| x.get(p, q) >= eps));
            if ok {
                return (k, c);
            }
        }
    }
    unreachable!("a single point is a packing")
}

/// `max(max_a min_b d, max_b min_a d)`.
pub fn hausdorff_brute(z: &DistanceMatrix, a: &[usize], b: &[usize]) -> f64 {
    let one_sided = |s: &[usize], t: &[usize]| {
        s.iter()
            .map(|&p| t.iter().map(|&q| z.get(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// `½ min_P max_ij |x_ij - y_{P(i)P(j)}|` over all permutations, with the
/// first optimal permutation in lexicographic order.
pub fn permutation_brute(x: &DistanceMatrix, y: &DistanceMatrix) -> (f64, Vec<usize>) {
    let n = x.len();
    assert_eq!(n, y.len());
    fn rec(
        x: &DistanceMatrix,
        y: &DistanceMatrix,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut (f64, Vec<usize>),
    ) {
        let n = x.len();
        if perm.len() == n {
            let mut v = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    v = v.max((x.get(i, j) - y.get(perm[i], perm[j])).abs());
                }
            }
            if v < best.0 {
                *best = (v, perm.clone());
            }
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                perm.push(j);
                rec(x, y, perm, used, best);
                perm.pop();
                used[j] = false;
            }
        }
    }
    let mut best = (f64::INFINITY, Vec::new());
    rec(x, y, &mut Vec::new(), &mut vec![false; n], &mut best);
    (0.5 * best.0, best.1)
}

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / m[col][col].clone();
            for c in col..n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Cayley-Menger determinant of four points, bordered 5×5 form over squared
/// distances, divided by 288 so that it equals the squared volume of the
/// tetrahedron when one exists. Computed exactly from the binary inputs.
pub fn cayley_menger_rational(x: &DistanceMatrix, pts: [usize; 4]) -> BigRational {
    let one = BigRational::from_integer(BigInt::from(1));
    let mut m = vec![vec![BigRational::zero(); 5]; 5];
    for i in 1..5 {
        m[0][i] = one.clone();
        m[i][0] = one.clone();
    }
    for a in 0..4 {
        for b in 0..4 {
            let d = exact(x.get(pts[a], pts[b]));
            m[a + 1][b + 1] = d.clone() * d;
        }
    }
    determinant(m) / BigRational::from_integer(BigInt::from(288))
}

/// Relative error of `approx` against the exact value, measured against
/// `scale` when the exact value is tiny.
pub fn relative_error(approx: f64, exact_value: &BigRational, scale: f64) -> f64 {
    let diff = (exact(approx) - exact_value.clone()).abs();
    let denom = exact(scale).max(exact_value.abs());
    let q = diff / denom;
    num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::INFINITY)
}

/// Seeded test inputs with a mix of generic and highly tied distances.
pub mod instances {
    use ghspace_core::constructions::{random_space, Sampler};
    use ghspace_core::DistanceMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Shortest-path metric of a complete graph with integer weights in
    /// `1..=max_weight`. Lots of equal distances.
    pub fn graph_metric(n: usize, max_weight: u32, rng: &mut impl Rng) -> DistanceMatrix {
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let w = rng.random_range(1..=max_weight) as f64;
                d[i][j] = w;
                d[j][i] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        DistanceMatrix::new(d).expect("shortest paths form a metric")
    }

    /// Distinct points of the integer grid `0..side` squared, Euclidean
    /// distances.
    pub fn planar_grid(n: usize, side: i32, rng: &mut impl Rng) -> DistanceMatrix {
        assert!((side * side) as usize >= n);
        let mut pts: Vec<(i32, i32)> = Vec::new();
        while pts.len() < n {
            let p = (rng.random_range(0..side), rng.random_range(0..side));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let d = pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| (((a.0 - b.0).pow(2) + (a.1 - b.1).pow(2)) as f64).sqrt())
                    .collect()
            })
            .collect();
        DistanceMatrix::new(d).expect("planar points form a metric")
    }

    /// One of the three families above, chosen by the seed.
    pub fn mixed(n: usize, seed: u64) -> DistanceMatrix {
        let mut r = rng(seed);
        match seed % 3 {
            0 => random_space(n, seed, &Sampler::SafeBand).expect("n >= 1"),
            1 => graph_metric(n, 3, &mut r),
            _ => planar_grid(n, 4, &mut r),
        }
    }
}
