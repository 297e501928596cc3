use ghspace_core::cayley_menger::{cayley_menger_of, min_cayley_menger};
use ghspace_core::covering::{covering_number, packing_number};
use ghspace_core::gh::{gh_exact, gh_upper_permutation, hausdorff, Budget};
use ghspace_core::{validate, DistanceMatrix};
use ghspace_oracles::instances::{graph_metric, mixed, rng};
use ghspace_oracles::{
    cayley_menger_rational, covering_brute, gh_enumerate, hausdorff_brute, is_metric,
    packing_brute, permutation_brute, relative_error,
};
use rand::Rng;

#[test]
fn validate_agrees_with_triple_scan() {
    let mut r = rng(7);
    let mut accepted = 0;
    for _ in 0..3000 {
        let n = r.random_range(1..=6);
        let mut raw = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = r.random_range(1..=4) as f64;
                raw[i][j] = v;
                raw[j][i] = v;
            }
        }
        // Occasionally break one axiom.
        if r.random_bool(0.3) {
            let (i, j) = (r.random_range(0..n), r.random_range(0..n));
            raw[i][j] = [0.0, -1.0, 5.0, f64::NAN][r.random_range(0..4)];
        }
        let ours = validate(raw.clone()).is_ok();
        assert_eq!(ours, is_metric(&raw, 0.0), "{raw:?}");
        accepted += usize::from(ours);
    }
    assert!(accepted > 300, "too few valid samples: {accepted}");
}

#[test]
fn gh_exact_matches_enumeration() {
    for seed in 0..150u64 {
        let mut r = rng(1000 + seed);
        let (n, m) = (r.random_range(1..=4), r.random_range(1..=4));
        let x = mixed(n, seed);
        let y = mixed(m, seed * 31 + 5);
        let ours = gh_exact(&x, &y, Budget::UNLIMITED).unwrap();
        assert!(ours.exact);
        assert_eq!(ours.upper, gh_enumerate(&x, &y), "seed {seed}");
        assert_eq!(ours.lower, ours.upper);
    }
}

#[test]
fn gh_exact_matches_enumeration_on_tied_graphs() {
    let mut r = rng(99);
    for _ in 0..100 {
        let (n, m) = (r.random_range(2..=4), r.random_range(2..=4));
        let x = graph_metric(n, 2, &mut r);
        let y = graph_metric(m, 2, &mut r);
        assert_eq!(gh_exact(&x, &y, Budget::UNLIMITED).unwrap().upper, gh_enumerate(&x, &y));
    }
}

#[test]
fn permutation_bound_matches_brute_force() {
    for seed in 0..120u64 {
        let n = 1 + (seed % 6) as usize;
        let x = mixed(n, seed);
        let y = mixed(n, seed + 500);
        let ours = gh_upper_permutation(&x, &y).unwrap();
        let (value, perm) = permutation_brute(&x, &y);
        assert_eq!(ours.value, value, "seed {seed}");
        assert_eq!(ours.permutation, perm, "seed {seed}");
    }
}

#[test]
fn covering_and_packing_match_subset_search() {
    for seed in 0..120u64 {
        let n = 1 + (seed % 12) as usize;
        let x = mixed(n, seed);
        let d = x.diameter();
        for eps in [0.0, 0.3 * d, 0.5 * d, 0.75 * d, 1.0, 1.5, 2.0] {
            let c = covering_number(&x, eps).unwrap();
            assert_eq!((c.count, c.centers), covering_brute(&x, eps), "seed {seed} eps {eps}");
            let p = packing_number(&x, eps).unwrap();
            assert_eq!((p.count, p.subset), packing_brute(&x, eps), "seed {seed} eps {eps}");
        }
    }
}

#[test]
fn hausdorff_matches_max_min() {
    let mut r = rng(3);
    for seed in 0..100u64 {
        let n = r.random_range(2..=8);
        let z = mixed(n, seed);
        let pick = |r: &mut rand_chacha::ChaCha8Rng| -> Vec<usize> {
            let mut s: Vec<usize> = (0..n).filter(|_| r.random_bool(0.5)).collect();
            if s.is_empty() {
                s.push(r.random_range(0..n));
            }
            s
        };
        let (a, b) = (pick(&mut r), pick(&mut r));
        assert_eq!(hausdorff(&z, &a, &b).unwrap(), hausdorff_brute(&z, &a, &b));
    }
}

#[test]
fn cayley_menger_matches_exact_determinant() {
    for seed in 0..200u64 {
        let x = mixed(4 + (seed % 3) as usize, seed);
        let scale = x.diameter().powi(6) * 1e-6;
        for pts in [[0, 1, 2, 3], [3, 1, 0, 2], [1, 3, 2, 0]] {
            let ours = cayley_menger_of(&x, pts);
            let exact = cayley_menger_rational(&x, pts);
            let err = relative_error(ours, &exact, scale);
            assert!(err < 1e-12, "seed {seed}: {ours} vs {exact} ({err})");
        }
    }
}

#[test]
fn cayley_menger_known_values() {
    let regular = DistanceMatrix::new(vec![vec![1.0; 4]; 4].into_iter().enumerate().map(|(i, mut r)| {
        r[i] = 0.0;
        r
    }).collect())
    .unwrap();
    assert!((cayley_menger_of(&regular, [0, 1, 2, 3]) - 1.0 / 72.0).abs() < 1e-16);
    for eps in [0.5, 1.0, 2.0, 3.0] {
        let g = ghspace_core::constructions::gadget(eps);
        let exact = cayley_menger_rational(&g, [0, 1, 2, 3]);
        let expected = -eps.powi(6) / 9.0;
        assert!(relative_error(expected, &exact, 0.0) < 1e-15);
        let m = min_cayley_menger(&g).unwrap();
        assert!(((m.value - expected) / expected).abs() < 1e-15);
    }
}
