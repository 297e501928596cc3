use ghspace_core::cayley_menger::cayley_menger_of;
use ghspace_core::covering::{bracket_check, covering_number, scale_profile};
use ghspace_core::format::{format_matrix, parse_matrix};
use ghspace_core::gh::{gh_exact, gh_local, gh_upper_permutation, lower_bound_terms, Budget, LocalOutcome};
use ghspace_core::predicates::{components_at_scale, is_totally_anisometric};
use ghspace_core::DistanceMatrix;
use ghspace_oracles::gh_enumerate;
use ghspace_oracles::instances::mixed;
use proptest::prelude::*;

fn space(max_n: usize) -> impl Strategy<Value = DistanceMatrix> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| mixed(n, seed))
}

fn gh(x: &DistanceMatrix, y: &DistanceMatrix) -> f64 {
    gh_exact(x, y, Budget::UNLIMITED).unwrap().upper
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gh_is_symmetric(x in space(5), y in space(5)) {
        prop_assert_eq!(gh(&x, &y), gh(&y, &x));
    }

    #[test]
    fn gh_triangle_inequality(x in space(4), y in space(4), z in space(4)) {
        prop_assert!(gh(&x, &z) <= gh(&x, &y) + gh(&y, &z) + 1e-9);
    }

    #[test]
    fn gh_vanishes_on_relabelings(x in space(6), seed in any::<u64>()) {
        let n = x.len();
        let mut perm: Vec<usize> = (0..n).collect();
        // Deterministic shuffle from the seed.
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = x.permuted(&perm).unwrap();
        prop_assert_eq!(gh(&x, &y), 0.0);
        prop_assert_eq!(gh_upper_permutation(&x, &y).unwrap().value, 0.0);
    }

    #[test]
    fn bounds_sandwich_the_exact_value(n in 1usize..=5, a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (mixed(n, a), mixed(n, b));
        let exact = gh(&x, &y);
        let terms = lower_bound_terms(&x, &y);
        for t in [terms.diameter, terms.codiameter, terms.cardinality, terms.distribution, terms.value] {
            prop_assert!(t <= exact, "{:?} vs {}", terms, exact);
        }
        let perm = gh_upper_permutation(&x, &y).unwrap().value;
        prop_assert!(exact <= perm);
        prop_assert_eq!(exact == 0.0, perm == 0.0);
        if let LocalOutcome::Exact { value, .. } = gh_local(&x, &y).unwrap() {
            prop_assert_eq!(value, exact);
        }
    }

    #[test]
    fn lower_bounds_hold_for_unequal_sizes(x in space(4), y in space(4)) {
        let terms = lower_bound_terms(&x, &y);
        let exact = gh_enumerate(&x, &y);
        prop_assert!(terms.value <= exact, "{:?} vs {}", terms, exact);
    }

    #[test]
    fn budget_interval_contains_the_value(x in space(6), y in space(6), budget in 1u64..200) {
        let exact = gh(&x, &y);
        match gh_exact(&x, &y, Budget(budget)) {
            Ok(r) => prop_assert_eq!(r.upper, exact),
            Err(ghspace_core::gh::GhError::BudgetExceeded(r)) => {
                prop_assert!(!r.exact);
                prop_assert!(r.lower <= exact && exact <= r.upper);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn anisometry_matches_duplicate_distances(x in space(7)) {
        let mut values: Vec<f64> = x.pairs().map(|(_, _, v)| v).collect();
        values.sort_by(f64::total_cmp);
        let distinct = values.windows(2).all(|w| w[0] != w[1]);
        prop_assert_eq!(is_totally_anisometric(&x, 0.0).anisometric, distinct);
    }

    #[test]
    fn components_merge_as_scale_grows(x in space(9)) {
        let mut deltas: Vec<f64> = x.pairs().map(|(_, _, v)| v).collect();
        deltas.push(0.0);
        deltas.sort_by(f64::total_cmp);
        let counts: Vec<usize> = deltas.iter().map(|&d| components_at_scale(&x, d).len()).collect();
        prop_assert!(counts.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(counts[0], x.len());
        prop_assert_eq!(*counts.last().unwrap(), 1);
    }

    #[test]
    fn cayley_menger_is_label_invariant(seed in any::<u64>()) {
        let x = mixed(4, seed);
        let base = cayley_menger_of(&x, [0, 1, 2, 3]);
        let scale = x.diameter().powi(6);
        for p in permutations(4) {
            let v = cayley_menger_of(&x, [p[0], p[1], p[2], p[3]]);
            prop_assert!((v - base).abs() <= 1e-12 * scale, "{} vs {}", v, base);
        }
    }

    #[test]
    fn bracket_holds(x in space(8), fracs in proptest::collection::vec(0.05f64..1.0, 5)) {
        let d = x.diameter().max(1.0);
        let mut scales: Vec<f64> = fracs.iter().map(|f| f * d).collect();
        scales.sort_by(|a, b| b.total_cmp(a));
        scales.dedup();
        let profile = scale_profile(&x, &scales).unwrap();
        prop_assert!(bracket_check(&profile, &x).unwrap().holds);
    }

    #[test]
    fn covering_transfers_along_gh(x in space(5), y in space(5), rho in 0.0f64..3.0) {
        let g = gh(&x, &y);
        let nx = covering_number(&x, rho + 2.0 * g + 1e-9).unwrap().count;
        let ny = covering_number(&y, rho).unwrap().count;
        prop_assert!(nx <= ny, "N(X)={} N(Y)={} gh={}", nx, ny, g);
    }

    #[test]
    fn text_format_round_trips(x in space(10)) {
        prop_assert_eq!(parse_matrix(&format_matrix(&x)).unwrap(), x);
    }
}
