//! Cross-module properties exercised through the public API.

use num_bigint::BigInt;
use proptest::prelude::*;
use subrings_core::algebra::{compositions, gaussian_binomial};
use subrings_core::bounds::{bound_b_exponent, bound_c_exponent, cap_value};
use subrings_core::closure::{count_solutions, extract_conditions};
use subrings_core::paths::path_area_identity_check;
use subrings_core::subgroups::{bound_h_exponent, count_subgroups_of_order, SubgroupCountQuery};
use subrings_core::subring::{
    count_by_diagonal, count_irreducible, count_subrings, interpolate_points, subring_matrices, Interpolation,
};
use subrings_core::zeta::local_coefficients;
use subrings_core::{Composition, EnumConfig, PolyP};

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

#[test]
fn every_enumerated_matrix_is_a_subring() {
    for (n, e, p) in [(3, 4, 2), (4, 3, 3), (4, 4, 2)] {
        let ms = subring_matrices(n, e, p, &cfg()).unwrap();
        assert_eq!(ms.len() as u64, count_subrings(n, e, p, &cfg()).unwrap());
        for m in &ms {
            assert!(m.identity_in_span() && m.is_closed_full(), "{m}");
            assert_eq!(m.index_exponent(), e as u32);
        }
    }
}

#[test]
fn irreducible_counts_split_by_diagonal() {
    for (n, e, p) in [(3, 4, 3), (4, 5, 2), (4, 4, 5)] {
        let by_alpha: u64 = compositions(n, e).map(|a| count_by_diagonal(&a, p, &cfg()).unwrap()).sum();
        assert_eq!(by_alpha, count_irreducible(n, e, p, &cfg()).unwrap());
    }
}

#[test]
fn rank_four_factor_at_three() {
    let coeffs = local_coefficients(4, 3).unwrap();
    for (e, c) in coeffs.iter().enumerate() {
        assert_eq!(c.eval_u64(3), BigInt::from(count_subrings(4, e, 3, &cfg()).unwrap()), "e={e}");
    }
}

#[test]
fn closure_conditions_at_seven() {
    for parts in [vec![2, 2], vec![3, 1], vec![2, 1, 2], vec![1, 3]] {
        let a = Composition::new(parts).unwrap();
        let sys = extract_conditions(&a, &[]).unwrap();
        assert_eq!(count_solutions(&sys, 7, 1 << 30).unwrap(), count_by_diagonal(&a, 7, &cfg()).unwrap(), "{a}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subgroup_counts_are_self_dual(n in 2usize..6, t in 1usize..4, k_frac in 0.0f64..1.0) {
        let top = t * (n - 1);
        let k = ((top as f64) * k_frac) as usize;
        let a = count_subgroups_of_order(&SubgroupCountQuery::new(n, t, k).unwrap()).unwrap();
        let b = count_subgroups_of_order(&SubgroupCountQuery::new(n, t, top - k).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn path_identity_holds(u in 0usize..7, v in 0usize..7, q in 2u64..8) {
        prop_assert!(path_area_identity_check(u, v, q).unwrap());
    }

    #[test]
    fn gaussian_binomial_is_symmetric(m in 0usize..12, r_frac in 0.0f64..1.0) {
        let r = ((m as f64) * r_frac) as usize;
        prop_assert_eq!(gaussian_binomial(m, r).unwrap(), gaussian_binomial(m, m - r).unwrap());
    }

    #[test]
    fn bounds_stay_under_cap(n in 2usize..40, extra in 0usize..400) {
        let e = n - 1 + extra;
        let cap = cap_value(n, e) + 1e-9;
        prop_assert!(bound_h_exponent(n, e).unwrap().exponent as f64 <= cap);
        prop_assert!(bound_b_exponent(n, e).unwrap().exponent as f64 <= cap);
        if e >= n {
            let c = bound_c_exponent(n, e).unwrap().value;
            prop_assert!(c <= bound_b_exponent(n, e).unwrap().exponent as f64 + 1e-6);
        }
    }

    #[test]
    fn interpolation_recovers_integer_polynomials(coeffs in proptest::collection::vec(-50i64..50, 1..5)) {
        let poly = PolyP::from_i64s(&coeffs);
        let primes = [2u64, 3, 5, 7, 11, 13];
        let points: Vec<(u64, BigInt)> = primes.iter().map(|&p| (p, poly.eval_u64(p))).collect();
        let fit = interpolate_points(&points, 4).unwrap();
        prop_assert_eq!(fit, Interpolation::Fit(poly));
    }
}
