//! Randomized invariants over arbitrary (not merely sampled-admissible)
//! inputs.

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use zetafun::zeta::{
    counts_from_lpoly, effective_count_euler, lpoly_from_counts, real_weil, PlaceCounts, SqrtInt,
};

proptest! {
    // Any nonnegative count vector either fails construction with a clear
    // error or yields an L-polynomial whose invariants all hold.
    #[test]
    fn lpoly_from_arbitrary_counts(
        q in prop::sample::select(vec![2u64, 3, 4, 5]),
        n in prop::collection::vec(0u64..12, 1..=5),
    ) {
        let g = n.len();
        let pc = PlaceCounts::new(q, g, n.clone()).unwrap();
        if let Ok(l) = lpoly_from_counts(&pc) {
            // Functional equation.
            let qb = BigInt::from(q);
            for j in 0..=g {
                prop_assert_eq!(
                    l.a[2 * g - j].clone(),
                    l.a[j].clone() * qb.pow((g - j) as u32)
                );
            }
            // h = L(1) >= 1.
            prop_assert!(l.class_number().is_positive());
            // The real-Weil solve never leaves a remainder.
            prop_assert!(real_weil(&l).is_ok());
            // Counts round-trip where recovery succeeds.
            if let Ok(back) = counts_from_lpoly(&l, g) {
                let orig: Vec<BigInt> = n.iter().map(|&x| BigInt::from(x)).collect();
                prop_assert_eq!(back, orig);
            }
        }
    }

    // The exact sign in Z[sqrt(d)] agrees with floating point whenever the
    // latter is safely away from zero.
    #[test]
    fn sqrtint_sign_matches_f64(
        u in -10_000i64..10_000,
        v in -10_000i64..10_000,
        d in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7]),
    ) {
        let x = SqrtInt::new(BigInt::from(u), BigInt::from(v), d);
        let approx = u as f64 + v as f64 * (d as f64).sqrt();
        if approx.abs() > 1e-6 {
            prop_assert_eq!(x.sign() as f64, approx.signum());
        }
    }

    // The Euler product truncation is consistent: prefix counts determine
    // prefix coefficients.
    #[test]
    fn euler_series_prefix_stable(
        n in prop::collection::vec(0i64..6, 1..=6),
        m in 0usize..=4,
    ) {
        let counts: Vec<BigInt> = n.iter().map(|&x| BigInt::from(x)).collect();
        prop_assume!(m <= counts.len());
        let full = effective_count_euler(&counts, m);
        let truncated = effective_count_euler(&counts[..m.max(1).min(counts.len())], m);
        prop_assert_eq!(full, truncated);
    }
}
