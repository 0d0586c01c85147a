//! Property tests: ball operations enclose the exact rational result, and the
//! best-approximation and exact linear-algebra helpers agree with brute force.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use gamma_points::linalg::{det_laplace, rank};
use gamma_points::precision::rational::best_rational_for;
use gamma_points::precision::{ComplexBall, RealBall};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn real_ops_enclose(a in rat(), b in rat(), prec in 20u32..200) {
        let (x, y) = (RealBall::from_rational(&a, prec), RealBall::from_rational(&b, prec));
        prop_assert!(x.add(&y, prec).contains_rational(&(&a + &b)));
        prop_assert!(x.sub(&y, prec).contains_rational(&(&a - &b)));
        prop_assert!(x.mul(&y, prec).contains_rational(&(&a * &b)));
        if !b.is_zero() {
            if let Ok(r) = x.div(&y, prec) {
                prop_assert!(r.contains_rational(&(&a / &b)));
            }
        }
    }

    #[test]
    fn complex_mul_encloses(a in rat(), b in rat(), c in rat(), d in rat()) {
        let prec = 64;
        let z = ComplexBall::from_parts(&RealBall::from_rational(&a, prec), &RealBall::from_rational(&b, prec));
        let w = ComplexBall::from_parts(&RealBall::from_rational(&c, prec), &RealBall::from_rational(&d, prec));
        let re = &a * &c - &b * &d;
        let im = &a * &d + &b * &c;
        prop_assert!(z.mul(&w, prec).contains_rational(&re, &im));
    }

    #[test]
    fn exp_log_round_trip(re in -5.0f64..5.0, im in -3.0f64..3.0) {
        let z = ComplexBall::from_f64(re, im);
        let back = z.exp(128).log(128).unwrap();
        prop_assert!(back.overlaps(&z));
    }

    #[test]
    fn best_rational_matches_brute_force(n in -2000i64..2000, d in 1i64..300, qmax in 1i64..40) {
        let x = q(n, d);
        let best = best_rational_for(&x, &BigInt::from(qmax));
        let best_dist = (&x - &best).abs();
        prop_assert!(best.denom() <= &BigInt::from(qmax));
        for den in 1..=qmax {
            let num = (&x * BigInt::from(den)).round();
            let cand = num / BigInt::from(den);
            prop_assert!((&x - &cand).abs() >= best_dist);
        }
    }

    #[test]
    fn rank_matches_determinant(entries in proptest::collection::vec(-4i64..5, 9)) {
        let m: Vec<Vec<BigRational>> = entries.chunks(3).map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect();
        let full = rank(&m, 3) == 3;
        prop_assert_eq!(full, !det_laplace(&m).is_zero());
    }
}
