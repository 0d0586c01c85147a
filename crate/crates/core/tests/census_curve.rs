//! Census enumeration and curve-degree computations on small exact inputs.

use num_bigint::BigInt;
use num_rational::BigRational;

use gamma_points::census::{
    brute_force_count, classify_point, enumerate_rationals, run_census, Target, Verdict,
};
use gamma_points::curve::{eval_exact, fit_curve, omega, omega_upper_bound, PointSet};
use gamma_points::PrecisionContext;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn enumeration_counts() {
    let pts = enumerate_rationals(2, 50).unwrap();
    assert_eq!(pts.len(), 775);
    assert_eq!(pts.len(), brute_force_count(2, 50));
    assert!(pts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(pts.first(), Some(&q(1, 1)));
    assert_eq!(pts.last(), Some(&q(2, 1)));
}

#[test]
fn integer_points_are_hits() {
    let ctx = PrecisionContext::new(128, 1024, 2).unwrap();
    let r = classify_point(&q(4, 1), 10, Target::Gamma, &ctx);
    assert_eq!(r.verdict, Verdict::RationalHit);
    let r = classify_point(&q(4, 1), 10, Target::ReciprocalGamma, &ctx);
    assert_eq!(r.verdict, Verdict::RationalHit);
    // 1/Γ(5) = 1/24 has height 24 > 10
    let r = classify_point(&q(5, 1), 10, Target::ReciprocalGamma, &ctx);
    assert_eq!(r.verdict, Verdict::CertifiedMiss);
}

#[test]
fn small_census_only_integer_hits() {
    let ctx = PrecisionContext::new(128, 4096, 2).unwrap();
    let rep = run_census(3, 30, 1.0, &ctx).unwrap();
    assert_eq!((rep.n_gamma, rep.n_reciprocal), (2, 2));
    assert!(rep.undecided.is_empty());
    assert!(rep
        .to_csv()
        .starts_with("p,q,target,verdict,nearest_p,nearest_q,gap_lower_log2,bits_used\n"));
}

#[test]
fn parabola_points_have_degree_two() {
    let pts: Vec<_> = [(0, 0), (1, 1), (2, 4), (3, 9), (-1, 1), (-2, 4)]
        .iter()
        .map(|&(x, y)| (q(x, 1), q(y, 1)))
        .collect();
    let s = PointSet::exact(pts.clone());
    assert_eq!(omega(&s).unwrap(), 2);
    assert!(omega(&s).unwrap() <= omega_upper_bound(&s));
    let p = fit_curve(&s, 2).unwrap().expect("a conic exists");
    for (x, y) in &pts {
        assert_eq!(eval_exact(&p, x, y), Some(q(0, 1)));
    }
    assert!(fit_curve(&s, 1).unwrap().is_none());
}

#[test]
fn collinear_points_have_degree_one() {
    let s = PointSet::exact((0..5).map(|k| (q(k, 2), q(3 * k + 1, 2))).collect());
    assert_eq!(omega(&s).unwrap(), 1);
}
