//! Reciprocal-gamma values checked against independent closed forms.

use gamma_points::gamma::{gamma, reciprocal_gamma, reciprocal_gamma_taylor};
use gamma_points::precision::consts::{euler_gamma, pi};
use gamma_points::{ComplexBall, Error, PrecisionContext};

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128, 1024, 2).unwrap()
}

#[test]
fn zeros_at_nonpositive_integers() {
    for k in 0..=30i64 {
        let at = reciprocal_gamma(&ComplexBall::from_i64(-k), &ctx()).unwrap();
        assert!(at.value.contains_zero(), "k = {k}");
        let near = reciprocal_gamma(&ComplexBall::from_f64(-k as f64 + 1e-3, 0.0), &ctx()).unwrap();
        assert!(near.value.excludes_zero(), "k = {k}");
    }
}

#[test]
fn poles_are_errors() {
    assert!(matches!(
        gamma(&ComplexBall::from_i64(-3), &ctx()),
        Err(Error::Pole(_))
    ));
}

#[test]
fn functional_equation() {
    let prec = 128;
    for &(re, im) in &[
        (0.3, 0.0),
        (-4.7, 2.1),
        (9.5, -3.0),
        (-12.25, 0.5),
        (2.0, 7.0),
    ] {
        let z = ComplexBall::from_f64(re, im);
        let g = reciprocal_gamma(&z, &ctx()).unwrap().value;
        let g1 = reciprocal_gamma(&z.add_i64(1, prec), &ctx()).unwrap().value;
        // 1/Γ(z) = z · 1/Γ(z+1)
        assert!(z.mul(&g1, prec).overlaps(&g), "z = {re}+{im}i");
    }
}

#[test]
fn half_integer_closed_form() {
    let prec = 128;
    // Γ(5/2) = 3√π/4
    let v = gamma(&ComplexBall::from_f64(2.5, 0.0), &ctx())
        .unwrap()
        .value;
    let expect = pi(prec)
        .sqrt(prec)
        .unwrap()
        .mul_i64(3, prec)
        .div_i64(4, prec);
    assert!(v.overlaps(&ComplexBall::from_real(&expect)));
    assert!(v.rad.log2() < -100.0);
}

#[test]
fn taylor_coefficients() {
    let prec = 128;
    let s = reciprocal_gamma_taylor(4, &ctx()).unwrap();
    assert!(s.coeff(0).contains_zero());
    assert!(s.coeff(1).overlaps(&ComplexBall::one()));
    let g = euler_gamma(prec);
    assert!(s.coeff(2).overlaps(&ComplexBall::from_real(&g)));
    let pi2_12 = pi(prec).sqr(prec).div_i64(12, prec);
    let c3 = g.sqr(prec).mul_2exp(-1).sub(&pi2_12, prec);
    assert!(s.coeff(3).overlaps(&ComplexBall::from_real(&c3)));
}
