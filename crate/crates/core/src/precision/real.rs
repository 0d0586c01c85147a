//! Real midpoint-radius balls and the elementary functions built on them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::consts;
use super::dyadic::Dyadic;
use super::mag::Mag;
use crate::error::{Error, Result};

/// The closed interval `[mid - rad, mid + rad]`.
#[derive(Clone, PartialEq, Default)]
pub struct RealBall {
    pub mid: Dyadic,
    pub rad: Mag,
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} +/- {:.3e}]",
            self.mid.to_sci_string(20),
            self.rad.to_f64()
        )
    }
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Mag) -> Self {
        Self { mid, rad }
    }

    pub fn exact(mid: Dyadic) -> Self {
        Self {
            mid,
            rad: Mag::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::exact(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::exact(Dyadic::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::exact(Dyadic::from_i64(v))
    }

    pub fn from_f64(v: f64) -> Self {
        Self::exact(Dyadic::from_f64(v))
    }

    pub fn from_int(v: BigInt) -> Self {
        Self::exact(Dyadic::from_int(v))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let (mid, rad) = Dyadic::from_rational(q, prec);
        Self { mid, rad }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn add_error(&self, err: Mag) -> Self {
        Self {
            mid: self.mid.clone(),
            rad: self.rad.add(&err),
        }
    }

    fn rounded(mid: Dyadic, rad: Mag, prec: u32) -> Self {
        let (m, e) = mid.round(prec);
        Self {
            mid: m,
            rad: rad.add(&e),
        }
    }

    /// Round the midpoint to `prec` bits, absorbing the error in the radius.
    pub fn round(&self, prec: u32) -> Self {
        Self::rounded(self.mid.clone(), self.rad, prec)
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: self.mid.neg(),
            rad: self.rad,
        }
    }

    pub fn abs(&self) -> Self {
        if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Self::rounded(self.mid.add(&other.mid), self.rad.add(&other.rad), prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        Self::rounded(self.mid.sub(&other.mid), self.rad.add(&other.rad), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let ma = Mag::from_dyadic(&self.mid);
        let mb = Mag::from_dyadic(&other.mid);
        let rad = ma
            .mul(&other.rad)
            .add(&mb.mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        Self::rounded(self.mid.mul(&other.mid), rad, prec)
    }

    pub fn sqr(&self, prec: u32) -> Self {
        self.mul(self, prec)
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        Self {
            mid: self.mid.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
        }
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Self {
        let rad = self.rad.mul_u64(k.unsigned_abs());
        Self::rounded(self.mid.mul_i64(k), rad, prec)
    }

    pub fn div_i64(&self, k: i64, prec: u32) -> Self {
        assert!(k != 0);
        let (q, err) = self.mid.div(&Dyadic::from_i64(k), prec);
        let rad = self
            .rad
            .div(&Mag::from_f64(k.unsigned_abs() as f64))
            .add(&err);
        Self { mid: q, rad }
    }

    /// Lower bound of `|x|` over the ball (zero if the ball contains 0).
    pub fn abs_lower(&self) -> Mag {
        Mag::from_dyadic_lower(&self.mid).sub_lower(&self.rad)
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_dyadic(&self.mid).add(&self.rad)
    }

    pub fn inv(&self, prec: u32) -> Result<Self> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return Err(Error::Domain("division by a ball containing zero".into()));
        }
        let (q, err) = Dyadic::one().div(&self.mid, prec);
        // |1/(m+h) - 1/m| <= r / (|m| (|m| - r))
        let mabs = Mag::from_dyadic_lower(&self.mid);
        let rad = if self.rad.is_zero() {
            err
        } else {
            self.rad.div(&mabs.mul_lower(&lo)).add(&err)
        };
        Ok(Self { mid: q, rad })
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        if other.is_exact() {
            if other.mid.is_zero() {
                return Err(Error::Domain("division by zero".into()));
            }
            let (q, err) = self.mid.div(&other.mid, prec);
            let rad = self.rad.div(&Mag::from_dyadic_lower(&other.mid)).add(&err);
            return Ok(Self { mid: q, rad });
        }
        let inv = other.inv(prec + 8)?;
        Ok(self.mul(&inv, prec))
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad.to_dyadic()
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    /// Certainly positive.
    pub fn is_positive(&self) -> bool {
        !self.mid.is_negative() && self.excludes_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && self.excludes_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad.to_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad.to_dyadic())
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.mid.sub(x).abs() <= self.rad.to_dyadic()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let d = (self.mid.to_rational() - q).abs();
        d <= self.rad.to_dyadic().to_rational()
    }

    pub fn contains_ball(&self, other: &Self) -> bool {
        self.mid.sub(&other.mid).abs().add(&other.rad.to_dyadic()) <= self.rad.to_dyadic()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.mid.sub(&other.mid).abs() <= self.rad.add(&other.rad).to_dyadic()
    }

    /// Certified `self < other`.
    pub fn lt(&self, other: &Self) -> bool {
        self.upper() < other.lower()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Relative accuracy in bits, `log2(|mid| / rad)`; infinite when exact.
    pub fn rel_accuracy_bits(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::INFINITY;
        }
        self.mid.log2_abs() - self.rad.log2()
    }

    pub fn pow_u64(&self, mut n: u64, prec: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let wp = prec + 2 * (64 - n.leading_zeros());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, wp);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr(wp);
            }
        }
        acc.round(prec)
    }

    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.mid.is_negative() && !self.contains_zero() {
            return Err(Error::Domain("sqrt of a negative ball".into()));
        }
        let lo = self.lower();
        if lo.is_negative() || lo.is_zero() {
            // ball touches 0: enclose [0, sqrt(upper)]
            let up = Mag::from_dyadic(&self.upper()).sqrt();
            let half = up.mul_2exp(-1);
            return Ok(Self {
                mid: half.to_dyadic(),
                rad: half,
            });
        }
        let (s, err) = self.mid.sqrt(prec);
        // |sqrt(m+h) - sqrt(m)| <= r / (2 sqrt(m - r))
        let rad = if self.rad.is_zero() {
            err
        } else {
            let den = Mag::from_dyadic_lower(&lo).sqrt_lower().mul_2exp(1);
            self.rad.div(&den).add(&err)
        };
        Ok(Self::rounded(s, rad, prec))
    }

    /// `e^x`.
    pub fn exp(&self, prec: u32) -> Self {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Self::one();
        }
        let mag = self.mid.mag_exp().max(self.rad.mag_exp()).max(0);
        let n_f = (self.mid.to_f64() / std::f64::consts::LN_2).round();
        assert!(n_f.abs() < 4.0e18, "exp argument out of range");
        let n = n_f as i64;
        let base_s = ((prec as f64).sqrt() * 0.5) as i64 + 2;
        let s = base_s + self.rad.mag_exp().max(-1) + 1;
        let wp = prec + 20 + 2 * s as u32 + mag as u32;
        let ln2 = consts::ln2(wp + 64);
        let t = self.sub(&ln2.mul_i64(n, wp + 64), wp);
        let y = t.mul_2exp(-s);
        let ymag = y.abs_upper();
        let exp_small = taylor_exp(&y, ymag, wp);
        let mut acc = exp_small;
        for _ in 0..s {
            acc = acc.sqr(wp);
        }
        acc.mul_2exp(n).round(prec)
    }

    /// Natural logarithm; the ball must be strictly positive.
    pub fn ln(&self, prec: u32) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain("log of a ball that is not positive".into()));
        }
        let p = ln_point(&self.mid, prec + 4);
        if self.rad.is_zero() {
            return Ok(p.round(prec));
        }
        // |ln(m+h) - ln(m)| <= r / (m - r)
        let lo = self.abs_lower();
        Ok(p.add_error(self.rad.div(&lo)).round(prec))
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self, prec: u32) -> (Self, Self) {
        let (s, c) = sin_cos_point(&self.mid, prec + 4);
        if self.rad.is_zero() {
            return (s.round(prec), c.round(prec));
        }
        (
            s.add_error(self.rad).round(prec),
            c.add_error(self.rad).round(prec),
        )
    }

    pub fn sin(&self, prec: u32) -> Self {
        self.sin_cos(prec).0
    }

    pub fn cos(&self, prec: u32) -> Self {
        self.sin_cos(prec).1
    }

    /// `(sinh x, cosh x)`.
    pub fn sinh_cosh(&self, prec: u32) -> (Self, Self) {
        let wp = prec + 10;
        let e = self.exp(wp);
        let ei = self.neg().exp(wp);
        let sh = e.sub(&ei, wp).mul_2exp(-1);
        let ch = e.add(&ei, wp).mul_2exp(-1);
        (sh.round(prec), ch.round(prec))
    }

    /// `atan2(y, x)` for point-exact or ball arguments not enclosing the origin.
    pub fn atan2(y: &Self, x: &Self, prec: u32) -> Result<Self> {
        let r_lo = Mag::from_dyadic_lower(&x.mid)
            .max(Mag::from_dyadic_lower(&y.mid))
            .sub_lower(&x.rad.max(y.rad));
        if r_lo.is_zero() {
            return Err(Error::Domain("atan2 of a ball near the origin".into()));
        }
        let p = atan2_point(&y.mid, &x.mid, prec + 4);
        let rad = x.rad.max(y.rad);
        if rad.is_zero() {
            return Ok(p.round(prec));
        }
        // the angle moves at most r * sqrt(2) / (|m| - r * sqrt(2)) over the box
        let box_r = rad.mul_2exp(1);
        let m_lo = hypot_lower(&x.mid, &y.mid).sub_lower(&box_r);
        if m_lo.is_zero() {
            return Err(Error::Domain("atan2 of a ball near the origin".into()));
        }
        Ok(p.add_error(box_r.div(&m_lo)).round(prec))
    }
}

/// Lower bound for `sqrt(x^2 + y^2)`.
pub(crate) fn hypot_lower(x: &Dyadic, y: &Dyadic) -> Mag {
    let s = x.mul(x).add(&y.mul(y));
    Mag::from_dyadic_lower(&s).sqrt_lower()
}

/// Upper bound for `sqrt(x^2 + y^2)`.
pub(crate) fn hypot_upper(x: &Dyadic, y: &Dyadic) -> Mag {
    if y.is_zero() {
        return Mag::from_dyadic(x);
    }
    if x.is_zero() {
        return Mag::from_dyadic(y);
    }
    let s = x.mul(x).add(&y.mul(y));
    Mag::from_dyadic(&s).sqrt()
}

/// Taylor series of `e^y` for `|y| <= ymag <= 1/2` with the truncation tail added.
fn taylor_exp(y: &RealBall, ymag: Mag, wp: u32) -> RealBall {
    assert!(ymag <= Mag::pow2(-1), "exp argument not reduced");
    let lg = ymag.log2().max(-(wp as f64) - 8.0);
    // find K with |y|^K / K! < 2^-(wp+4)
    let mut k = 1u64;
    let mut log_term = lg;
    while log_term > -(wp as f64) - 4.0 {
        k += 1;
        log_term += lg - (k as f64).log2();
    }
    let mut acc = RealBall::one();
    for j in (1..=k).rev() {
        acc = acc.mul(y, wp).div_i64(j as i64, wp);
        acc = acc.add(&RealBall::one(), wp);
    }
    // tail sum_{j>K} |y|^j/j! <= 2 |y|^(K+1) / (K+1)!
    let tail = Mag::pow2((log_term + lg).floor() as i64 + 2);
    acc.add_error(tail)
}

/// `ln m` for an exact positive dyadic.
fn ln_point(m: &Dyadic, prec: u32) -> RealBall {
    if *m == Dyadic::one() {
        return RealBall::zero();
    }
    let (f, e) = m.to_f64_scaled();
    let y0 = f.ln() + e as f64 * std::f64::consts::LN_2;
    let mut y = Dyadic::from_f64(y0);
    let scale = y.mag_exp().max(0) as u32;
    let target = prec + 16;
    let mut cur = 50u32;
    while cur < target {
        cur = (2 * cur).min(target);
        let v =
            RealBall::exact(m.clone()).mul(&RealBall::exact(y.neg()).exp(cur + scale + 8), cur + 8);
        y = y.add(&v.mid.sub(&Dyadic::one())).round(cur + scale + 8).0;
    }
    let wp = prec + scale + 16;
    let v = RealBall::exact(m.clone()).mul(&RealBall::exact(y.neg()).exp(wp), wp);
    let d = v.sub(&RealBall::one(), wp);
    let dm = d.abs_upper();
    assert!(dm < Mag::pow2(-1), "ln refinement failed to converge");
    // |ln(1+d) - d| <= |d|^2
    RealBall::exact(y).add(&d, wp).add_error(dm.mul(&dm))
}

/// `(sin x, cos x)` for an exact dyadic.
fn sin_cos_point(x: &Dyadic, prec: u32) -> (RealBall, RealBall) {
    if x.is_zero() {
        return (RealBall::zero(), RealBall::one());
    }
    let mag = x.mag_exp().max(0) as u32;
    let s = ((prec as f64).sqrt() * 0.5) as i64 + 2;
    let wp = prec + 24 + 3 * s as u32;
    // quadrant reduction with enough bits of pi to cover |x|
    let half_pi = consts::pi(wp + mag + 16).mul_2exp(-1);
    let q = RealBall::exact(x.clone())
        .div(&half_pi, mag + 16)
        .expect("pi is nonzero")
        .mid
        .round_to_int();
    let q_mod4 = (&q % BigInt::from(4) + BigInt::from(4)) % BigInt::from(4);
    let q_mod4 = q_mod4.to_u32().unwrap();
    let t = RealBall::exact(x.clone()).sub(
        &half_pi.mul(&RealBall::from_int(q), wp + mag + 16),
        wp + mag + 16,
    );
    let t = t.round(wp);
    let y = t.mul_2exp(-s);
    let ymag = y.abs_upper();
    let (mut sn, mut cs) = taylor_sin_cos(&y, ymag, wp);
    for _ in 0..s {
        let s2 = sn.mul(&cs, wp).mul_2exp(1);
        let c2 = cs.sqr(wp).sub(&sn.sqr(wp), wp);
        sn = s2;
        cs = c2;
    }
    let (sn, cs) = match q_mod4 {
        0 => (sn, cs),
        1 => (cs, sn.neg()),
        2 => (sn.neg(), cs.neg()),
        _ => (cs.neg(), sn),
    };
    (sn.round(prec), cs.round(prec))
}

fn taylor_sin_cos(y: &RealBall, ymag: Mag, wp: u32) -> (RealBall, RealBall) {
    assert!(ymag <= Mag::pow2(-1), "sin/cos argument not reduced");
    let lg = ymag.log2().max(-(wp as f64) - 8.0);
    let mut k = 1u64;
    let mut log_term = lg;
    while log_term > -(wp as f64) - 4.0 {
        k += 1;
        log_term += lg - (k as f64).log2();
    }
    let y2 = y.sqr(wp);
    let n = k as i64 / 2 + 1;
    // sin y = y (1 - y^2/(2*3) (1 - y^2/(4*5) (...)))
    let mut sn = RealBall::one();
    for i in (1..=n).rev() {
        sn = RealBall::one().sub(&sn.mul(&y2, wp).div_i64(2 * i * (2 * i + 1), wp), wp);
    }
    let sn = sn.mul(y, wp);
    // cos y = 1 - y^2/(1*2) (1 - y^2/(3*4) (...))
    let mut cs = RealBall::one();
    for i in (1..=n).rev() {
        cs = RealBall::one().sub(&cs.mul(&y2, wp).div_i64((2 * i - 1) * (2 * i), wp), wp);
    }
    // alternating tails are bounded by the first omitted term
    let tail = Mag::pow2(log_term.floor() as i64 + 1);
    (sn.add_error(tail), cs.add_error(tail))
}

/// `atan2(y, x)` for exact dyadics, not both zero.
fn atan2_point(y: &Dyadic, x: &Dyadic, prec: u32) -> RealBall {
    if y.is_zero() {
        return if x.is_negative() {
            consts::pi(prec)
        } else {
            RealBall::zero()
        };
    }
    // rescale to floats for a starting guess
    let e = x.mag_exp().max(y.mag_exp());
    let xf = x.mul_2exp(-e).to_f64();
    let yf = y.mul_2exp(-e).to_f64();
    let mut theta = Dyadic::from_f64(yf.atan2(xf));
    let target = prec + 16;
    let mut cur = 50u32;
    let rotate = |theta: &Dyadic, wp: u32| -> (RealBall, RealBall) {
        let (s, c) = sin_cos_point(theta, wp);
        let xb = RealBall::exact(x.mul_2exp(-e));
        let yb = RealBall::exact(y.mul_2exp(-e));
        let a = xb.mul(&c, wp).add(&yb.mul(&s, wp), wp);
        let b = yb.mul(&c, wp).sub(&xb.mul(&s, wp), wp);
        (a, b)
    };
    while cur < target {
        cur = (2 * cur).min(target);
        let (a, b) = rotate(&theta, cur + 8);
        let corr = b.div(&a, cur + 8).expect("rotated x is positive");
        theta = theta.add(&corr.mid).round(cur + 8).0;
    }
    let wp = prec + 16;
    let (a, b) = rotate(&theta, wp + 8);
    let t = b.div(&a, wp).expect("rotated x is positive");
    let tm = t.abs_upper();
    assert!(tm < Mag::pow2(-1), "atan refinement failed to converge");
    // |atan(t) - t| <= |t|^3 / 3
    RealBall::exact(theta)
        .add(&t, wp)
        .add_error(tm.mul(&tm).mul(&tm))
}
