//! Complex midpoint-radius balls with a single Euclidean radius.

use std::fmt;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::real::{hypot_lower, hypot_upper, RealBall};
use crate::error::{Error, Result};

/// The closed disk `{ z : |z - (re + i im)| <= rad }`.
#[derive(Clone, PartialEq, Default)]
pub struct ComplexBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Mag,
}

/// Operations accepted by [`ComplexBall::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallOp {
    Add,
    Sub,
    Mul,
    Div,
    Exp,
    Log,
    Sin,
    Sqrt,
    Pow,
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i +/- {:.3e})",
            self.re.to_sci_string(18),
            self.im.to_sci_string(18),
            self.rad.to_f64()
        )
    }
}

impl Serialize for ComplexBall {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ComplexBall", 3)?;
        st.serialize_field("re", &self.re.to_sci_string(40))?;
        st.serialize_field("im", &self.im.to_sci_string(40))?;
        st.serialize_field("rad", &self.rad.to_dyadic().to_sci_string(6))?;
        st.end()
    }
}

impl Serialize for RealBall {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RealBall", 2)?;
        st.serialize_field("mid", &self.mid.to_sci_string(40))?;
        st.serialize_field("rad", &self.rad.to_dyadic().to_sci_string(6))?;
        st.end()
    }
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Mag) -> Self {
        Self { re, im, rad }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        Self {
            re,
            im,
            rad: Mag::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn i() -> Self {
        Self::exact(Dyadic::zero(), Dyadic::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::exact(Dyadic::from_i64(v), Dyadic::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self::exact(Dyadic::from_f64(re), Dyadic::from_f64(im))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_real(&RealBall::from_rational(q, prec))
    }

    pub fn from_real(x: &RealBall) -> Self {
        Self {
            re: x.mid.clone(),
            im: Dyadic::zero(),
            rad: x.rad,
        }
    }

    /// Enclose the rectangle `re x im` in a disk.
    pub fn from_parts(re: &RealBall, im: &RealBall) -> Self {
        Self {
            re: re.mid.clone(),
            im: im.mid.clone(),
            rad: re.rad.add(&im.rad),
        }
    }

    pub fn real_part(&self) -> RealBall {
        RealBall::new(self.re.clone(), self.rad)
    }

    pub fn imag_part(&self) -> RealBall {
        RealBall::new(self.im.clone(), self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn mid(&self) -> Self {
        Self::exact(self.re.clone(), self.im.clone())
    }

    pub fn add_error(&self, err: Mag) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: self.rad.add(&err),
        }
    }

    pub fn with_radius(&self, rad: Mag) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.clone(),
            rad,
        }
    }

    fn rounded(re: Dyadic, im: Dyadic, rad: Mag, prec: u32) -> Self {
        let (re, e1) = re.round(prec);
        let (im, e2) = im.round(prec);
        Self {
            re,
            im,
            rad: rad.add(&e1).add(&e2),
        }
    }

    pub fn round(&self, prec: u32) -> Self {
        Self::rounded(self.re.clone(), self.im.clone(), self.rad, prec)
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad,
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Self::rounded(
            self.re.add(&other.re),
            self.im.add(&other.im),
            self.rad.add(&other.rad),
            prec,
        )
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        Self::rounded(
            self.re.sub(&other.re),
            self.im.sub(&other.im),
            self.rad.add(&other.rad),
            prec,
        )
    }

    /// Upper bound of `|mid|`.
    pub fn mid_abs_upper(&self) -> Mag {
        hypot_upper(&self.re, &self.im)
    }

    /// Lower bound of `|mid|`.
    pub fn mid_abs_lower(&self) -> Mag {
        hypot_lower(&self.re, &self.im)
    }

    /// Upper bound of `|z|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_abs_upper().add(&self.rad)
    }

    /// Lower bound of `|z|` over the ball (zero when it contains 0).
    pub fn abs_lower(&self) -> Mag {
        self.mid_abs_lower().sub_lower(&self.rad)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            Mag::zero()
        } else {
            self.mid_abs_upper()
                .mul(&other.rad)
                .add(&other.mid_abs_upper().mul(&self.rad))
                .add(&self.rad.mul(&other.rad))
        };
        Self::rounded(re, im, rad, prec)
    }

    pub fn sqr(&self, prec: u32) -> Self {
        self.mul(self, prec)
    }

    pub fn mul_real(&self, x: &RealBall, prec: u32) -> Self {
        let re = self.re.mul(&x.mid);
        let im = self.im.mul(&x.mid);
        let rad = self
            .mid_abs_upper()
            .mul(&x.rad)
            .add(&Mag::from_dyadic(&x.mid).mul(&self.rad))
            .add(&self.rad.mul(&x.rad));
        Self::rounded(re, im, rad, prec)
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Self {
        Self::rounded(
            self.re.mul_i64(k),
            self.im.mul_i64(k),
            self.rad.mul_u64(k.unsigned_abs()),
            prec,
        )
    }

    pub fn div_i64(&self, k: i64, prec: u32) -> Self {
        let re = RealBall::exact(self.re.clone()).div_i64(k, prec);
        let im = RealBall::exact(self.im.clone()).div_i64(k, prec);
        let rad = self.rad.div(&Mag::from_f64(k.unsigned_abs() as f64));
        Self {
            re: re.mid,
            im: im.mid,
            rad: rad.add(&re.rad).add(&im.rad),
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        Self {
            re: self.re.mul_2exp(k),
            im: self.im.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
        }
    }

    pub fn add_real(&self, x: &RealBall, prec: u32) -> Self {
        self.add(&Self::from_real(x), prec)
    }

    pub fn add_i64(&self, k: i64, prec: u32) -> Self {
        Self::rounded(
            self.re.add(&Dyadic::from_i64(k)),
            self.im.clone(),
            self.rad,
            prec,
        )
    }

    pub fn inv(&self, prec: u32) -> Result<Self> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return Err(Error::Domain("inverse of a ball containing zero".into()));
        }
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let (re, e1) = self.re.div(&n2, prec);
        let (im, e2) = self.im.neg().div(&n2, prec);
        let mut rad = e1.add(&e2);
        if !self.rad.is_zero() {
            // |1/(m+h) - 1/m| <= r / (|m| (|m| - r))
            rad = rad.add(&self.rad.div(&self.mid_abs_lower().mul_lower(&lo)));
        }
        Ok(Self { re, im, rad })
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        if other.is_exact() && other.is_real() {
            if other.re.is_zero() {
                return Err(Error::Domain("division by zero".into()));
            }
            let d = RealBall::exact(other.re.clone());
            let re = RealBall::new(self.re.clone(), Mag::zero()).div(&d, prec)?;
            let im = RealBall::new(self.im.clone(), Mag::zero()).div(&d, prec)?;
            let rad = self.rad.div(&Mag::from_dyadic_lower(&other.re));
            return Ok(Self {
                re: re.mid,
                im: im.mid,
                rad: rad.add(&re.rad).add(&im.rad),
            });
        }
        let inv = other.inv(prec + 8)?;
        Ok(self.mul(&inv, prec))
    }

    pub fn div_real(&self, x: &RealBall, prec: u32) -> Result<Self> {
        self.div(&Self::from_real(x), prec)
    }

    /// `|mid|^2 <= rad^2`.
    pub fn contains_zero(&self) -> bool {
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let r = self.rad.to_dyadic();
        n2 <= r.mul(&r)
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        let dx = self.re.sub(re);
        let dy = self.im.sub(im);
        let r = self.rad.to_dyadic();
        dx.mul(&dx).add(&dy.mul(&dy)) <= r.mul(&r)
    }

    pub fn contains_rational(&self, re: &BigRational, im: &BigRational) -> bool {
        let dx = self.re.to_rational() - re;
        let dy = self.im.to_rational() - im;
        let r = self.rad.to_dyadic().to_rational();
        &dx * &dx + &dy * &dy <= &r * &r
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        let dx = self.re.sub(&other.re);
        let dy = self.im.sub(&other.im);
        let r = self.rad.add(&other.rad).to_dyadic();
        dx.mul(&dx).add(&dy.mul(&dy)) <= r.mul(&r)
    }

    pub fn contains_ball(&self, other: &Self) -> bool {
        if other.rad > self.rad {
            return false;
        }
        let dx = self.re.sub(&other.re);
        let dy = self.im.sub(&other.im);
        let r = self.rad.to_dyadic().sub(&other.rad.to_dyadic());
        dx.mul(&dx).add(&dy.mul(&dy)) <= r.mul(&r)
    }

    /// The ball modulus `|z|` as a real ball.
    pub fn abs(&self, prec: u32) -> RealBall {
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let s = RealBall::exact(n2).sqrt(prec).expect("nonnegative");
        s.add_error(self.rad)
    }

    /// Approximate argument of the midpoint, safe for huge or tiny magnitudes.
    pub fn arg_f64(&self) -> f64 {
        let e = self.re.mag_exp().max(self.im.mag_exp());
        self.im
            .mul_2exp(-e)
            .to_f64()
            .atan2(self.re.mul_2exp(-e).to_f64())
    }

    /// Approximate `log2 |mid|`.
    pub fn log2_abs_f64(&self) -> f64 {
        let e = self.re.mag_exp().max(self.im.mag_exp());
        if self.re.is_zero() && self.im.is_zero() {
            return f64::NEG_INFINITY;
        }
        let x = self.re.mul_2exp(-e).to_f64();
        let y = self.im.mul_2exp(-e).to_f64();
        x.hypot(y).log2() + e as f64
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn exp(&self, prec: u32) -> Self {
        let wp = prec + 8;
        let ex = RealBall::exact(self.re.clone()).exp(wp);
        let (s, c) = RealBall::exact(self.im.clone()).sin_cos(wp);
        let val = Self::from_parts(&ex.mul(&c, wp), &ex.mul(&s, wp));
        if self.rad.is_zero() {
            return val.round(prec);
        }
        // |e^(z+h) - e^z| <= e^x (e^r - 1)
        let r = self.rad;
        let growth = if r <= Mag::pow2(0) {
            r.mul(&r.add(&Mag::pow2(0)))
        } else {
            RealBall::new(r.to_dyadic(), Mag::zero())
                .exp(32)
                .abs_upper()
        };
        val.add_error(ex.abs_upper().mul(&growth)).round(prec)
    }

    /// Principal logarithm; the ball must avoid the closed negative real axis.
    pub fn log(&self, prec: u32) -> Result<Self> {
        if self.touches_branch_cut() {
            return Err(Error::Domain(
                "log of a ball meeting the closed negative real axis".into(),
            ));
        }
        let wp = prec + 8;
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ln_abs = RealBall::exact(n2).ln(wp)?.mul_2exp(-1);
        let arg = RealBall::atan2(
            &RealBall::exact(self.im.clone()),
            &RealBall::exact(self.re.clone()),
            wp,
        )?;
        let val = Self::from_parts(&ln_abs, &arg);
        if self.rad.is_zero() {
            return Ok(val.round(prec));
        }
        let lo = self.abs_lower();
        Ok(val.add_error(self.rad.div(&lo)).round(prec))
    }

    /// Whether the ball meets `(-inf, 0]` (exact points on the negative axis count).
    pub fn touches_branch_cut(&self) -> bool {
        if self.re.is_negative() || self.re.is_zero() {
            self.im.abs() <= self.rad.to_dyadic()
        } else {
            self.contains_zero()
        }
    }

    pub fn sin(&self, prec: u32) -> Self {
        let wp = prec + 8;
        let (sx, cx) = RealBall::exact(self.re.clone()).sin_cos(wp);
        let (shy, chy) = RealBall::exact(self.im.clone()).sinh_cosh(wp);
        let val = Self::from_parts(&sx.mul(&chy, wp), &cx.mul(&shy, wp));
        if self.rad.is_zero() {
            return val.round(prec);
        }
        val.add_error(self.rad.mul(&self.cosh_im_bound()))
            .round(prec)
    }

    pub fn cos(&self, prec: u32) -> Self {
        let wp = prec + 8;
        let (sx, cx) = RealBall::exact(self.re.clone()).sin_cos(wp);
        let (shy, chy) = RealBall::exact(self.im.clone()).sinh_cosh(wp);
        let val = Self::from_parts(&cx.mul(&chy, wp), &sx.mul(&shy, wp).neg());
        if self.rad.is_zero() {
            return val.round(prec);
        }
        val.add_error(self.rad.mul(&self.cosh_im_bound()))
            .round(prec)
    }

    /// Upper bound of `e^(|Im z| + r)`, which dominates `|sin'|` and `|cos'|` on the ball.
    fn cosh_im_bound(&self) -> Mag {
        let t = self.im.abs().add(&self.rad.to_dyadic());
        RealBall::exact(t).exp(32).abs_upper()
    }

    /// Principal square root; ball inputs must avoid the negative real axis.
    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if !self.rad.is_zero() && self.touches_branch_cut() {
            return Err(Error::Domain(
                "sqrt of a ball meeting the closed negative real axis".into(),
            ));
        }
        let wp = prec + 8;
        if self.re.is_zero() && self.im.is_zero() {
            return Ok(Self::zero());
        }
        let x = RealBall::exact(self.re.clone());
        let y = RealBall::exact(self.im.clone());
        let modulus = self.mid().abs(wp);
        let val = if !self.re.is_negative() {
            let t = modulus.add(&x, wp).mul_2exp(-1).sqrt(wp)?;
            let im = y.div(&t.mul_2exp(1), wp)?;
            Self::from_parts(&t, &im)
        } else {
            let t = modulus.sub(&x, wp).mul_2exp(-1).sqrt(wp)?;
            let re = y.abs().div(&t.mul_2exp(1), wp)?;
            let im = if self.im.is_negative() { t.neg() } else { t };
            Self::from_parts(&re, &im)
        };
        if self.rad.is_zero() {
            return Ok(val.round(prec));
        }
        // |sqrt(z+h) - sqrt(z)| <= r / (2 sqrt(|z| - r))
        let den = self.abs_lower().sqrt_lower().mul_2exp(1);
        Ok(val.add_error(self.rad.div(&den)).round(prec))
    }

    /// `self^other = exp(other * log(self))`.
    pub fn pow(&self, other: &Self, prec: u32) -> Result<Self> {
        let wp = prec + 16;
        let l = self.log(wp)?;
        Ok(other.mul(&l, wp).exp(prec))
    }

    /// Dispatch one of the supported operations; binary operations require `b`.
    pub fn apply(op: BallOp, a: &Self, b: Option<&Self>, prec: u32) -> Result<Self> {
        let need_b =
            || b.ok_or_else(|| Error::InvalidParameters(format!("{op:?} needs two operands")));
        match op {
            BallOp::Add => Ok(a.add(need_b()?, prec)),
            BallOp::Sub => Ok(a.sub(need_b()?, prec)),
            BallOp::Mul => Ok(a.mul(need_b()?, prec)),
            BallOp::Div => a.div(need_b()?, prec),
            BallOp::Exp => Ok(a.exp(prec)),
            BallOp::Log => a.log(prec),
            BallOp::Sin => Ok(a.sin(prec)),
            BallOp::Sqrt => a.sqrt(prec),
            BallOp::Pow => a.pow(need_b()?, prec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::consts;

    fn approx(z: &ComplexBall, re: f64, im: f64, tol: f64) {
        let (a, b) = z.to_f64_pair();
        assert!(
            (a - re).abs() <= tol && (b - im).abs() <= tol,
            "{z:?} vs {re}+{im}i"
        );
    }

    #[test]
    fn identity_and_exp_zero() {
        let one = ComplexBall::one();
        let p = ComplexBall::apply(BallOp::Mul, &one, Some(&one), 128).unwrap();
        assert!(p.contains_point(&Dyadic::one(), &Dyadic::zero()));
        assert!(p.rad <= Mag::pow2(-127));
        let e = ComplexBall::zero().exp(128);
        assert!(e.contains_point(&Dyadic::one(), &Dyadic::zero()));
        assert!(e.rad <= Mag::pow2(1 - 128));
    }

    #[test]
    fn sin_of_pi_ball() {
        let bits = 128;
        let pi = ComplexBall::from_real(&consts::pi(bits));
        let s = pi.sin(bits);
        assert!(s.contains_zero());
        assert!(s.rad <= Mag::pow2(-100), "{s:?}");
    }

    #[test]
    fn elementary_values() {
        let z = ComplexBall::from_f64(0.3, 0.7);
        let e = z.exp(128);
        let ex = 0.3f64.exp();
        approx(&e, ex * 0.7f64.cos(), ex * 0.7f64.sin(), 1e-15);
        let l = z.log(128).unwrap();
        approx(&l, 0.3f64.hypot(0.7).ln(), 0.7f64.atan2(0.3), 1e-15);
        let back = l.exp(128);
        assert!(back.overlaps(&z));
        let s = z.sqrt(128).unwrap();
        assert!(s.sqr(128).overlaps(&z));
        let neg = ComplexBall::from_f64(-4.0, 0.0).sqrt(64).unwrap();
        approx(&neg, 0.0, 2.0, 1e-15);
        assert!(ComplexBall::from_f64(-1.0, 0.0).log(64).is_err());
        assert!(ComplexBall::zero().inv(64).is_err());
    }

    #[test]
    fn division_and_pow() {
        let a = ComplexBall::from_f64(1.0, 2.0);
        let b = ComplexBall::from_f64(3.0, -1.0);
        let q = a.div(&b, 128).unwrap();
        assert!(q.mul(&b, 128).overlaps(&a));
        let p = ComplexBall::from_i64(2)
            .pow(&ComplexBall::from_i64(10), 128)
            .unwrap();
        assert!(p.contains_point(&Dyadic::from_i64(1024), &Dyadic::zero()));
    }

    #[test]
    fn ball_inputs_enclose_perturbed_points() {
        let z = ComplexBall::new(
            Dyadic::from_f64(0.4),
            Dyadic::from_f64(-1.1),
            Mag::from_f64(0.01),
        );
        let shifted = ComplexBall::from_f64(0.4 + 0.006, -1.1 - 0.007);
        for op in [BallOp::Exp, BallOp::Log, BallOp::Sin, BallOp::Sqrt] {
            let big = ComplexBall::apply(op, &z, None, 96).unwrap();
            let pt = ComplexBall::apply(op, &shifted, None, 96).unwrap();
            assert!(big.contains_ball(&pt), "{op:?}");
        }
    }
}
