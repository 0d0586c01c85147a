//! Exact binary floating-point numbers `man * 2^exp` with explicit rounding.
//!
//! Every arithmetic result is exact unless the caller asks for rounding, in
//! which case the rounding error is returned as a [`Mag`] upper bound so that
//! ball arithmetic can absorb it into the radius.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

/// `man * 2^exp`; zero is stored as `(0, 0)` and nonzero mantissas are odd.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Self::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Self { man, exp }
        } else {
            Self {
                man: man >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_int(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    /// 2^e.
    pub fn pow2(e: i64) -> Self {
        Self {
            man: BigInt::one(),
            exp: e,
        }
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 {v}");
        if v == 0.0 {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if exp_bits == 0 {
            (frac as i64, -1074)
        } else {
            ((frac | (1u64 << 52)) as i64, exp_bits - 1075)
        };
        Self::new(BigInt::from(sign * man), exp)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `e` with `|self| < 2^e` (for zero, `i64::MIN / 4`).
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exp >= 0
    }

    pub fn neg(&self) -> Self {
        Self {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // product of odd mantissas is odd
        Self {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self::new(&self.man * k, self.exp)
    }

    /// Round to nearest with at most `prec` significant bits.
    /// Returns the rounded value and an upper bound on the rounding error.
    pub fn round(&self, prec: u32) -> (Self, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - prec as u64;
        let half = BigInt::one() << (shift - 1) as usize;
        // arithmetic shift on BigInt floors, so adding half gives round-half-up
        let man = (&self.man + half) >> shift as usize;
        let exp = self.exp + shift as i64;
        (Self::new(man, exp), Mag::pow2(exp - 1))
    }

    /// Round toward -inf (`up = false`) or +inf (`up = true`).
    pub fn round_dir(&self, prec: u32, up: bool) -> Self {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let exp = self.exp + shift as i64;
        let floor = &self.man >> shift as usize;
        let man = if up { floor + 1 } else { floor };
        Self::new(man, exp)
    }

    /// Truncated quotient with at least `prec` significant bits and its error bound.
    pub fn div(&self, other: &Self, prec: u32) -> (Self, Mag) {
        assert!(!other.is_zero(), "Dyadic division by zero");
        if self.is_zero() {
            return (Self::zero(), Mag::zero());
        }
        let shift = (prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_rem(&other.man);
        let exp = self.exp - other.exp - shift;
        let err = if r.is_zero() {
            Mag::zero()
        } else {
            Mag::pow2(exp)
        };
        let (rounded, e2) = Self::new(q, exp).round(prec);
        (rounded, err.add(&e2))
    }

    /// Floor of the square root with at least `prec` bits, and its error bound.
    pub fn sqrt(&self, prec: u32) -> (Self, Mag) {
        assert!(!self.is_negative(), "sqrt of negative Dyadic");
        if self.is_zero() {
            return (Self::zero(), Mag::zero());
        }
        let mut shift = (2 * prec as i64 + 4 - self.man.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.man << shift as usize;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let exp = (self.exp - shift) / 2;
        let err = if exact { Mag::zero() } else { Mag::pow2(exp) };
        (Self::new(r, exp), err)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            &self.man >> (-self.exp) as usize
        }
    }

    /// Nearest integer, ties toward +inf.
    pub fn round_to_int(&self) -> BigInt {
        self.add(&Self::pow2(-1)).floor()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest dyadic with `prec` bits to a rational, with error bound.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Self, Mag) {
        let num = Self::from_int(q.numer().clone());
        let den = Self::from_int(q.denom().clone());
        if q.denom().is_one() {
            return num.round(prec);
        }
        num.div(&den, prec)
    }

    /// `(f, e)` with `self = f * 2^e` approximately and `0.5 <= |f| < 1`.
    pub fn to_f64_scaled(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let bits = self.man.bits() as i64;
        let top = if bits > 60 {
            &self.man >> (bits - 60) as usize
        } else {
            self.man.clone() << (60 - bits) as usize
        };
        let f = top.to_f64().unwrap_or(0.0) / 2f64.powi(60);
        (f, self.exp + bits)
    }

    pub fn to_f64(&self) -> f64 {
        let (f, e) = self.to_f64_scaled();
        if e > 1100 {
            return f * f64::INFINITY;
        }
        if e < -1100 {
            return 0.0;
        }
        f * 2f64.powi(e as i32)
    }

    /// `log2 |self|` as a float (`-inf` for zero).
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (f, e) = self.to_f64_scaled();
        f.abs().log2() + e as f64
    }

    /// Decimal scientific notation with `digits` significant digits (rounded).
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let q = self.to_rational();
        rational_to_sci(&q, digits)
    }
}

/// Decimal scientific rendering of an exact rational.
pub fn rational_to_sci(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let digits = digits.max(1);
    // estimate decimal exponent from bit sizes, then correct
    let lg = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut e10 = lg.floor() as i64;
    let ten = BigInt::from(10);
    let scaled = |e: i64| -> BigRational {
        if e >= 0 {
            &a / BigRational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            &a * BigRational::from_integer(num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    let mut s = scaled(e10);
    while s >= BigRational::from_integer(ten.clone()) {
        e10 += 1;
        s = scaled(e10);
    }
    while s < BigRational::one() {
        e10 -= 1;
        s = scaled(e10);
    }
    let factor = num_traits::pow(ten.clone(), digits - 1);
    let t = s * BigRational::from_integer(factor);
    let mut m = (t + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    if m.to_string().len() > digits {
        m /= &ten;
        e10 += 1;
    }
    let ms = m.to_string();
    let (head, tail) = ms.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes first by exponent size
        let (ea, eb) = (self.mag_exp(), other.mag_exp());
        if ea != eb {
            let mag = ea.cmp(&eb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}
