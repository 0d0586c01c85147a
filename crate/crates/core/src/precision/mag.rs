//! Low-precision nonnegative magnitudes used for ball radii.
//!
//! A `Mag` holds a 32-bit mantissa and a wide exponent. The `add`, `mul` and
//! `div` methods round up, so a `Mag` computed from upper bounds is again an
//! upper bound. The `*_lower` variants round down.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dyadic::Dyadic;

const MAG_BITS: u32 = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{:.3}", self.log2())
    }
}

impl Mag {
    pub const fn zero() -> Self {
        Self { man: 0, exp: 0 }
    }

    pub fn pow2(e: i64) -> Self {
        Self::from_parts(1, e, true)
    }

    fn from_parts(man: u128, exp: i64, up: bool) -> Self {
        if man == 0 {
            return Self::zero();
        }
        let bits = 128 - man.leading_zeros();
        if bits > MAG_BITS {
            let shift = bits - MAG_BITS;
            let mut m = man >> shift;
            if up && (m << shift) != man {
                m += 1;
            }
            // m may have overflowed into MAG_BITS + 1 bits; renormalize once
            Self::from_parts_small(m as u64, exp + shift as i64)
        } else {
            Self::from_parts_small(man as u64, exp)
        }
    }

    fn from_parts_small(man: u64, exp: i64) -> Self {
        if man == 0 {
            return Self::zero();
        }
        let bits = 64 - man.leading_zeros();
        if bits > MAG_BITS {
            // only reachable via a carry, where the dropped bit is zero
            let shift = bits - MAG_BITS;
            Self {
                man: man >> shift,
                exp: exp + shift as i64,
            }
        } else {
            let shift = MAG_BITS - bits;
            Self {
                man: man << shift,
                exp: exp - shift as i64,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Upper bound on `|x|`.
    pub fn from_dyadic(x: &Dyadic) -> Self {
        Self::from_dyadic_dir(x, true)
    }

    /// Lower bound on `|x|`.
    pub fn from_dyadic_lower(x: &Dyadic) -> Self {
        Self::from_dyadic_dir(x, false)
    }

    fn from_dyadic_dir(x: &Dyadic, up: bool) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let m = x.mantissa().abs();
        let bits = m.bits();
        if bits <= 64 {
            Self::from_parts(m.to_u64().unwrap() as u128, x.exponent(), up)
        } else {
            let shift = bits - 64;
            let top: BigInt = &m >> shift as usize;
            let mut t = top.to_u64().unwrap() as u128;
            if up {
                // anything below the kept bits (mantissa is odd) makes this inexact
                t += 1;
            }
            Self::from_parts(t, x.exponent() + shift as i64, up)
        }
    }

    /// Upper bound on `|x|` for a finite float.
    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        Self::from_dyadic(&Dyadic::from_f64(x.abs()))
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp + MAG_BITS as i64;
        if e > 1100 {
            return f64::INFINITY;
        }
        if e < -1100 {
            return 0.0;
        }
        self.man as f64 * 2f64.powi(self.exp as i32)
    }

    pub fn log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }

    /// Smallest `e` with `self < 2^e`.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + MAG_BITS as i64
        }
    }

    fn add_dir(&self, other: &Self, up: bool) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let d = hi.exp - lo.exp;
        if d > 100 {
            // lo is below the last bit of hi
            return if up {
                Self::from_parts((hi.man as u128) * 2 + 1, hi.exp - 1, true)
            } else {
                *hi
            };
        }
        let a = (hi.man as u128) << d.min(64);
        if d <= 64 {
            Self::from_parts(a + lo.man as u128, lo.exp, up)
        } else {
            let shift = d - 64;
            let mut l = (lo.man as u128) >> shift;
            if up {
                l += 1;
            }
            Self::from_parts(a + l, lo.exp + shift, up)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_dir(other, true)
    }

    pub fn add_lower(&self, other: &Self) -> Self {
        self.add_dir(other, false)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.man as u128 * other.man as u128,
            self.exp + other.exp,
            true,
        )
    }

    pub fn mul_lower(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.man as u128 * other.man as u128,
            self.exp + other.exp,
            false,
        )
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self {
            man: self.man,
            exp: self.exp + k,
        }
    }

    /// Upper bound of `self / other`; panics when `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let num = (self.man as u128) << 64;
        let q = num / other.man as u128;
        let r = num % other.man as u128;
        let q = if r != 0 { q + 1 } else { q };
        Self::from_parts(q, self.exp - other.exp - 64, true)
    }

    pub fn div_lower(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let num = (self.man as u128) << 64;
        Self::from_parts(num / other.man as u128, self.exp - other.exp - 64, false)
    }

    /// Lower bound on `max(self - other, 0)`.
    pub fn sub_lower(&self, other: &Self) -> Self {
        if other.is_zero() {
            return *self;
        }
        if *self <= *other {
            return Self::zero();
        }
        let d = self.to_dyadic().sub(&other.to_dyadic());
        Self::from_dyadic_lower(&d)
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        self.mul(&Self::from_parts(k as u128, 0, true))
    }

    /// Upper bound of the square root.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let (s, err) = self.to_dyadic().sqrt(40);
        Self::from_dyadic(&s).add(&err)
    }

    /// Lower bound of the square root.
    pub fn sqrt_lower(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let (s, _) = self.to_dyadic().sqrt(40);
        Self::from_dyadic_lower(&s)
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// `|x| < self` exactly.
    pub fn gt_abs(&self, x: &Dyadic) -> bool {
        x.abs() < self.to_dyadic()
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // normalized mantissas share a bit length, so exponents decide first
        self.exp.cmp(&other.exp).then(self.man.cmp(&other.man))
    }
}

impl Zero for Mag {
    fn zero() -> Self {
        Mag::zero()
    }

    fn is_zero(&self) -> bool {
        self.man == 0
    }
}

impl std::ops::Add for Mag {
    type Output = Mag;

    fn add(self, rhs: Mag) -> Mag {
        Mag::add(&self, &rhs)
    }
}
