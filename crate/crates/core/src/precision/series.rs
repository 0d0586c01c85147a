//! Truncated power series with complex ball coefficients.

use serde::Serialize;

use super::complex::ComplexBall;
use crate::error::{Error, Result};

/// `sum_{k < order} coeffs[k] z^k`; every operation truncates at `order`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSeries {
    pub coeffs: Vec<ComplexBall>,
}

/// Operations accepted by [`PowerSeries::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Mul,
    Exp,
    Compose,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<ComplexBall>) -> Self {
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ComplexBall::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = ComplexBall::one();
        }
        s
    }

    /// The series `z`, truncated at `order`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = ComplexBall::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &ComplexBall {
        &self.coeffs[k]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, prec: u32) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b, prec))
                .collect(),
        })
    }

    pub fn scale(&self, c: &ComplexBall, prec: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul(c, prec)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = ComplexBall::zero();
            for j in 0..=k {
                let (a, b) = (&self.coeffs[j], &other.coeffs[k - j]);
                if a.is_exact() && a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b, prec), prec);
            }
            out.push(acc);
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, e: u32, prec: u32) -> Self {
        let mut result = Self::one(self.order());
        for _ in 0..e {
            result = result.mul(self, prec).expect("same order");
        }
        result
    }

    /// `exp(a)` via `b' = a' b`: `b_k = (1/k) sum_{j=1..k} j a_j b_{k-j}`.
    pub fn exp(&self, prec: u32) -> Self {
        let n = self.order();
        if n == 0 {
            return self.clone();
        }
        let mut b = Vec::with_capacity(n);
        b.push(self.coeffs[0].exp(prec));
        for k in 1..n {
            let mut acc = ComplexBall::zero();
            for j in 1..=k {
                let t = self.coeffs[j].mul_i64(j as i64, prec).mul(&b[k - j], prec);
                acc = acc.add(&t, prec);
            }
            b.push(acc.div_i64(k as i64, prec));
        }
        Self { coeffs: b }
    }

    /// `self(other(z))`; `other` must have a zero constant term.
    pub fn compose(&self, other: &Self, prec: u32) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0 = &other.coeffs[0];
        if !(c0.is_exact() && c0.re.is_zero() && c0.im.is_zero()) {
            return Err(Error::Domain(
                "composition needs an inner series with zero constant term".into(),
            ));
        }
        let mut acc = Self::zero(n);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(other, prec)?;
            acc.coeffs[0] = acc.coeffs[0].add(a, prec);
        }
        Ok(acc)
    }

    /// Dispatch; `Mul` and `Compose` need `b`.
    pub fn apply(op: SeriesOp, a: &Self, b: Option<&Self>, prec: u32) -> Result<Self> {
        let need_b =
            || b.ok_or_else(|| Error::InvalidParameters(format!("{op:?} needs two operands")));
        match op {
            SeriesOp::Mul => a.mul(need_b()?, prec),
            SeriesOp::Exp => Ok(a.exp(prec)),
            SeriesOp::Compose => a.compose(need_b()?, prec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::consts::euler_gamma;
    use crate::precision::{Dyadic, RealBall};

    #[test]
    fn trivial_cases() {
        let e = PowerSeries::zero(5).exp(64);
        assert_eq!(e.coeffs[0], ComplexBall::one());
        assert!(e.coeffs[1..].iter().all(|c| c.contains_zero()));
        let z = PowerSeries::variable(4);
        let z2 = PowerSeries::apply(SeriesOp::Mul, &z, Some(&z), 64).unwrap();
        assert!(z2.coeffs[2].contains_point(&Dyadic::one(), &Dyadic::zero()));
        assert!(z2.coeffs[0].contains_zero() && z2.coeffs[3].contains_zero());
        assert!(matches!(
            z.mul(&PowerSeries::variable(3), 64),
            Err(Error::OrderMismatch { left: 4, right: 3 })
        ));
    }

    #[test]
    fn exp_of_linear_matches_factorials() {
        let prec = 128;
        let g = euler_gamma(prec);
        let mut a = PowerSeries::zero(4);
        a.coeffs[1] = ComplexBall::from_real(&g);
        let e = a.exp(prec);
        let mut pw = RealBall::one();
        let mut fact = 1i64;
        for k in 0..4 {
            if k > 0 {
                pw = pw.mul(&g, prec);
                fact *= k as i64;
            }
            let want = ComplexBall::from_real(&pw.div_i64(fact, prec));
            assert!(e.coeffs[k].overlaps(&want), "k={k}");
            assert!(e.coeffs[k].rad.log2() < -120.0);
        }
    }

    #[test]
    fn compose_with_geometric() {
        // 1/(1-u) composed with u = z + z^2 -> coefficients 1,1,2,3,5 (Fibonacci)
        let n = 6;
        let geo = PowerSeries::new(vec![ComplexBall::one(); n]);
        let mut inner = PowerSeries::zero(n);
        inner.coeffs[1] = ComplexBall::one();
        inner.coeffs[2] = ComplexBall::one();
        let c = geo.compose(&inner, 64).unwrap();
        for (k, want) in [1, 1, 2, 3, 5, 8].iter().enumerate() {
            assert!(c.coeffs[k].contains_point(&Dyadic::from_i64(*want), &Dyadic::zero()));
        }
        assert!(geo.compose(&geo, 64).is_err());
    }
}
