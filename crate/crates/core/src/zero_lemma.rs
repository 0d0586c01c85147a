//! Zero counts of `F(z) = P(z, G(z))` for polynomials of bidegree at most `L`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::contour::{count_zeros_disk_nudged, counting_context};
use crate::error::{Error, Result};
use crate::gamma::{reciprocal_gamma_fixed, reciprocal_gamma_taylor};
use crate::par;
use crate::precision::{ComplexBall, Mag, PowerSeries, PrecisionContext};

/// Coefficient storage: `c[i][j]` multiplies `z^i w^j`.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeffs {
    /// Exact complex rationals `(re, im)`.
    Exact(Vec<Vec<(BigRational, BigRational)>>),
    Ball(Vec<Vec<ComplexBall>>),
}

/// `P(z, w) = Σ c[i][j] z^i w^j` with `i, j <= L`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivarPolynomial {
    pub l: usize,
    pub coeffs: Coeffs,
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let bad = || Error::InvalidParameters(format!("coefficient {v} is not a p/q rational"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| BigRational::from_integer(k.into()))
            .ok_or_else(bad),
        Value::String(s) => crate::precision::parse_rational(s).ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl BivarPolynomial {
    /// Exact polynomial with real rational coefficients `c[i][j]`.
    pub fn from_rationals(l: usize, c: Vec<Vec<BigRational>>) -> Result<Self> {
        if c.len() != l + 1 || c.iter().any(|r| r.len() != l + 1) {
            return Err(Error::InvalidParameters(format!(
                "coefficient matrix must be {0}x{0}",
                l + 1
            )));
        }
        let c = c
            .into_iter()
            .map(|row| row.into_iter().map(|x| (x, BigRational::zero())).collect())
            .collect();
        Ok(Self {
            l,
            coeffs: Coeffs::Exact(c),
        })
    }

    pub fn zero(l: usize) -> Self {
        Self::from_rationals(l, vec![vec![BigRational::zero(); l + 1]; l + 1]).unwrap()
    }

    /// `coef · z^i w^j` as a polynomial of bidegree `<= l`.
    pub fn monomial(l: usize, i: usize, j: usize, coef: BigRational) -> Self {
        let mut p = Self::zero(l);
        p.set_exact(i, j, coef);
        p
    }

    /// Set an exact real coefficient (no-op on ball polynomials).
    pub fn set_exact(&mut self, i: usize, j: usize, coef: BigRational) {
        if let Coeffs::Exact(c) = &mut self.coeffs {
            c[i][j] = (coef, BigRational::zero());
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coeffs::Exact(_))
    }

    pub fn coeff_ball(&self, i: usize, j: usize, prec: u32) -> ComplexBall {
        match &self.coeffs {
            Coeffs::Exact(c) => {
                let (re, im) = &c[i][j];
                ComplexBall::from_parts(
                    &crate::precision::RealBall::from_rational(re, prec),
                    &crate::precision::RealBall::from_rational(im, prec),
                )
            }
            Coeffs::Ball(c) => c[i][j].clone(),
        }
    }

    /// Whether every coefficient is (or may be) zero.
    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().flatten().all(|(a, b)| a.is_zero() && b.is_zero()),
            Coeffs::Ball(c) => c.iter().flatten().all(|b| b.contains_zero()),
        }
    }

    /// Largest `j` with a (possibly) nonzero coefficient of `w^j`.
    pub fn w_degree(&self) -> Option<usize> {
        (0..=self.l).rev().find(|&j| {
            (0..=self.l).any(|i| match &self.coeffs {
                Coeffs::Exact(c) => !(c[i][j].0.is_zero() && c[i][j].1.is_zero()),
                Coeffs::Ball(c) => !c[i][j].contains_zero(),
            })
        })
    }

    /// Scaled copy with maximal coefficient modulus 1 (ball coefficients
    /// unless every coefficient is real and exact).
    pub fn normalized(&self, prec: u32) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("cannot normalize the zero polynomial".into()));
        }
        if let Coeffs::Exact(c) = &self.coeffs {
            if c.iter().flatten().all(|(_, im)| im.is_zero()) {
                let m = c.iter().flatten().map(|(re, _)| re.abs()).max().unwrap();
                let scaled = c
                    .iter()
                    .map(|row| row.iter().map(|(re, im)| (re / &m, im.clone())).collect())
                    .collect();
                return Ok(Self {
                    l: self.l,
                    coeffs: Coeffs::Exact(scaled),
                });
            }
        }
        let n = self.l + 1;
        let balls: Vec<Vec<ComplexBall>> = (0..n)
            .map(|i| (0..n).map(|j| self.coeff_ball(i, j, prec)).collect())
            .collect();
        let m = balls
            .iter()
            .flatten()
            .max_by(|a, b| a.mid_abs_upper().cmp(&b.mid_abs_upper()))
            .unwrap()
            .abs(prec);
        let scaled = balls
            .iter()
            .map(|row| {
                row.iter()
                    .map(|b| b.div_real(&m, prec))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            l: self.l,
            coeffs: Coeffs::Ball(scaled),
        })
    }

    /// `P(z, w)` in ball arithmetic (Horner in both variables).
    pub fn eval(&self, z: &ComplexBall, w: &ComplexBall, prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::zero();
        for j in (0..=self.l).rev() {
            let mut inner = ComplexBall::zero();
            for i in (0..=self.l).rev() {
                inner = inner.mul(z, prec).add(&self.coeff_ball(i, j, prec), prec);
            }
            acc = acc.mul(w, prec).add(&inner, prec);
        }
        acc
    }

    /// Parse `{"L": n, "coeffs": [...]}` where `coeffs` is either an
    /// `(L+1) x (L+1)` nested array (row `i` = power of `z`) or the same in a
    /// flat row-major array; entries are `"p/q"` strings or integers. An
    /// optional `"coeffs_im"` of the same shape gives imaginary parts.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameters(format!("polynomial JSON: {e}")))?;
        let l =
            v.get("L").and_then(Value::as_u64).ok_or_else(|| {
                Error::InvalidParameters("polynomial JSON needs integer \"L\"".into())
            })? as usize;
        let grid = |key: &str| -> Result<Option<Vec<Vec<BigRational>>>> {
            let Some(arr) = v.get(key) else {
                return Ok(None);
            };
            let arr = arr
                .as_array()
                .ok_or_else(|| Error::InvalidParameters(format!("\"{key}\" must be an array")))?;
            let flat: Vec<&Value> = if arr.iter().all(Value::is_array) {
                arr.iter()
                    .flat_map(|r| r.as_array().unwrap().iter())
                    .collect()
            } else {
                arr.iter().collect()
            };
            if flat.len() != (l + 1) * (l + 1) {
                return Err(Error::InvalidParameters(format!(
                    "\"{key}\" needs {} entries, found {}",
                    (l + 1) * (l + 1),
                    flat.len()
                )));
            }
            let vals = flat
                .into_iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(vals.chunks(l + 1).map(|c| c.to_vec()).collect()))
        };
        let re = grid("coeffs")?
            .ok_or_else(|| Error::InvalidParameters("polynomial JSON needs \"coeffs\"".into()))?;
        let im =
            grid("coeffs_im")?.unwrap_or_else(|| vec![vec![BigRational::zero(); l + 1]; l + 1]);
        let c = re
            .into_iter()
            .zip(im)
            .map(|(r, i)| r.into_iter().zip(i).collect())
            .collect();
        Ok(Self {
            l,
            coeffs: Coeffs::Exact(c),
        })
    }

    pub fn to_json(&self) -> Value {
        match &self.coeffs {
            Coeffs::Exact(c) => {
                let re: Vec<Vec<String>> = c
                    .iter()
                    .map(|r| r.iter().map(|(a, _)| rational_string(a)).collect())
                    .collect();
                let mut out = json!({ "L": self.l, "coeffs": re });
                if c.iter().flatten().any(|(_, b)| !b.is_zero()) {
                    let im: Vec<Vec<String>> = c
                        .iter()
                        .map(|r| r.iter().map(|(_, b)| rational_string(b)).collect())
                        .collect();
                    out["coeffs_im"] = json!(im);
                }
                out
            }
            Coeffs::Ball(c) => json!({
                "L": self.l,
                "coeff_balls": serde_json::to_value(c).expect("balls serialize"),
            }),
        }
    }
}

impl Serialize for BivarPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `c L (L+R) log(L+R)`.
pub fn zero_bound(l: usize, r: f64, c: f64) -> f64 {
    let s = l as f64 + r;
    c * l as f64 * s * s.ln()
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroLemmaReport {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "R")]
    pub r: f64,
    /// Radius actually used after any nudge away from a boundary zero.
    pub r_used: f64,
    pub count: i64,
    pub bound: f64,
    /// `count / (L (L+R) log(L+R))`.
    pub calibrated_c: f64,
    /// `count / (L (L+R))`, evidence on whether the log factor is needed.
    pub ratio_without_log: f64,
    pub c: f64,
    pub pass: bool,
    pub contour_cells: usize,
}

/// Count zeros of `P(z, G(z))` in `|z| <= R` and compare with the bound.
pub fn verify_zero_lemma(
    p: &BivarPolynomial,
    r: f64,
    c: f64,
    ctx: &PrecisionContext,
) -> Result<ZeroLemmaReport> {
    if p.is_zero() {
        return Err(Error::InvalidParameters("P must be nonzero".into()));
    }
    if r < 2.0 || c <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "zero lemma needs R >= 2 and c > 0 (got R = {r}, c = {c})"
        )));
    }
    let f = |z: &crate::precision::ComplexBall, prec: u32| -> Result<ComplexBall> {
        let g = reciprocal_gamma_fixed(z, prec)?.0;
        Ok(p.eval(z, &g, prec))
    };
    let (cc, r_used) = count_zeros_disk_nudged(&f, r, &counting_context(ctx))?;
    let l = p.l.max(1);
    let bound = zero_bound(l, r, c);
    let s = l as f64 + r;
    Ok(ZeroLemmaReport {
        l: p.l,
        r,
        r_used,
        count: cc.count,
        bound,
        calibrated_c: cc.count as f64 / (l as f64 * s * s.ln()),
        ratio_without_log: cc.count as f64 / (l as f64 * s),
        c,
        pass: (cc.count as f64) <= bound,
        contour_cells: cc.contour_cells,
    })
}

/// Random polynomial with independent coefficients `k/64`, `k ∈ [-64, 64]`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, l: usize) -> BivarPolynomial {
    loop {
        let c: Vec<Vec<BigRational>> = (0..=l)
            .map(|_| {
                (0..=l)
                    .map(|_| BigRational::new(rng.gen_range(-64i64..=64).into(), 64.into()))
                    .collect()
            })
            .collect();
        let p = BivarPolynomial::from_rationals(l, c).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteInstance {
    pub index: usize,
    pub polynomial: BivarPolynomial,
    pub report: ZeroLemmaReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub count: usize,
    pub c: f64,
    pub max_l: usize,
    pub max_r: f64,
    pub instances: Vec<SuiteInstance>,
    /// Largest `count / (L(L+R)log(L+R))` observed.
    pub max_calibrated_c: f64,
    pub max_ratio_without_log: f64,
    pub pass: bool,
}

/// `count` seeded random instances with `1 <= L <= max_l` and
/// `R ∈ {2.5, 3.5, …} ∩ [2, max_r]`.
pub fn random_suite(
    count: usize,
    seed: u64,
    c: f64,
    max_l: usize,
    max_r: f64,
    ctx: &PrecisionContext,
) -> Result<SuiteReport> {
    if max_l < 1 || max_r < 2.5 {
        return Err(Error::InvalidParameters(format!(
            "suite needs max_l >= 1 and max_r >= 2.5 (got {max_l}, {max_r})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r_steps = (max_r - 2.5).floor() as i64;
    let specs: Vec<(usize, BivarPolynomial, f64)> = (0..count)
        .map(|i| {
            let l = rng.gen_range(1..=max_l);
            let r = 2.5 + rng.gen_range(0..=r_steps) as f64;
            (i, random_polynomial(&mut rng, l), r)
        })
        .collect();
    let reports = par::map(&specs, |(_, p, r)| verify_zero_lemma(p, *r, c, ctx));
    let mut instances = Vec::with_capacity(count);
    for ((index, polynomial, _), rep) in specs.into_iter().zip(reports) {
        instances.push(SuiteInstance {
            index,
            polynomial,
            report: rep?,
        });
    }
    let max_calibrated_c = instances
        .iter()
        .map(|s| s.report.calibrated_c)
        .fold(0.0, f64::max);
    let max_ratio_without_log = instances
        .iter()
        .map(|s| s.report.ratio_without_log)
        .fold(0.0, f64::max);
    let pass = instances.iter().all(|s| s.report.pass);
    Ok(SuiteReport {
        seed,
        count,
        c,
        max_l,
        max_r,
        instances,
        max_calibrated_c,
        max_ratio_without_log,
        pass,
    })
}

/// Taylor data of `z^i G(z)^j` at 0, truncated at `order`.
fn power_table(l: usize, order: usize, prec: u32) -> Result<Vec<PowerSeries>> {
    let g = reciprocal_gamma_taylor(order.max(2), &PrecisionContext::fixed(prec))?;
    let g = PowerSeries::new(g.coeffs[..order].to_vec());
    let mut powers = vec![PowerSeries::one(order)];
    for j in 1..=l {
        powers.push(powers[j - 1].mul(&g, prec)?);
    }
    Ok(powers)
}

/// `[z^k] z^i G^j`, zero when `k < i`.
fn entry(powers: &[PowerSeries], i: usize, j: usize, k: usize) -> ComplexBall {
    if k < i {
        ComplexBall::zero()
    } else {
        powers[j].coeffs[k - i].clone()
    }
}

/// Taylor coefficients of `P(z, G(z))` at 0 up to `order`.
pub fn composed_series(p: &BivarPolynomial, order: usize, prec: u32) -> Result<PowerSeries> {
    let powers = power_table(p.l, order, prec)?;
    let mut out = vec![ComplexBall::zero(); order];
    for (k, slot) in out.iter_mut().enumerate() {
        for i in 0..=p.l.min(k) {
            for j in 0..=p.l {
                let c = p.coeff_ball(i, j, prec);
                if c.is_exact() && c.re.is_zero() && c.im.is_zero() {
                    continue;
                }
                *slot = slot.add(&c.mul(&entry(&powers, i, j, k), prec), prec);
            }
        }
    }
    Ok(PowerSeries::new(out))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishingOrder {
    /// Index of the first coefficient certified nonzero, or the cap.
    pub order: usize,
    /// No coefficient below the cap could be separated from 0.
    pub capped: bool,
    pub bits: u32,
}

/// Order of `P(z, G(z))` at `z = 0`: the first Taylor coefficient whose ball
/// excludes 0, searched up to `(L+1)^2 + 4`. Coefficients whose balls contain
/// 0 with a radius above `2^(-bits/2)` trigger precision escalation (exact
/// coefficients only).
pub fn vanishing_order(p: &BivarPolynomial, ctx: &PrecisionContext) -> Result<VanishingOrder> {
    if p.is_zero() {
        return Err(Error::InvalidParameters("P must be nonzero".into()));
    }
    let cap = (p.l + 1) * (p.l + 1) + 4;
    let mut last_wide = 0;
    for c in ctx.schedule() {
        let s = composed_series(p, cap + 1, c.bits)?;
        let tol = Mag::pow2(-(c.bits as i64) / 2);
        let mut wide = None;
        for (k, b) in s.coeffs.iter().enumerate() {
            if b.excludes_zero() {
                return Ok(VanishingOrder {
                    order: k,
                    capped: false,
                    bits: c.bits,
                });
            }
            if b.rad > tol {
                wide = Some(k);
                break;
            }
        }
        match wide {
            None => {
                return Ok(VanishingOrder {
                    order: cap,
                    capped: true,
                    bits: c.bits,
                })
            }
            Some(k) => last_wide = k,
        }
        if !p.is_exact() {
            break;
        }
    }
    Err(Error::Inconclusive { index: last_wide })
}

/// Polynomial with `P(z, G(z))` vanishing to order at least `L^2 + 2L` at 0.
///
/// The `(L^2+2L) x (L+1)^2` system is eliminated in ball arithmetic; a column
/// becomes a pivot when some remaining entry's ball excludes 0, and the
/// lexicographically first non-pivot column is set to 1. With every pivot
/// certified the result encloses an exact kernel vector; it is then scaled so
/// that the first coefficient bounded away from 0 equals 1.
pub fn extremal_polynomial(l: usize, ctx: &PrecisionContext) -> Result<BivarPolynomial> {
    if l < 2 {
        return Err(Error::InvalidParameters(format!(
            "extremal polynomial needs L >= 2, got {l}"
        )));
    }
    let rows = l * l + 2 * l;
    let cols = (l + 1) * (l + 1);
    for c in ctx.schedule() {
        let prec = c.bits;
        let powers = power_table(l, rows, prec + 32)?;
        // column index = i (L+1) + j for the coefficient of z^i w^j
        let mut m: Vec<Vec<ComplexBall>> = (0..rows)
            .map(|k| {
                (0..cols)
                    .map(|col| entry(&powers, col / (l + 1), col % (l + 1), k))
                    .collect()
            })
            .collect();
        if let Some(v) = ball_kernel(&mut m, cols, prec + 32)? {
            let n = l + 1;
            let lead = v
                .iter()
                .find(|b| b.excludes_zero())
                .cloned()
                .expect("free coordinate is 1");
            let scaled = v
                .iter()
                .map(|b| b.div(&lead, prec + 32).map(|x| x.round(prec)))
                .collect::<Result<Vec<_>>>()?;
            let coeffs = (0..n)
                .map(|i| scaled[i * n..(i + 1) * n].to_vec())
                .collect();
            return Ok(BivarPolynomial {
                l,
                coeffs: Coeffs::Ball(coeffs),
            });
        }
    }
    Err(Error::PrecisionExhausted {
        bits: ctx.max_bits,
        what: format!("kernel pivots for L = {l}"),
    })
}

/// Ball Gaussian elimination; `None` when a pivot could not be decided.
fn ball_kernel(
    m: &mut [Vec<ComplexBall>],
    cols: usize,
    prec: u32,
) -> Result<Option<Vec<ComplexBall>>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c].excludes_zero()) else {
            if (r..rows).any(|i| !m[i][c].is_exact()) {
                // entries not known to be 0 but not separated from it either
                if (r..rows).any(|i| m[i][c].rad > Mag::pow2(-(prec as i64) / 2)) {
                    return Ok(None);
                }
            }
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv(prec)?;
        for i in r + 1..rows {
            if m[i][c].is_exact() && m[i][c].re.is_zero() && m[i][c].im.is_zero() {
                continue;
            }
            let factor = m[i][c].mul(&inv, prec);
            for j in c..cols {
                let t = factor.mul(&m[r][j], prec);
                m[i][j] = m[i][j].sub(&t, prec);
            }
            m[i][c] = ComplexBall::zero();
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != rows {
        return Ok(None);
    }
    let free = (0..cols)
        .find(|c| !pivots.contains(c))
        .expect("more columns than rows");
    let mut x = vec![ComplexBall::zero(); cols];
    x[free] = ComplexBall::one();
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut s = ComplexBall::zero();
        for j in pc + 1..cols {
            if !(x[j].is_exact() && x[j].re.is_zero() && x[j].im.is_zero()) {
                s = s.add(&m[r][j].mul(&x[j], prec), prec);
            }
        }
        x[pc] = s.neg().div(&m[r][pc], prec)?;
    }
    Ok(Some(x))
}

/// `Q(z, u) = u^L P(z, 1/u)`, i.e. `Q[i][j] = P[i][L-j]`, so that
/// `P(z, Γ(z)) = Γ(z)^L Q(z, G(z))`.
pub fn gamma_corollary_reduce(p: &BivarPolynomial) -> BivarPolynomial {
    let l = p.l;
    let coeffs = match &p.coeffs {
        Coeffs::Exact(c) => Coeffs::Exact(
            c.iter()
                .map(|row| (0..=l).map(|j| row[l - j].clone()).collect())
                .collect(),
        ),
        Coeffs::Ball(c) => Coeffs::Ball(
            c.iter()
                .map(|row| (0..=l).map(|j| row[l - j].clone()).collect())
                .collect(),
        ),
    };
    BivarPolynomial { l, coeffs }
}

/// `w^L` of bidegree `L`, whose zero count in `|z| <= R` is `L(⌊R⌋ + 1)`.
pub fn tightness_polynomial(l: usize) -> BivarPolynomial {
    BivarPolynomial::monomial(l, 0, l, BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn bound_formula() {
        assert!((zero_bound(1, 2.0, 1.0) - 3.0 * 3f64.ln()).abs() < 1e-12);
        assert!((zero_bound(3, 4.5, 2.0) - 90.6706).abs() < 1e-3);
        assert!((zero_bound(5, 20.0, 1.0) - 402.36).abs() < 0.01);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"L": 1, "coeffs": [["0", "1/2"], [-1, "3/4"]]}"#;
        let p = BivarPolynomial::from_json(text).unwrap();
        let back = BivarPolynomial::from_json(&p.to_json().to_string()).unwrap();
        assert_eq!(p, back);
        let flat =
            BivarPolynomial::from_json(r#"{"L": 1, "coeffs": ["0", "1/2", "-1", "3/4"]}"#).unwrap();
        assert_eq!(p, flat);
        assert!(BivarPolynomial::from_json(r#"{"L": 1, "coeffs": ["1"]}"#).is_err());
    }

    #[test]
    fn counts_for_powers_of_w() {
        let ctx = PrecisionContext::new(64, 256, 2).unwrap();
        let rep = verify_zero_lemma(&tightness_polynomial(1), 10.5, 1.0, &ctx).unwrap();
        assert_eq!(rep.count, 11);
        assert!(rep.pass && (rep.bound - 28.09).abs() < 0.01);
        let rep = verify_zero_lemma(&tightness_polynomial(3), 10.5, 1.0, &ctx).unwrap();
        assert_eq!(rep.count, 33);
    }

    #[test]
    fn vanishing_orders() {
        let ctx = PrecisionContext::new(128, 512, 2).unwrap();
        let w = BivarPolynomial::monomial(1, 0, 1, q(1, 1));
        assert_eq!(vanishing_order(&w, &ctx).unwrap().order, 1);
        let zw = BivarPolynomial::monomial(1, 1, 1, q(1, 1));
        assert_eq!(vanishing_order(&zw, &ctx).unwrap().order, 2);
    }

    #[test]
    fn extremal_l2() {
        let ctx = PrecisionContext::new(128, 1024, 2).unwrap();
        let p = extremal_polynomial(2, &ctx).unwrap();
        assert!(!p.is_zero());
        let v = vanishing_order(&p, &ctx).unwrap();
        assert!(v.order >= 8, "{v:?}");
    }

    #[test]
    fn corollary_reduction() {
        // P = z w^2 + w  ->  Q = z + u
        let mut p = BivarPolynomial::zero(2);
        p.set_exact(1, 2, q(1, 1));
        p.set_exact(0, 1, q(1, 1));
        let qp = gamma_corollary_reduce(&p);
        let mut want = BivarPolynomial::zero(2);
        want.set_exact(1, 0, q(1, 1));
        want.set_exact(0, 1, q(1, 1));
        assert_eq!(qp, want);
        assert_eq!(gamma_corollary_reduce(&qp), p);
        // P = w - 1 -> Q = 1 - u
        let mut p = BivarPolynomial::zero(1);
        p.set_exact(0, 1, q(1, 1));
        p.set_exact(0, 0, q(-1, 1));
        let mut want = BivarPolynomial::zero(1);
        want.set_exact(0, 0, q(1, 1));
        want.set_exact(0, 1, q(-1, 1));
        assert_eq!(gamma_corollary_reduce(&p), want);
    }

    #[test]
    fn normalization() {
        let mut p = BivarPolynomial::zero(1);
        p.set_exact(0, 1, q(-4, 1));
        p.set_exact(1, 0, q(2, 1));
        let n = p.normalized(64).unwrap();
        assert_eq!(n.coeff_ball(0, 1, 64), ComplexBall::from_i64(-1));
    }
}
