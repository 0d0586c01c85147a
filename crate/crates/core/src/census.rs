//! Rational points of bounded denominator on the graphs of `Γ` and `1/Γ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::reciprocal_gamma_fixed;
use crate::par;
use crate::precision::{best_rational_approx, ComplexBall, Mag, PrecisionContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Gamma,
    ReciprocalGamma,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Gamma => "gamma",
            Target::ReciprocalGamma => "reciprocal_gamma",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    RationalHit,
    CertifiedMiss,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::RationalHit => "rational_hit",
            Verdict::CertifiedMiss => "certified_miss",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    #[serde(serialize_with = "ser_rational")]
    pub point: BigRational,
    pub target: Target,
    /// Enclosure of the target value at `point`.
    pub value_ball: ComplexBall,
    /// Best approximation with denominator `<= D` to the ball midpoint.
    #[serde(serialize_with = "ser_rational")]
    pub nearest: BigRational,
    /// Certified lower bound of `|value - nearest|` (0 for a hit).
    pub gap_lower: f64,
    pub gap_lower_log2: f64,
    pub verdict: Verdict,
    /// A hit at a non-integer point: numerically consistent with a rational
    /// value but not a proof of rationality.
    pub numerical_candidate: bool,
    pub bits_used: u32,
}

fn ser_rational<S: serde::Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    })
}

/// All reduced `p/q` with `q <= D` in `[n-1, n]`, ascending, endpoints included.
pub fn enumerate_rationals(n: u64, d: u64) -> Result<Vec<BigRational>> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameters(format!(
            "enumeration needs n >= 2 and D >= 1 (got n = {n}, D = {d})"
        )));
    }
    // Farey sequence of order D on [0, 1], shifted by n - 1.
    let base = BigInt::from(n - 1);
    let mut out = Vec::new();
    let (mut a, mut b, mut c, mut e) = (0u64, 1u64, 1u64, d);
    out.push(BigRational::from_integer(base.clone()));
    while c <= d {
        let k = (d + b) / e;
        let (na, nb) = (c, e);
        let (nc, ne) = (k * c - a, k * e - b);
        a = na;
        b = nb;
        c = nc;
        e = ne;
        out.push(BigRational::new(&base * b + a, b.into()));
    }
    Ok(out)
}

/// Exact value of the target at a positive integer `m`.
fn exact_at_integer(m: &BigInt, target: Target) -> BigRational {
    let mut f = BigInt::one();
    let mut k = BigInt::from(2);
    while &k < m {
        f *= &k;
        k += 1;
    }
    match target {
        Target::Gamma => BigRational::from_integer(f),
        Target::ReciprocalGamma => BigRational::new(BigInt::one(), f),
    }
}

fn target_ball(g: &ComplexBall, target: Target, prec: u32) -> Option<ComplexBall> {
    match target {
        Target::ReciprocalGamma => Some(g.clone()),
        Target::Gamma => g.inv(prec).ok(),
    }
}

/// Decide one point from a ball of the target value; `None` means "escalate".
fn decide(
    pq: &BigRational,
    value: ComplexBall,
    d: u64,
    target: Target,
    bits: u32,
    last: bool,
) -> Option<CensusRecord> {
    let (nearest, gap) = best_rational_approx(&value, d);
    let lower = gap.abs_lower();
    let record = |verdict, gap_lower: Mag, candidate| CensusRecord {
        point: pq.clone(),
        target,
        value_ball: value.clone(),
        nearest: nearest.clone(),
        gap_lower: gap_lower.to_f64(),
        gap_lower_log2: gap_lower.log2(),
        verdict,
        numerical_candidate: candidate,
        bits_used: bits,
    };
    // `nearest` is the closest admissible rational to the midpoint, so a
    // positive lower gap separates the whole ball from every admissible one.
    if !lower.is_zero() {
        return Some(record(Verdict::CertifiedMiss, lower, false));
    }
    if !last {
        return None;
    }
    // Distinct fractions with denominators <= D are at least 1/D^2 apart.
    let spacing = Mag::from_f64(1.0 / (d as f64 * d as f64)).mul_2exp(-2);
    let zero = BigRational::zero();
    if value.contains_rational(&nearest, &zero) && value.rad < spacing {
        Some(record(Verdict::RationalHit, Mag::zero(), true))
    } else {
        Some(record(Verdict::Undecided, Mag::zero(), false))
    }
}

fn classify_with<F>(
    pq: &BigRational,
    d: u64,
    target: Target,
    ctx: &PrecisionContext,
    mut g_at: F,
) -> CensusRecord
where
    F: FnMut(u32) -> Option<ComplexBall>,
{
    if pq.is_integer() && pq.numer().is_positive() {
        let v = exact_at_integer(pq.numer(), target);
        let value = ComplexBall::from_rational(&v, ctx.bits);
        let nearest = crate::precision::rational::best_rational_for(&v, &BigInt::from(d));
        let hit = nearest == v;
        let gap = (&v - &nearest).abs();
        let gap_lower = if hit {
            Mag::zero()
        } else {
            crate::precision::RealBall::from_rational(&gap, 64).abs_lower()
        };
        return CensusRecord {
            point: pq.clone(),
            target,
            value_ball: value,
            nearest,
            gap_lower: gap_lower.to_f64(),
            gap_lower_log2: gap_lower.log2(),
            verdict: if hit {
                Verdict::RationalHit
            } else {
                Verdict::CertifiedMiss
            },
            numerical_candidate: false,
            bits_used: 0,
        };
    }
    let mut fallback = None;
    for c in ctx.schedule() {
        let last = c.bits >= ctx.max_bits;
        let Some(value) = g_at(c.bits).and_then(|g| target_ball(&g, target, c.bits)) else {
            continue;
        };
        if let Some(r) = decide(pq, value.clone(), d, target, c.bits, last) {
            return r;
        }
        fallback = Some((value, c.bits));
    }
    // the last precision step failed to produce a ball at all
    let (value, bits) =
        fallback.unwrap_or_else(|| (ComplexBall::zero().add_error(Mag::pow2(64)), ctx.max_bits));
    let mut r = decide(pq, value, d, target, bits, true).expect("final step always decides");
    if r.verdict == Verdict::RationalHit {
        r.verdict = Verdict::Undecided;
        r.numerical_candidate = false;
    }
    r
}

fn g_ball(pq: &BigRational, bits: u32) -> Option<ComplexBall> {
    let z = ComplexBall::from_rational(pq, bits + 16);
    reciprocal_gamma_fixed(&z, bits).ok().map(|(g, _)| g)
}

/// Classify `Γ(pq)` or `1/Γ(pq)` against the rationals with denominator `<= D`.
pub fn classify_point(
    pq: &BigRational,
    d: u64,
    target: Target,
    ctx: &PrecisionContext,
) -> CensusRecord {
    classify_with(pq, d, target, ctx, |bits| g_ball(pq, bits))
}

/// Both targets at one point, sharing the `1/Γ` evaluations.
fn classify_both(pq: &BigRational, d: u64, ctx: &PrecisionContext) -> [CensusRecord; 2] {
    let mut cache: Vec<(u32, Option<ComplexBall>)> = Vec::new();
    let mut lookup = |bits: u32| -> Option<ComplexBall> {
        if let Some((_, g)) = cache.iter().find(|(b, _)| *b == bits) {
            return g.clone();
        }
        let g = g_ball(pq, bits);
        cache.push((bits, g.clone()));
        g
    };
    let a = classify_with(pq, d, Target::Gamma, ctx, &mut lookup);
    let b = classify_with(pq, d, Target::ReciprocalGamma, ctx, &mut lookup);
    [a, b]
}

/// Closed-form right-hand sides of the counting theorem:
/// `c n^4 log^3 n log^2 D / log log D` for `Γ` and `c n^2 log^3 n log^2 D / log log D`
/// for `1/Γ`.
pub fn theorem_bound(n: u64, d: u64, c: f64, target: Target) -> Result<f64> {
    if d < 3 {
        return Err(Error::Domain(format!(
            "log log D is not positive for D = {d}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let (nf, df) = (n as f64, d as f64);
    let pow = match target {
        Target::Gamma => 4,
        Target::ReciprocalGamma => 2,
    };
    Ok(c * nf.powi(pow) * nf.ln().powi(3) * df.ln().powi(2) / df.ln().ln())
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub n: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub c: f64,
    pub points: usize,
    #[serde(rename = "N")]
    pub n_gamma: usize,
    #[serde(rename = "N_prime")]
    pub n_reciprocal: usize,
    pub undecided: Vec<CensusRecord>,
    pub candidates: Vec<CensusRecord>,
    pub bound_n: f64,
    pub bound_n_prime: f64,
    /// `N / bound_N` with the configured `c`.
    pub ratio_n: f64,
    pub ratio_n_prime: f64,
    /// Height fed to the counting theorem for the `Γ` case: `(n-1)! D`.
    pub height_h: String,
    /// The same for `1/Γ`: `n D`.
    pub height_h_prime: String,
    /// Hit values for both targets at one point are exact reciprocals.
    pub reciprocal_consistent: bool,
    pub max_bits_used: u32,
    #[serde(skip)]
    pub records: Vec<CensusRecord>,
}

impl CensusReport {
    pub fn pass(&self) -> bool {
        self.undecided.is_empty()
            && self.n_gamma as f64 <= self.bound_n
            && self.n_reciprocal as f64 <= self.bound_n_prime
            && self.reciprocal_consistent
    }

    /// CSV with columns `p,q,target,verdict,nearest_p,nearest_q,gap_lower_log2,bits_used`.
    pub fn to_csv(&self) -> String {
        let mut s =
            String::from("p,q,target,verdict,nearest_p,nearest_q,gap_lower_log2,bits_used\n");
        for r in &self.records {
            s.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.point.numer(),
                r.point.denom(),
                r.target,
                r.verdict,
                r.nearest.numer(),
                r.nearest.denom(),
                fmt_log2(r.gap_lower_log2),
                r.bits_used
            ));
        }
        s
    }
}

fn fmt_log2(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.4}")
    } else if x < 0.0 {
        "-inf".into()
    } else {
        "inf".into()
    }
}

/// Classify every point of [`enumerate_rationals`] for both targets.
pub fn run_census(n: u64, d: u64, c: f64, ctx: &PrecisionContext) -> Result<CensusReport> {
    if d < 3 {
        return Err(Error::Domain(format!("census needs D >= 3, got {d}")));
    }
    let pts = enumerate_rationals(n, d)?;
    let classified = par::map(&pts, |pq| classify_both(pq, d, ctx));
    let mut records = Vec::with_capacity(2 * pts.len());
    let mut consistent = true;
    for [a, b] in classified {
        if a.verdict == Verdict::RationalHit
            && b.verdict == Verdict::RationalHit
            && !(&a.nearest * &b.nearest).is_one()
        {
            consistent = false;
        }
        records.push(a);
        records.push(b);
    }
    let count = |t: Target| {
        records
            .iter()
            .filter(|r| r.target == t && r.verdict == Verdict::RationalHit)
            .count()
    };
    let n_gamma = count(Target::Gamma);
    let n_reciprocal = count(Target::ReciprocalGamma);
    let bound_n = theorem_bound(n, d, c, Target::Gamma)?;
    let bound_n_prime = theorem_bound(n, d, c, Target::ReciprocalGamma)?;
    let fact: BigInt = (1..n).map(BigInt::from).product();
    Ok(CensusReport {
        n,
        d,
        c,
        points: pts.len(),
        n_gamma,
        n_reciprocal,
        undecided: records
            .iter()
            .filter(|r| r.verdict == Verdict::Undecided)
            .cloned()
            .collect(),
        candidates: records
            .iter()
            .filter(|r| r.numerical_candidate)
            .cloned()
            .collect(),
        bound_n,
        bound_n_prime,
        ratio_n: n_gamma as f64 / bound_n,
        ratio_n_prime: n_reciprocal as f64 / bound_n_prime,
        height_h: (fact * d).to_string(),
        height_h_prime: (n * d).to_string(),
        reciprocal_consistent: consistent,
        max_bits_used: records.iter().map(|r| r.bits_used).max().unwrap_or(0),
        records,
    })
}

/// Number of reduced fractions in `[n-1, n]` with denominator `<= D`, by a
/// double loop; an independent check on [`enumerate_rationals`].
pub fn brute_force_count(n: u64, d: u64) -> usize {
    let mut count = 0;
    for q in 1..=d {
        for p in (n - 1) * q..=n * q {
            if p.gcd(&q) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// Decimal value of a point, for plotting.
pub fn point_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            enumerate_rationals(2, 2).unwrap(),
            vec![q(1, 1), q(3, 2), q(2, 1)]
        );
        assert_eq!(
            enumerate_rationals(2, 3).unwrap(),
            vec![q(1, 1), q(4, 3), q(3, 2), q(5, 3), q(2, 1)]
        );
        assert_eq!(
            enumerate_rationals(3, 50).unwrap().len(),
            brute_force_count(3, 50)
        );
        assert_eq!(enumerate_rationals(5, 1).unwrap(), vec![q(4, 1), q(5, 1)]);
    }

    #[test]
    fn bounds() {
        let g = theorem_bound(2, 3, 1.0, Target::Gamma).unwrap();
        assert!((g - 68.3).abs() < 0.5, "{g}");
        let r = theorem_bound(2, 3, 1.0, Target::ReciprocalGamma).unwrap();
        assert!((r - 17.1).abs() < 0.2, "{r}");
        assert!(theorem_bound(2, 2, 1.0, Target::Gamma).is_err());
    }

    #[test]
    fn point_classification() {
        let ctx = PrecisionContext::default();
        let r = classify_point(&q(3, 1), 10, Target::Gamma, &ctx);
        assert_eq!(
            (r.verdict, r.nearest.clone()),
            (Verdict::RationalHit, q(2, 1))
        );
        let r = classify_point(&q(3, 2), 100, Target::Gamma, &ctx);
        assert_eq!(r.verdict, Verdict::CertifiedMiss);
        assert!(r.gap_lower > 0.0);
        let r = classify_point(&q(1, 1), 1, Target::ReciprocalGamma, &ctx);
        assert_eq!((r.verdict, r.nearest), (Verdict::RationalHit, q(1, 1)));
        let r = classify_point(&q(6, 1), 50, Target::ReciprocalGamma, &ctx);
        assert_eq!(r.verdict, Verdict::CertifiedMiss);
    }

    #[test]
    fn small_census() {
        let ctx = PrecisionContext::default();
        let rep = run_census(2, 20, 1.0, &ctx).unwrap();
        assert_eq!((rep.n_gamma, rep.n_reciprocal), (2, 2));
        assert!(rep.undecided.is_empty() && rep.pass());
        assert_eq!(rep.height_h, "20");
        assert_eq!(rep.height_h_prime, "40");
        assert!(rep
            .to_csv()
            .starts_with("p,q,target,verdict,nearest_p,nearest_q,gap_lower_log2,bits_used\n"));
    }
}
