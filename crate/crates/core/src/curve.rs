//! Minimal degree `ω(S)` of plane curves through finite point sets, and the
//! parameter inequality of the determinant method.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::precision::{ComplexBall, Dyadic, RealBall};
use crate::zero_lemma::BivarPolynomial;

/// Working precision for the logarithmic comparisons in [`bp_condition`].
const BP_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Exact(BigRational, BigRational),
    Ball(ComplexBall, ComplexBall),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn exact(points: Vec<(BigRational, BigRational)>) -> Self {
        Self {
            points: points
                .into_iter()
                .map(|(x, y)| Point::Exact(x, y))
                .collect(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.points.iter().all(|p| matches!(p, Point::Exact(..)))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn exact_points(&self) -> Result<Vec<(BigRational, BigRational)>> {
        self.points
            .iter()
            .map(|p| match p {
                Point::Exact(x, y) => Ok((x.clone(), y.clone())),
                Point::Ball(..) => Err(Error::InexactInput),
            })
            .collect()
    }

    /// Read a CSV with header `x_num,x_den,y_num,y_den`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| {
            Error::InvalidParameters(format!("points CSV line {line}: {msg}"))
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let Some((_, header)) = lines.next() else {
            return Err(bad(1, "empty file"));
        };
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols != ["x_num", "x_den", "y_num", "y_den"] {
            return Err(bad(1, "header must be x_num,x_den,y_num,y_den"));
        }
        let mut points = Vec::new();
        for (i, line) in lines {
            let f: Vec<BigInt> = line
                .split(',')
                .map(|s| s.trim().parse::<BigInt>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(i + 1, "non-integer field"))?;
            if f.len() != 4 {
                return Err(bad(i + 1, "expected 4 fields"));
            }
            if f[1].is_zero() || f[3].is_zero() {
                return Err(bad(i + 1, "zero denominator"));
            }
            points.push(Point::Exact(
                BigRational::new(f[0].clone(), f[1].clone()),
                BigRational::new(f[2].clone(), f[3].clone()),
            ));
        }
        Ok(Self { points })
    }
}

/// Exponents `(i, j)` of `x^i y^j` with `i + j <= t` in graded lexicographic
/// order: by total degree, then by decreasing power of `x`.
pub fn monomials(t: usize) -> Vec<(usize, usize)> {
    (0..=t)
        .flat_map(|deg| (0..=deg).rev().map(move |i| (i, deg - i)))
        .collect()
}

/// Number of monomials of total degree `<= t`.
pub fn monomial_count(t: usize) -> usize {
    (t + 1) * (t + 2) / 2
}

/// Smallest `T` whose monomial count exceeds `|S|`: an upper bound for `ω(S)`.
pub fn dimension_bound(len: usize) -> usize {
    (1..).find(|&t| monomial_count(t) > len).unwrap()
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// The `|S| x (T+1)(T+2)/2` matrix of monomials evaluated at `S`.
pub fn monomial_matrix(points: &[(BigRational, BigRational)], t: usize) -> Vec<Vec<BigRational>> {
    let mons = monomials(t);
    par::map(points, |(x, y)| {
        mons.iter().map(|&(i, j)| pow(x, i) * pow(y, j)).collect()
    })
}

/// `ω(S)`, the least total degree of a nonzero polynomial vanishing on `S`.
pub fn omega(s: &PointSet) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::InvalidParameters(
            "omega needs a nonempty point set".into(),
        ));
    }
    let pts = s.exact_points()?;
    for t in 1.. {
        let m = monomial_matrix(&pts, t);
        if linalg::rank(&m, monomial_count(t)) < monomial_count(t) {
            return Ok(t);
        }
    }
    unreachable!("the dimension count bounds the search")
}

/// Upper bound on `ω(S)` valid for ball-valued points as well.
pub fn omega_upper_bound(s: &PointSet) -> usize {
    match omega(s) {
        Ok(t) => t,
        Err(_) => dimension_bound(s.len()),
    }
}

/// A nonzero polynomial of total degree `<= t` vanishing on `S`, or `None`.
///
/// The kernel vector sets the first free monomial (graded lex order) to 1 and
/// is scaled so its first nonzero coefficient is 1.
pub fn fit_curve(s: &PointSet, t: usize) -> Result<Option<BivarPolynomial>> {
    if s.is_empty() {
        return Err(Error::InvalidParameters(
            "fit_curve needs a nonempty point set".into(),
        ));
    }
    let pts = s.exact_points()?;
    let m = monomial_matrix(&pts, t);
    let Some(v) = linalg::kernel_vector(&m, monomial_count(t)) else {
        return Ok(None);
    };
    let mut c = vec![vec![BigRational::zero(); t + 1]; t + 1];
    for ((i, j), x) in monomials(t).into_iter().zip(v) {
        c[i][j] = x;
    }
    BivarPolynomial::from_rationals(t, c).map(Some)
}

/// Value of a fitted curve at an exact point.
pub fn eval_exact(p: &BivarPolynomial, x: &BigRational, y: &BigRational) -> Option<BigRational> {
    let crate::zero_lemma::Coeffs::Exact(c) = &p.coeffs else {
        return None;
    };
    let mut acc = BigRational::zero();
    for (i, row) in c.iter().enumerate() {
        for (j, (re, im)) in row.iter().enumerate() {
            if !im.is_zero() {
                return None;
            }
            if !re.is_zero() {
                acc += re * pow(x, i) * pow(y, j);
            }
        }
    }
    Some(acc)
}

/// Parameters of the determinant-method inequality
/// `(AZ)^T > (4T)^(96d²/T) (M+1)^(16d) H^(48d²)`.
#[derive(Clone, Debug, Serialize)]
pub struct BPParameters {
    pub d: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "A")]
    pub a: RealBall,
    #[serde(rename = "Z")]
    pub z: RealBall,
    #[serde(rename = "M")]
    pub m: RealBall,
    #[serde(rename = "H")]
    pub h: RealBall,
}

impl BPParameters {
    /// Rejects `T < √(8d)`, `A <= 0`, `Z <= 0`, `M < 0` or `H < 1`.
    pub fn new(d: u64, t: u64, a: RealBall, z: RealBall, m: RealBall, h: RealBall) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if d < 1 {
            return bad("d must be at least 1".into());
        }
        if (t as u128) * (t as u128) < 8 * d as u128 {
            return bad(format!("T = {t} violates T >= sqrt(8d) for d = {d}"));
        }
        if !a.is_positive() || !z.is_positive() {
            return bad("A and Z must be positive".into());
        }
        if m.is_negative() || m.lower().is_negative() {
            return bad("M must be nonnegative".into());
        }
        if h.lower() < Dyadic::one() {
            return bad("H must be at least 1".into());
        }
        Ok(Self { d, t, a, z, m, h })
    }

    /// Convenience constructor from floating-point values (taken exactly).
    pub fn from_f64(d: u64, t: u64, a: f64, z: f64, m: f64, h: f64) -> Result<Self> {
        for v in [a, z, m, h] {
            if !v.is_finite() {
                return Err(Error::InvalidParameters("parameters must be finite".into()));
            }
        }
        Self::new(
            d,
            t,
            RealBall::from_f64(a),
            RealBall::from_f64(z),
            RealBall::from_f64(m),
            RealBall::from_f64(h),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BPCheck {
    pub holds: bool,
    /// Enclosure of `T log(AZ)`.
    pub lhs_log: RealBall,
    /// Enclosure of `(96d²/T) log(4T) + 16d log(M+1) + 48d² log H`.
    pub rhs_log: RealBall,
    pub lhs_log_f64: f64,
    pub rhs_log_f64: f64,
}

/// Compare both sides of the inequality in logarithms; `holds` is true only
/// when the lower end of the left enclosure exceeds the upper end of the right.
pub fn bp_condition(p: &BPParameters) -> Result<BPCheck> {
    let prec = BP_BITS;
    let d = p.d as i64;
    let t = p.t as i64;
    let lhs = p.a.mul(&p.z, prec).ln(prec)?.mul_i64(t, prec);
    let first = RealBall::from_i64(4 * t)
        .ln(prec)?
        .mul_i64(96 * d * d, prec)
        .div_i64(t, prec);
    let second =
        p.m.add(&RealBall::one(), prec)
            .ln(prec)?
            .mul_i64(16 * d, prec);
    let third = p.h.ln(prec)?.mul_i64(48 * d * d, prec);
    let rhs = first.add(&second, prec).add(&third, prec);
    Ok(BPCheck {
        holds: rhs.lt(&lhs),
        lhs_log_f64: lhs.to_f64(),
        rhs_log_f64: rhs.to_f64(),
        lhs_log: lhs,
        rhs_log: rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectedParameters {
    pub params: BPParameters,
    pub n: u64,
    /// `λ` after any doubling needed for `T >= √(8d)`.
    pub lambda: f64,
    /// Constant in the growth bound `M = Z^(cZ)`.
    pub c: f64,
    /// `16c`, the exponent constant of `(M+1)^(16d) <= Z^(c' d Z)`; `T = ⌈2c'dZ⌉`.
    pub c_prime: f64,
    /// `c d log H` and `Z log Z`, the two sides of the choice of `Z`.
    pub choice_lhs: f64,
    pub choice_rhs: f64,
}

fn z_for(n: u64, d: u64, h: f64, lambda: f64) -> f64 {
    let dl = d as f64 * h.ln();
    lambda * dl / dl.ln() + n as f64
}

/// Choose `Z = λ d log H / log(d log H) + n`, `T = ⌈2c'dZ⌉` with `c' = 16c`,
/// `A = 1` and `M = Z^(cZ)`.
///
/// `λ` is doubled until `T >= √(8d)`. Fails with `LambdaTooSmall` when
/// `c d log H <= Z log Z` does not hold at the resulting `Z`.
pub fn select_parameters(
    n: u64,
    d: u64,
    h: f64,
    lambda: f64,
    c: f64,
) -> Result<SelectedParameters> {
    if n < 2 || d < 1 || !(h >= 3.0) || !(lambda > 0.0) || !(c > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "parameter selection needs n >= 2, d >= 1, H >= 3, lambda > 0, c > 0 (got n={n}, d={d}, H={h}, lambda={lambda}, c={c})"
        )));
    }
    let dl = d as f64 * h.ln();
    if dl <= std::f64::consts::E {
        return Err(Error::Domain(format!("d log H = {dl} must exceed e")));
    }
    let c_prime = 16.0 * c;
    let mut lambda = lambda;
    let (z, t) = loop {
        let z = z_for(n, d, h, lambda);
        let t = (2.0 * c_prime * d as f64 * z).ceil() as u64;
        if (t as u128) * (t as u128) >= 8 * d as u128 {
            break (z, t);
        }
        lambda *= 2.0;
    };
    let choice_lhs = c * dl;
    let choice_rhs = z * z.ln();
    if choice_lhs > choice_rhs {
        return Err(Error::LambdaTooSmall {
            needed: choice_lhs,
            got: choice_rhs,
        });
    }
    let prec = BP_BITS;
    let zb = RealBall::from_f64(z);
    // M = Z^(cZ) = exp(cZ log Z)
    let m = zb.ln(prec)?.mul(&RealBall::from_f64(c * z), prec).exp(prec);
    let params = BPParameters::new(d, t, RealBall::one(), zb, m, RealBall::from_f64(h))?;
    Ok(SelectedParameters {
        params,
        n,
        lambda,
        c,
        c_prime,
        choice_lhs,
        choice_rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "H")]
    pub h: f64,
    pub selected: SelectedParameters,
    pub check: BPCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct Calibration {
    /// Smallest `λ = 2^k` (`k >= 0`) at which every sweep point passes.
    pub lambda0: f64,
    pub c: f64,
    pub points: Vec<SweepPoint>,
    pub pass: bool,
}

/// The sweep `d ∈ {1, 2}`, `H ∈ {10³, 10⁶}`, `n ∈ {2, 5}`.
pub fn default_sweep() -> Vec<(u64, u64, f64)> {
    let mut v = Vec::new();
    for d in [1, 2] {
        for h in [1e3, 1e6] {
            for n in [2, 5] {
                v.push((n, d, h));
            }
        }
    }
    v
}

/// Run `select_parameters` then `bp_condition` at `λ` for every sweep point.
pub fn run_sweep(sweep: &[(u64, u64, f64)], lambda: f64, c: f64) -> Result<Vec<SweepPoint>> {
    sweep
        .iter()
        .map(|&(n, d, h)| {
            let selected = select_parameters(n, d, h, lambda, c)?;
            let check = bp_condition(&selected.params)?;
            Ok(SweepPoint {
                n,
                d,
                h,
                selected,
                check,
            })
        })
        .collect()
}

/// Double `λ` from 1 until the whole sweep passes (at most `2^max_doublings`).
pub fn calibrate_lambda(
    sweep: &[(u64, u64, f64)],
    c: f64,
    max_doublings: u32,
) -> Result<Calibration> {
    let mut lambda = 1.0;
    for _ in 0..=max_doublings {
        if let Ok(points) = run_sweep(sweep, lambda, c) {
            if points.iter().all(|p| p.check.holds) {
                return Ok(Calibration {
                    lambda0: lambda,
                    c,
                    points,
                    pass: true,
                });
            }
        }
        lambda *= 2.0;
    }
    Err(Error::PrecisionExhausted {
        bits: BP_BITS,
        what: format!("no lambda up to 2^{max_doublings} satisfies the sweep"),
    })
}

/// Height `max(|p|, q)` of every coordinate, the `H` of an exact point set.
pub fn point_set_height(s: &PointSet) -> Result<BigInt> {
    Ok(s.exact_points()?
        .iter()
        .flat_map(|(x, y)| [crate::precision::height(x), crate::precision::height(y)])
        .max()
        .unwrap_or_else(BigInt::one))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn set(pts: &[(i64, i64)]) -> PointSet {
        PointSet::exact(pts.iter().map(|&(x, y)| (q(x, 1), q(y, 1))).collect())
    }

    #[test]
    fn monomial_order() {
        assert_eq!(
            monomials(2),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        assert_eq!(dimension_bound(5), 2);
        assert_eq!(dimension_bound(6), 3);
    }

    #[test]
    fn omega_small_sets() {
        assert_eq!(omega(&set(&[(3, 7)])).unwrap(), 1);
        let five = set(&[(0, 0), (1, 3), (2, 1), (5, 2), (3, 7)]);
        assert_eq!(omega(&five).unwrap(), 2);
        let six = set(&[(0, 0), (1, 3), (2, 1), (5, 2), (3, 7), (4, 11)]);
        assert_eq!(
            linalg::rank(&monomial_matrix(&six.exact_points().unwrap(), 2), 6),
            6
        );
        assert_eq!(omega(&six).unwrap(), 3);
        let ball = PointSet {
            points: vec![Point::Ball(ComplexBall::one(), ComplexBall::one())],
        };
        assert_eq!(omega(&ball), Err(Error::InexactInput));
        assert_eq!(omega_upper_bound(&ball), 1);
    }

    #[test]
    fn fitting() {
        let line = fit_curve(&set(&[(0, 0), (1, 1)]), 1).unwrap().unwrap();
        let mut want = BivarPolynomial::zero(1);
        want.set_exact(1, 0, q(1, 1));
        want.set_exact(0, 1, q(-1, 1));
        assert_eq!(line, want);
        let five = set(&[(0, 0), (1, 3), (2, 1), (5, 2), (3, 7)]);
        let conic = fit_curve(&five, 2).unwrap().unwrap();
        for p in &five.points {
            let Point::Exact(x, y) = p else {
                unreachable!()
            };
            assert!(eval_exact(&conic, x, y).unwrap().is_zero());
        }
        let six = set(&[(0, 0), (1, 3), (2, 1), (5, 2), (3, 7), (4, 11)]);
        assert!(fit_curve(&six, 2).unwrap().is_none());
    }

    #[test]
    fn csv_points() {
        let s = PointSet::from_csv("x_num,x_den,y_num,y_den\n1,2,3,1\n-4,6,0,1\n").unwrap();
        assert_eq!(s.points[1], Point::Exact(q(-2, 3), q(0, 1)));
        assert!(PointSet::from_csv("a,b\n").is_err());
        assert!(PointSet::from_csv("x_num,x_den,y_num,y_den\n1,0,1,1\n").is_err());
    }

    #[test]
    fn bp_examples() {
        let p = BPParameters::from_f64(1, 8, 1.0, 1.0, 0.0, 1.0).unwrap();
        let r = bp_condition(&p).unwrap();
        assert!(!r.holds);
        assert!(r.lhs_log_f64.abs() < 1e-30);
        assert!((r.rhs_log_f64 - 12.0 * 32f64.ln()).abs() < 1e-9);
        let p = BPParameters::from_f64(1, 100, 1.0, 1e6, 1.0, 3.0).unwrap();
        let r = bp_condition(&p).unwrap();
        assert!(r.holds);
        assert!((r.lhs_log_f64 - 1381.55).abs() < 0.01);
        assert!(BPParameters::from_f64(2, 3, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn parameter_selection() {
        let h = std::f64::consts::E.exp() * 2.0;
        let s = select_parameters(2, 1, h, 10.0, 1.0).unwrap();
        let z = 10.0 * h.ln() / h.ln().ln() + 2.0;
        assert!((s.params.z.to_f64() - z).abs() < 1e-9);
        assert_eq!(s.params.t, (32.0 * z).ceil() as u64);
        assert!(s.choice_lhs <= s.choice_rhs);
        let s2 = select_parameters(2, 1, h, 20.0, 1.0).unwrap();
        assert!(s2.params.z.to_f64() > s.params.z.to_f64() && s2.params.t > s.params.t);
        assert!(matches!(
            select_parameters(2, 4, 1e300, 1e-6, 1e3),
            Err(Error::LambdaTooSmall { .. })
        ));
        let cal = calibrate_lambda(&default_sweep(), 1.0, 20).unwrap();
        assert!(cal.pass && cal.points.iter().all(|p| p.check.holds));
    }
}
