//! Interpolation points `w_l` and pre-images `z_{k,l}` with certified spacing.
//!
//! The five conditions checked for every certificate are
//!
//! 1. `|w_l| <= r0`;
//! 2. `|w_l - w_i| >= c L^(-1/2)` for `l != i`;
//! 3. `|z_{k,l} - 1| >= 1`;
//! 4. `|z_{k,l}| <= c0 L`;
//! 5. `∏_{j != k} |z_{k,l} - z_{j,l}| >= (L-1)!`,
//!
//! together with `G(z_{k,l}) = w_l` up to a certified residual.

use num_bigint::BigInt;
use serde::Serialize;

use crate::contour::{count_zeros_disk_at, newton_ball};
use crate::error::{Error, Result};
use crate::gamma::reciprocal_gamma_fixed;
use crate::par;
use crate::precision::consts;
use crate::precision::{ComplexBall, Dyadic, Mag, PrecisionContext, RealBall};

/// Large-|x| cutoff used in the boundary estimates.
pub const CUTOFF_R: i64 = 2;
/// Number of leading product factors bounded individually.
pub const CUTOFF_N0: i64 = 4;
/// Constant in condition 4, `|z| <= c0 L`.
pub const GRID_C0: f64 = 4.0;
/// Newton seed offsets, tried in order.
pub const DELTA_SCHEDULE: [f64; 4] = [0.1, 0.15, 0.05, 0.2];

#[derive(Clone, Debug, Serialize)]
pub struct R0 {
    /// `min(components) / 2`, rounded down.
    pub r0: f64,
    pub components: [RealBall; 3],
    /// Lower bound for `|G(-X + iy)|` when `X` is at least 1/4 from the integers.
    pub vertical_bound: RealBall,
    pub vertical_ok: bool,
}

/// The three boundary constraints on `r0` with `R = 2`, `n0 = 4`.
pub fn compute_r0(ctx: &PrecisionContext) -> R0 {
    let p = ctx.bits + 16;
    let pi = consts::pi(p);
    let e = RealBall::one().exp(p);
    let r = CUTOFF_R;
    // ((1+R)/e)^(R+1/2)
    let base = RealBall::from_i64(1 + r).div(&e, p).unwrap();
    let expo = RealBall::from_f64(r as f64 + 0.5);
    let power = base.ln(p).unwrap().mul(&expo, p).exp(p);
    let exp_half_pi = pi.mul_2exp(-1).neg().exp(p);
    let (sinh_pi, _) = pi.sinh_cosh(p);
    let c0 = RealBall::exact(Dyadic::pow2(-1));
    let two_pi_e = pi.mul_2exp(1).mul(&e, p);
    let c1 = two_pi_e
        .sqrt(p)
        .unwrap()
        .inv(p)
        .unwrap()
        .mul(&sinh_pi, p)
        .mul(&exp_half_pi, p)
        .mul(&power, p);
    // e^(-γR - R²ζ(2)/2) ∏_{n<n0} e^(-1/n) / n
    let gamma = consts::euler_gamma(p);
    let zeta2 = consts::zeta(2, p);
    let mut expo2 = gamma
        .mul_i64(r, p)
        .add(&zeta2.mul_i64(r * r, p).mul_2exp(-1), p)
        .neg();
    let mut fact = 1i64;
    for n in 1..CUTOFF_N0 {
        expo2 = expo2.sub(&RealBall::one().div_i64(n, p), p);
        fact *= n;
    }
    let c2 = expo2.exp(p).div_i64(fact, p);
    let four_pi_e = two_pi_e.mul_2exp(1);
    let vertical = four_pi_e
        .sqrt(p)
        .unwrap()
        .inv(p)
        .unwrap()
        .mul(&exp_half_pi, p)
        .mul(&power, p);
    let lows = [&c0, &c1, &c2].map(|b| b.lower().to_f64());
    let min = lows.iter().cloned().fold(f64::INFINITY, f64::min);
    // round down to a short dyadic so that r0 is exact and strictly below every component
    let r0 = Dyadic::from_f64(min / 2.0).round_dir(24, false).to_f64();
    let vertical_ok = vertical.lower() >= Dyadic::from_f64(r0);
    R0 {
        r0,
        components: [c0, c1.round(ctx.bits), c2.round(ctx.bits)],
        vertical_bound: vertical.round(ctx.bits),
        vertical_ok,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCertificate {
    #[serde(rename = "L")]
    pub l: usize,
    pub r0: f64,
    /// Spacing constant of condition 2 (`r0 / 4`).
    pub c: f64,
    /// Constant of condition 4.
    pub c0: f64,
    /// `max |z_{k,l}| / L`.
    pub realized_c0: f64,
    pub bits: u32,
    pub w: Vec<ComplexBall>,
    /// `z[k][l]` solves `G(z) = w_l`.
    pub z: Vec<Vec<ComplexBall>>,
    /// The negative integer each `z[k][l]` is certified to lie near.
    pub anchors: Vec<Vec<i64>>,
    /// Winding number of `G - w_l` on the radius-1/4 disk at the anchor.
    pub winding: Vec<Vec<i64>>,
    pub cond_flags: [bool; 5],
    /// `log2` of certified upper bounds of `|G(z_{k,l}) - w_l|`.
    pub residual_log2: Vec<Vec<f64>>,
}

impl GridCertificate {
    pub fn all_pass(&self) -> bool {
        let limit = -(self.bits as f64) / 2.0;
        self.cond_flags.iter().all(|&f| f)
            && self.residual_log2.iter().flatten().all(|&r| r <= limit)
            && self.winding.iter().flatten().all(|&m| m == 1)
    }
}

/// `w_l = (r0/2)(1 + l/(2L)) e^(2πi l/(L+1))`.
fn grid_values(l_max: usize, r0: f64, prec: u32) -> Vec<ComplexBall> {
    let pi2 = consts::pi(prec + 8).mul_2exp(1);
    (0..=l_max)
        .map(|l| {
            let modulus = RealBall::from_f64(r0 / 2.0).mul(
                &RealBall::one().add(
                    &RealBall::from_i64(l as i64).div_i64(2 * l_max as i64, prec),
                    prec,
                ),
                prec,
            );
            let theta = pi2.mul_i64(l as i64, prec).div_i64(l_max as i64 + 1, prec);
            let (s, c) = theta.sin_cos(prec);
            // exact midpoint keeps the targets exactly representable
            ComplexBall::from_parts(&c.mul(&modulus, prec), &s.mul(&modulus, prec)).mid()
        })
        .collect()
}

fn log2_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).log2()).sum()
}

/// Build and certify the interpolation grid for a given `L >= 2`.
pub fn build_grid(l_max: usize, ctx: &PrecisionContext) -> Result<GridCertificate> {
    let cert = build_grid_unchecked(l_max, ctx)?;
    if let Some(k) = cert.cond_flags.iter().position(|f| !f) {
        return Err(Error::ConditionFailed(k as u8 + 1));
    }
    Ok(cert)
}

/// Build the grid and compute its flags without failing on a false flag.
pub fn build_grid_unchecked(l_max: usize, ctx: &PrecisionContext) -> Result<GridCertificate> {
    if l_max < 2 {
        return Err(Error::InvalidParameters(format!(
            "grid needs L >= 2, got {l_max}"
        )));
    }
    let bits = ctx.bits;
    let r0 = compute_r0(ctx).r0;
    let w = grid_values(l_max, r0, bits + 32);
    let anchor = |k: usize| -2 * (k as i64 + 1);
    let newton_bits = bits + 2 * log2_factorial(2 * l_max + 2).ceil() as u32 + 64;
    let cells: Vec<(usize, usize)> = (0..=l_max)
        .flat_map(|k| (0..=l_max).map(move |l| (k, l)))
        .collect();
    let solved = par::map(&cells, |&(k, l)| -> Result<(ComplexBall, f64, i64)> {
        let m = anchor(k);
        let wl = &w[l];
        let mut root = None;
        for delta in DELTA_SCHEDULE {
            let seed = ComplexBall::from_f64(m as f64 - delta, 0.0);
            if let Some(z) = newton_ball(wl, &seed, newton_bits, 100) {
                let (zr, zi) = z.to_f64_pair();
                if (zr - m as f64).hypot(zi) < 0.25 {
                    root = Some(z.round(newton_bits));
                    break;
                }
            }
        }
        let z = root.ok_or_else(|| Error::NewtonDivergence {
            seed: format!("z near {m} for w_{l}"),
        })?;
        let g = reciprocal_gamma_fixed(&z, newton_bits)?.0;
        let residual = g.sub(wl, newton_bits).abs_upper().log2();
        let f = |x: &ComplexBall, p: u32| -> Result<ComplexBall> {
            Ok(reciprocal_gamma_fixed(x, p)?.0.sub(wl, p))
        };
        let wind =
            count_zeros_disk_at(&f, (m as f64, 0.0), 0.25, &PrecisionContext::fixed(64))?.count;
        Ok((z, residual, wind))
    });
    let mut z = vec![Vec::with_capacity(l_max + 1); l_max + 1];
    let mut residual_log2 = vec![Vec::with_capacity(l_max + 1); l_max + 1];
    let mut winding = vec![Vec::with_capacity(l_max + 1); l_max + 1];
    for (&(k, _), s) in cells.iter().zip(solved) {
        let (zk, res, wind) = s?;
        z[k].push(zk);
        residual_log2[k].push(res);
        winding[k].push(wind);
    }
    let anchors = (0..=l_max).map(|k| vec![anchor(k); l_max + 1]).collect();
    let mut cert = GridCertificate {
        l: l_max,
        r0,
        c: r0 / 4.0,
        c0: GRID_C0,
        realized_c0: 0.0,
        bits,
        w,
        z,
        anchors,
        winding,
        cond_flags: [false; 5],
        residual_log2,
    };
    let flags = check_conditions(&cert, newton_bits);
    cert.cond_flags = flags.flags;
    cert.realized_c0 = flags.realized_c0;
    Ok(cert)
}

struct Flags {
    flags: [bool; 5],
    realized_c0: f64,
}

fn check_conditions(cert: &GridCertificate, prec: u32) -> Flags {
    let l_max = cert.l;
    let r0 = Mag::from_dyadic_lower(&Dyadic::from_f64(cert.r0));
    let c1 = cert.w.iter().all(|w| w.abs_upper() <= r0);
    // |w_l - w_i|^2 L >= c^2
    let c = Mag::from_f64(cert.c);
    let c_sq = c.mul(&c);
    let mut c2 = true;
    for l in 0..=l_max {
        for i in l + 1..=l_max {
            let d = cert.w[l].sub(&cert.w[i], prec).abs_lower();
            if d.mul_lower(&d).mul_lower(&Mag::from_f64(l_max as f64)) < c_sq {
                c2 = false;
            }
        }
    }
    let one = ComplexBall::one();
    let unit = Mag::pow2(0);
    let c3 = cert
        .z
        .iter()
        .flatten()
        .all(|z| z.sub(&one, prec).abs_lower() >= unit);
    let bound = Mag::from_f64(cert.c0 * l_max as f64);
    let c4 = cert.z.iter().flatten().all(|z| z.abs_upper() <= bound);
    let realized_c0 = cert
        .z
        .iter()
        .flatten()
        .map(|z| z.abs_upper().to_f64())
        .fold(0.0, f64::max)
        / l_max as f64;
    let fact: BigInt = (1..l_max as u64).map(BigInt::from).product();
    let fact = Mag::from_dyadic(&Dyadic::from_int(fact));
    let mut c5 = true;
    for l in 0..=l_max {
        for k in 0..=l_max {
            let mut prod = Mag::pow2(0);
            for j in 0..=l_max {
                if j != k {
                    prod = prod.mul_lower(&cert.z[k][l].sub(&cert.z[j][l], prec).abs_lower());
                }
            }
            if prod < fact {
                c5 = false;
            }
        }
    }
    Flags {
        flags: [c1, c2, c3, c4, c5],
        realized_c0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridVerification {
    #[serde(rename = "L")]
    pub l: usize,
    pub conditions: [bool; 5],
    pub residuals_ok: bool,
    pub max_residual_log2: f64,
    pub realized_c0: f64,
    pub pass: bool,
}

/// Re-check a certificate: conditions via exact rational distances and
/// residuals by fresh evaluation at twice the certificate precision.
pub fn verify_grid(cert: &GridCertificate, ctx: &PrecisionContext) -> GridVerification {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    let l_max = cert.l;
    let bits = ctx.bits.max(cert.bits);
    let limit = -(cert.bits as f64) / 2.0;
    let sq = |a: &ComplexBall, b: &ComplexBall| -> BigRational {
        let dx = a.re.to_rational() - b.re.to_rational();
        let dy = a.im.to_rational() - b.im.to_rational();
        &dx * &dx + &dy * &dy
    };
    // lower bound of the squared distance between two balls: (sqrt(d2) - r)^2, or 0
    let lower_sq = |d2: &BigRational, r: &BigRational| -> BigRational {
        if d2 <= &(r * r) {
            return BigRational::zero();
        }
        let s = RealBall::from_rational(d2, 128)
            .sqrt(128)
            .unwrap()
            .lower()
            .to_rational();
        let t = s - r;
        if t.is_zero() || t < BigRational::zero() {
            BigRational::zero()
        } else {
            &t * &t
        }
    };
    let rad = |b: &ComplexBall| b.rad.to_dyadic().to_rational();
    let r0 = Dyadic::from_f64(cert.r0).to_rational();
    let zero = ComplexBall::zero();
    let c1 = cert.w.iter().all(|w| {
        let d2 = sq(w, &zero);
        let r = rad(w);
        // |w| + r <= r0  <=>  d2 <= (r0 - r)^2 when r0 >= r
        r <= r0 && d2 <= (&r0 - &r) * (&r0 - &r)
    });
    let c = Dyadic::from_f64(cert.c).to_rational();
    let lq = BigRational::from_integer(BigInt::from(l_max as u64));
    let mut c2 = true;
    for l in 0..=l_max {
        for i in l + 1..=l_max {
            let d2 = sq(&cert.w[l], &cert.w[i]);
            let r = rad(&cert.w[l]) + rad(&cert.w[i]);
            if lower_sq(&d2, &r) * &lq < &c * &c {
                c2 = false;
            }
        }
    }
    let one = ComplexBall::one();
    let c3 = cert
        .z
        .iter()
        .flatten()
        .all(|z| lower_sq(&sq(z, &one), &rad(z)) >= BigRational::one());
    let bound = BigRational::from_integer(BigInt::from((cert.c0 * l_max as f64).floor() as i64));
    let c4 = cert.z.iter().flatten().all(|z| {
        let r = rad(z);
        let b = &bound - &r;
        b > BigRational::zero() && sq(z, &zero) <= &b * &b
    });
    let fact: BigInt = (1..l_max as u64).map(BigInt::from).product();
    let fact_sq = BigRational::from_integer(&fact * &fact);
    let mut c5 = true;
    for l in 0..=l_max {
        for k in 0..=l_max {
            let mut prod = BigRational::one();
            for j in 0..=l_max {
                if j != k {
                    let r = rad(&cert.z[k][l]) + rad(&cert.z[j][l]);
                    prod *= lower_sq(&sq(&cert.z[k][l], &cert.z[j][l]), &r);
                }
            }
            if prod < fact_sq {
                c5 = false;
            }
        }
    }
    let cells: Vec<(usize, usize)> = (0..=l_max)
        .flat_map(|k| (0..=l_max).map(move |l| (k, l)))
        .collect();
    let residuals = par::map(&cells, |&(k, l)| {
        let p = 2 * bits + 2 * log2_factorial(2 * l_max + 2).ceil() as u32;
        match reciprocal_gamma_fixed(&cert.z[k][l], p) {
            Ok((g, _)) => g.sub(&cert.w[l], p).abs_upper().log2(),
            Err(_) => f64::INFINITY,
        }
    });
    let max_residual_log2 = residuals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let residuals_ok = max_residual_log2 <= limit;
    let realized_c0 = cert
        .z
        .iter()
        .flatten()
        .map(|z| z.abs_upper().to_f64())
        .fold(0.0, f64::max)
        / l_max as f64;
    let conditions = [c1, c2, c3, c4, c5];
    GridVerification {
        l: l_max,
        conditions,
        residuals_ok,
        max_residual_log2,
        realized_c0,
        pass: residuals_ok && conditions.iter().all(|&f| f),
    }
}
