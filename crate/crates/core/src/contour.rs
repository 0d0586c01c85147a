//! Certified zero counting by the argument principle.
//!
//! Each edge of the contour is bisected until the ball image of every
//! sub-segment excludes 0. A disk that misses 0 lies in an open half-plane,
//! so the argument change along that sub-segment is the principal value of
//! `arg(f(b)/f(a))`; summing these and dividing by `2π` gives an exact
//! winding number.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{reciprocal_gamma_and_derivative, reciprocal_gamma_fixed};
use crate::par;
use crate::precision::consts;
use crate::precision::{ComplexBall, Dyadic, Mag, PrecisionContext, RealBall};

/// Cells per edge before a boundary zero is declared.
pub const MAX_DEPTH: u32 = 16;

/// Default initial subdivision: `2^INITIAL_DEPTH` cells per edge.
pub const INITIAL_DEPTH: u32 = 3;

/// An analytic function evaluated on balls at a given precision.
pub type BallFn<'a> = dyn Fn(&ComplexBall, u32) -> Result<ComplexBall> + Sync + 'a;

/// `{ x + iy : -X <= x <= 1, -Y <= y <= Y }`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RectangleRegion {
    pub x: f64,
    pub y: f64,
}

impl RectangleRegion {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "rectangle needs X, Y > 0 (got {x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        re >= -self.x && re <= 1.0 && im.abs() <= self.y
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContourCount {
    pub count: i64,
    pub contour_cells: usize,
    /// Certified lower bound of `|f|` on the contour (an exact ball).
    pub min_boundary_modulus: RealBall,
    pub bits: u32,
}

#[derive(Clone, Debug)]
enum Edge {
    Segment {
        a: (Dyadic, Dyadic),
        b: (Dyadic, Dyadic),
    },
    Circle {
        centre: (Dyadic, Dyadic),
        radius: Dyadic,
    },
}

impl Edge {
    fn point(&self, t: &Dyadic, prec: u32) -> ComplexBall {
        match self {
            Edge::Segment { a, b } => ComplexBall::exact(
                a.0.add(&b.0.sub(&a.0).mul(t)),
                a.1.add(&b.1.sub(&a.1).mul(t)),
            )
            .round(prec),
            Edge::Circle { centre, radius } => {
                let theta = consts::pi(prec + 8)
                    .mul_2exp(1)
                    .mul(&RealBall::exact(t.clone()), prec + 8);
                let (s, c) = theta.sin_cos(prec + 8);
                let r = RealBall::exact(radius.clone());
                let re = c
                    .mul(&r, prec)
                    .add(&RealBall::exact(centre.0.clone()), prec);
                let im = s
                    .mul(&r, prec)
                    .add(&RealBall::exact(centre.1.clone()), prec);
                ComplexBall::from_parts(&re, &im)
            }
        }
    }

    /// A ball containing the part of the edge between parameters `t0 < t1`.
    fn enclose(&self, t0: &Dyadic, t1: &Dyadic, prec: u32) -> ComplexBall {
        let tm = t0.add(t1).mul_2exp(-1);
        let dt = Mag::from_dyadic(&t1.sub(t0));
        let centre = self.point(&tm, prec);
        let extra = match self {
            Edge::Segment { a, b } => {
                let dx = b.0.sub(&a.0);
                let dy = b.1.sub(&a.1);
                ComplexBall::exact(dx, dy)
                    .mid_abs_upper()
                    .mul(&dt)
                    .mul_2exp(-1)
            }
            // arc length R * 2π * dt, half of it reaches every point (3.15 > π)
            Edge::Circle { radius, .. } => {
                Mag::from_dyadic(radius).mul(&dt).mul(&Mag::from_f64(3.15))
            }
        };
        centre.add_error(extra)
    }
}

struct CellOutcome {
    delta: f64,
    cells: usize,
    min_modulus: Mag,
}

enum CellError {
    /// Depth limit reached; `suspect_precision` when a point value itself was unresolved.
    Boundary {
        near: ComplexBall,
        suspect_precision: bool,
    },
    Other(Error),
}

fn arg_delta(fa: &ComplexBall, fb: &ComplexBall) -> f64 {
    let mut d = fb.arg_f64() - fa.arg_f64();
    while d > std::f64::consts::PI {
        d -= std::f64::consts::TAU;
    }
    while d <= -std::f64::consts::PI {
        d += std::f64::consts::TAU;
    }
    d
}

/// Half-angle subtended by a ball that excludes 0, `asin(rad/|mid|)`.
fn half_angle(b: &ComplexBall) -> f64 {
    let lo = b.mid_abs_lower();
    let ratio = b.rad.div(&lo).to_f64();
    if ratio >= 1.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        ratio.asin()
    }
}

struct Walker<'a> {
    f: &'a BallFn<'a>,
    prec: u32,
}

impl Walker<'_> {
    fn value(&self, edge: &Edge, t: &Dyadic) -> std::result::Result<ComplexBall, CellError> {
        let z = edge.point(t, self.prec);
        let v = (self.f)(&z, self.prec).map_err(CellError::Other)?;
        if v.contains_zero() {
            return Err(CellError::Boundary {
                suspect_precision: v.rad > Mag::pow2(-(self.prec as i64) / 2),
                near: z,
            });
        }
        Ok(v)
    }

    fn cell(
        &self,
        edge: &Edge,
        t0: &Dyadic,
        t1: &Dyadic,
        f0: &ComplexBall,
        f1: &ComplexBall,
        depth: u32,
    ) -> std::result::Result<CellOutcome, CellError> {
        // a failed enclosure evaluation (ball too wide for some branch) just forces a split
        let img = (self.f)(&edge.enclose(t0, t1, self.prec), self.prec).ok();
        if let Some(img) = img.filter(|v| v.excludes_zero()) {
            // the whole image sits in a cone of half-angle < π/2 about mid(img)
            let spread = 2.0 * half_angle(&img) + half_angle(f0) + half_angle(f1);
            if spread < std::f64::consts::PI - 0.1 {
                return Ok(CellOutcome {
                    delta: arg_delta(f0, f1),
                    cells: 1,
                    min_modulus: img.abs_lower(),
                });
            }
        }
        if depth >= MAX_DEPTH {
            return Err(CellError::Boundary {
                near: edge.enclose(t0, t1, 64),
                suspect_precision: false,
            });
        }
        let tm = t0.add(t1).mul_2exp(-1);
        let fm = self.value(edge, &tm)?;
        let left = self.cell(edge, t0, &tm, f0, &fm, depth + 1)?;
        let right = self.cell(edge, &tm, t1, &fm, f1, depth + 1)?;
        Ok(CellOutcome {
            delta: left.delta + right.delta,
            cells: left.cells + right.cells,
            min_modulus: left.min_modulus.min(right.min_modulus),
        })
    }
}

fn winding_once(
    f: &BallFn<'_>,
    edges: &[Edge],
    prec: u32,
    initial_depth: u32,
) -> std::result::Result<ContourCount, CellError> {
    let walker = Walker { f, prec };
    let n0 = 1i64 << initial_depth;
    let jobs: Vec<(usize, i64)> = (0..edges.len())
        .flat_map(|e| (0..n0).map(move |k| (e, k)))
        .collect();
    let outcomes = par::map(&jobs, |&(e, k)| {
        let edge = &edges[e];
        let t0 = Dyadic::from_i64(k).mul_2exp(-(initial_depth as i64));
        let t1 = Dyadic::from_i64(k + 1).mul_2exp(-(initial_depth as i64));
        let f0 = walker.value(edge, &t0)?;
        let f1 = walker.value(edge, &t1)?;
        walker.cell(edge, &t0, &t1, &f0, &f1, initial_depth)
    });
    let mut total = 0.0;
    let mut cells = 0;
    let mut min_mod: Option<Mag> = None;
    for o in outcomes {
        let o = o?;
        total += o.delta;
        cells += o.cells;
        min_mod = Some(match min_mod {
            None => o.min_modulus,
            Some(m) => m.min(o.min_modulus),
        });
    }
    let turns = total / std::f64::consts::TAU;
    let count = turns.round();
    if (turns - count).abs() > 0.25 {
        return Err(CellError::Other(Error::PrecisionExhausted {
            bits: prec,
            what: format!("winding sum {turns} is not near an integer"),
        }));
    }
    Ok(ContourCount {
        count: count as i64,
        contour_cells: cells,
        min_boundary_modulus: RealBall::exact(min_mod.unwrap_or_default().to_dyadic()),
        bits: prec,
    })
}

/// Winding number of `f` along a closed contour, escalating precision only
/// when a point value could not be separated from 0.
fn winding(
    f: &BallFn<'_>,
    edges: &[Edge],
    ctx: &PrecisionContext,
    initial_depth: u32,
) -> Result<ContourCount> {
    let mut last = None;
    for c in ctx.schedule() {
        match winding_once(f, edges, c.bits, initial_depth) {
            Ok(r) => return Ok(r),
            Err(CellError::Other(e)) => return Err(e),
            Err(CellError::Boundary {
                near,
                suspect_precision,
            }) => {
                let err = Error::BoundaryZero {
                    near: format!("{near:?}"),
                };
                if !suspect_precision {
                    return Err(err);
                }
                last = Some(err);
            }
        }
    }
    Err(last.unwrap_or(Error::PrecisionExhausted {
        bits: ctx.max_bits,
        what: "contour".into(),
    }))
}

fn rectangle_edges(region: &RectangleRegion) -> Vec<Edge> {
    let x = Dyadic::from_f64(-region.x);
    let y = Dyadic::from_f64(region.y);
    let one = Dyadic::one();
    let c = [
        (x.clone(), y.neg()),
        (one.clone(), y.neg()),
        (one, y.clone()),
        (x, y),
    ];
    (0..4)
        .map(|i| Edge::Segment {
            a: c[i].clone(),
            b: c[(i + 1) % 4].clone(),
        })
        .collect()
}

/// Winding number of `f` around the boundary of `region`.
pub fn count_in_rectangle(
    f: &BallFn<'_>,
    region: &RectangleRegion,
    ctx: &PrecisionContext,
    initial_depth: u32,
) -> Result<ContourCount> {
    winding(f, &rectangle_edges(region), ctx, initial_depth)
}

/// Number of solutions of `G(z) = w` in the rectangle, with multiplicity.
pub fn count_solutions_rectangle(
    w: &ComplexBall,
    region: &RectangleRegion,
    ctx: &PrecisionContext,
) -> Result<ContourCount> {
    count_solutions_rectangle_with(w, region, ctx, INITIAL_DEPTH)
}

/// As [`count_solutions_rectangle`] with an explicit initial subdivision depth.
pub fn count_solutions_rectangle_with(
    w: &ComplexBall,
    region: &RectangleRegion,
    ctx: &PrecisionContext,
    initial_depth: u32,
) -> Result<ContourCount> {
    let f = |z: &ComplexBall, prec: u32| -> Result<ComplexBall> {
        Ok(reciprocal_gamma_fixed(z, prec)?.0.sub(w, prec))
    };
    count_in_rectangle(&f, region, ctx, initial_depth)
}

/// Zeros of `f` in the disk `|z - centre| <= radius`.
pub fn count_zeros_disk_at(
    f: &BallFn<'_>,
    centre: (f64, f64),
    radius: f64,
    ctx: &PrecisionContext,
) -> Result<ContourCount> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameters(format!("disk radius {radius}")));
    }
    let edges = [Edge::Circle {
        centre: (Dyadic::from_f64(centre.0), Dyadic::from_f64(centre.1)),
        radius: Dyadic::from_f64(radius),
    }];
    winding(f, &edges, ctx, INITIAL_DEPTH + 2)
}

/// Zeros of `f` in `|z| <= radius`.
pub fn count_zeros_disk(
    f: &BallFn<'_>,
    radius: f64,
    ctx: &PrecisionContext,
) -> Result<ContourCount> {
    count_zeros_disk_at(f, (0.0, 0.0), radius, ctx)
}

/// [`count_zeros_disk`], retrying at `R ± 2^-6 (1 + k/8)`, k = 0..7, when
/// the circle meets a zero. Returns the count and the radius used.
pub fn count_zeros_disk_nudged(
    f: &BallFn<'_>,
    radius: f64,
    ctx: &PrecisionContext,
) -> Result<(ContourCount, f64)> {
    match count_zeros_disk(f, radius, ctx) {
        Err(Error::BoundaryZero { near }) => {
            for k in 0..8 {
                let d = (1.0 + k as f64 / 8.0) / 64.0;
                for r in [radius + d, radius - d] {
                    match count_zeros_disk(f, r, ctx) {
                        Ok(c) => return Ok((c, r)),
                        Err(Error::BoundaryZero { .. }) => continue,
                        Err(e) => return Err(e),
                    }
                }
            }
            Err(Error::BoundaryZero { near })
        }
        other => other.map(|c| (c, radius)),
    }
}

/// Nearest admissible `X⁻ <= X <= X⁺` at distance at least 1/4 from every
/// integer and at most 1/2 from `X`.
pub fn safe_x(x: f64) -> (f64, f64) {
    let n = x.round();
    if (x - n).abs() >= 0.25 {
        (x, x)
    } else {
        (n - 0.25, n + 0.25)
    }
}

/// A root found by Newton iteration and certified by a small winding check.
#[derive(Clone, Debug, Serialize)]
pub struct CertifiedRoot {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub multiplicity: i64,
}

/// Independent solution count for `G(z) = w` in the rectangle: Newton from a
/// seed grid (at least 200 seeds) plus the points `-k ± 0.1`, deduplicated,
/// each root certified by a winding number on a small disk.
pub fn newton_oracle(
    w: &ComplexBall,
    region: &RectangleRegion,
    ctx: &PrecisionContext,
) -> Result<Vec<CertifiedRoot>> {
    let bits = ctx.bits.min(64);
    let cert_ctx = PrecisionContext::new(bits, ctx.max_bits.max(bits), 2)?;
    let nx = ((4.0 * (region.x + 1.0)).ceil() as usize).max(50);
    let ny = 4;
    let mut seeds = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let re = -region.x + (region.x + 1.0) * (i as f64 + 0.5) / nx as f64;
            let im = -region.y + 2.0 * region.y * (j as f64 + 0.5) / ny as f64;
            seeds.push((re, im));
        }
    }
    let kmax = region.x.floor() as i64;
    for k in 0..=kmax {
        seeds.push((-(k as f64) - 0.1, 0.05));
        seeds.push((-(k as f64) + 0.1, -0.05));
    }
    // locating roots only needs double precision; certification uses balls
    let wf = w.to_f64_pair();
    let wf = Complex64::new(wf.0, wf.1);
    let found = par::map(&seeds, |&(re, im)| newton_f64(wf, Complex64::new(re, im)));
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for (re, im) in found.into_iter().flatten() {
        if !region.contains(re, im) {
            continue;
        }
        if roots.iter().all(|r| (r.0 - re).hypot(r.1 - im) > 1e-6) {
            roots.push((re, im));
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let f = |z: &ComplexBall, prec: u32| -> Result<ComplexBall> {
        Ok(reciprocal_gamma_fixed(z, prec)?.0.sub(w, prec))
    };
    let mut out = Vec::with_capacity(roots.len());
    for (i, &(re, im)) in roots.iter().enumerate() {
        let nearest = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| (r.0 - re).hypot(r.1 - im))
            .fold(f64::INFINITY, f64::min);
        let radius = (nearest / 3.0).min(1e-3);
        let c = count_zeros_disk_at(&f, (re, im), radius, &cert_ctx)?;
        out.push(CertifiedRoot {
            re,
            im,
            radius,
            multiplicity: c.count,
        });
    }
    Ok(out)
}

/// `log Γ(z)` for `Re z >= 1/2` in double precision (shift plus Stirling).
fn ln_gamma_f64(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

/// `ψ(z)` for `Re z >= 1/2` in double precision.
fn digamma_f64(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 15.0 {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    w.ln() - 0.5 * inv - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0)) - shift
}

/// `(G(z), G'(z))` in double precision, by reflection on the left half.
fn reciprocal_gamma_f64(z: Complex64) -> (Complex64, Complex64) {
    use std::f64::consts::PI;
    if z.re >= 0.5 {
        let g = (-ln_gamma_f64(z)).exp();
        (g, -g * digamma_f64(z))
    } else {
        // G(z) = sin(πz) Γ(1-z) / π
        let gm = ln_gamma_f64(1.0 - z).exp();
        let (s, c) = ((PI * z).sin(), (PI * z).cos());
        let g = s * gm / PI;
        let dg = gm * (c - s * digamma_f64(1.0 - z) / PI);
        (g, dg)
    }
}

/// Double-precision Newton iteration for `G(z) = w`.
fn newton_f64(w: Complex64, seed: Complex64) -> Option<(f64, f64)> {
    let mut z = seed;
    for _ in 0..100 {
        let (g, dg) = reciprocal_gamma_f64(z);
        let step = (g - w) / dg;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z -= step;
        if z.re.abs() > 1e4 || z.im.abs() > 1e3 {
            return None;
        }
        if step.norm() <= 1e-13 * z.norm().max(1.0) {
            return Some((z.re, z.im));
        }
    }
    None
}

/// Newton iteration for `G(z) = w` from one seed; `None` if it does not settle.
pub fn newton(w: &ComplexBall, re: f64, im: f64, bits: u32) -> Option<(f64, f64)> {
    let z = newton_ball(w, &ComplexBall::from_f64(re, im), bits, 80)?;
    let (zr, zi) = z.to_f64_pair();
    Some((zr, zi))
}

/// Newton iteration at `bits` of working precision; returns the exact
/// midpoint once the step falls below `2^(-bits/2)`.
pub fn newton_ball(
    w: &ComplexBall,
    seed: &ComplexBall,
    bits: u32,
    max_iter: usize,
) -> Option<ComplexBall> {
    let mut z = seed.mid();
    for _ in 0..max_iter {
        let (g, dg) = reciprocal_gamma_and_derivative(&z, bits).ok()?;
        let step = g.mid().sub(&w.mid(), bits).div(&dg, bits).ok()?.mid();
        z = z.sub(&step, bits).mid();
        let (zr, zi) = z.to_f64_pair();
        if !zr.is_finite() || zr.abs() > 1e4 || zi.abs() > 1e3 {
            return None;
        }
        if step.log2_abs_f64() < -(bits as f64) / 2.0 {
            return Some(z);
        }
    }
    None
}

/// Winding counts are exact at any precision, so counting starts at (at most)
/// 64 bits and relies on escalation when a cell cannot be decided.
pub fn counting_context(ctx: &PrecisionContext) -> PrecisionContext {
    let bits = ctx.bits.min(64);
    PrecisionContext {
        bits,
        max_bits: ctx.max_bits.max(bits),
        escalation_factor: ctx.escalation_factor,
    }
}

/// `n` deterministic sample points in the disk `|w| <= 0.95 radius`, on a
/// sunflower spiral (area-uniform radii, golden-angle turns), rounded to f64.
pub fn w_sample(n: usize, radius: f64) -> Vec<(f64, f64)> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|j| {
            let rho = 0.95 * radius * ((j as f64 + 0.5) / n as f64).sqrt();
            let theta = golden * j as f64;
            (rho * theta.cos(), rho * theta.sin())
        })
        .collect()
}

/// Certified count of `G(z) = w` in `Z(X, 1)` against the Newton oracle.
#[derive(Clone, Debug, Serialize)]
pub struct CountCheck {
    pub w: (f64, f64),
    #[serde(rename = "X")]
    pub x: f64,
    pub count: i64,
    /// Sum of certified multiplicities of the oracle's roots.
    pub oracle_count: Option<i64>,
    pub oracle_matches: bool,
    /// `|count - X|`.
    pub deviation: f64,
    pub bits: u32,
}

/// [`count_solutions_rectangle`] on `Z(X, 1)`, optionally with the oracle.
pub fn count_check(
    w: (f64, f64),
    x: f64,
    with_oracle: bool,
    ctx: &PrecisionContext,
) -> Result<CountCheck> {
    let wb = ComplexBall::from_f64(w.0, w.1);
    let region = RectangleRegion::new(x, 1.0)?;
    let c = count_solutions_rectangle(&wb, &region, &counting_context(ctx))?;
    let oracle_count = if with_oracle {
        Some(
            newton_oracle(&wb, &region, ctx)?
                .iter()
                .map(|r| r.multiplicity)
                .sum(),
        )
    } else {
        None
    };
    Ok(CountCheck {
        w,
        x,
        count: c.count,
        oracle_matches: oracle_count.is_none_or(|o| o == c.count),
        oracle_count,
        deviation: (c.count as f64 - x).abs(),
        bits: c.bits,
    })
}

/// `|count - X|` over a sweep, the observed constant in `N(X, w) = X + O(1)`.
pub fn max_deviation(counts: &[(f64, i64)]) -> f64 {
    counts
        .iter()
        .map(|(x, c)| (*c as f64 - x).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(64, 256, 2).unwrap()
    }

    #[test]
    fn safe_x_examples() {
        assert_eq!(safe_x(10.0), (9.75, 10.25));
        assert_eq!(safe_x(10.3), (10.3, 10.3));
        assert_eq!(safe_x(7.9), (7.75, 8.25));
    }

    #[test]
    fn zeros_of_reciprocal_gamma_in_rectangle() {
        let r = RectangleRegion::new(10.5, 1.0).unwrap();
        let c = count_solutions_rectangle(&ComplexBall::zero(), &r, &ctx()).unwrap();
        assert_eq!(c.count, 11);
        assert!(c.min_boundary_modulus.mid > Dyadic::zero());
    }

    #[test]
    fn boundary_through_zero_is_reported() {
        let r = RectangleRegion::new(3.0, 1.0).unwrap();
        let e = count_solutions_rectangle(&ComplexBall::zero(), &r, &PrecisionContext::fixed(64));
        assert!(matches!(e, Err(Error::BoundaryZero { .. })), "{e:?}");
    }

    #[test]
    fn disk_counts_with_multiplicity() {
        let g = |z: &ComplexBall, p: u32| Ok(reciprocal_gamma_fixed(z, p)?.0);
        assert_eq!(count_zeros_disk(&g, 5.5, &ctx()).unwrap().count, 6);
        let g3 = |z: &ComplexBall, p: u32| {
            let v = reciprocal_gamma_fixed(z, p)?.0;
            Ok(v.mul(&v, p).mul(&v, p))
        };
        assert_eq!(count_zeros_disk(&g3, 4.5, &ctx()).unwrap().count, 15);
        let zg = |z: &ComplexBall, p: u32| Ok(reciprocal_gamma_fixed(z, p)?.0.mul(z, p));
        assert_eq!(count_zeros_disk(&zg, 3.5, &ctx()).unwrap().count, 5);
    }

    #[test]
    fn nudge_recovers_from_boundary_zero() {
        let g = |z: &ComplexBall, p: u32| Ok(reciprocal_gamma_fixed(z, p)?.0);
        let (c, r) = count_zeros_disk_nudged(&g, 3.0, &PrecisionContext::fixed(64)).unwrap();
        assert_ne!(r, 3.0);
        assert_eq!(c.count, if r > 3.0 { 4 } else { 3 });
    }

    #[test]
    fn oracle_agrees_for_small_w() {
        let w = ComplexBall::from_f64(0.1, 0.0);
        let r = RectangleRegion::new(8.5, 1.0).unwrap();
        let c = count_solutions_rectangle(&w, &r, &ctx()).unwrap();
        let roots = newton_oracle(&w, &r, &ctx()).unwrap();
        let total: i64 = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(c.count, total);
    }
}
