//! Browser bindings for three interactive operations: evaluating `1/Γ`,
//! counting solutions of `1/Γ(z) = w` in a rectangle, and a small census of
//! rational points.
//!
//! The `#[wasm_bindgen]` wrappers are thin; the logic lives in plain functions
//! returning JSON strings so it can be tested on the host.

use serde_json::json;
use wasm_bindgen::prelude::*;

use gamma_points::census::{point_f64, run_census, Verdict};
use gamma_points::contour::{count_solutions_rectangle, RectangleRegion};
use gamma_points::gamma::{gamma, reciprocal_gamma};
use gamma_points::{ComplexBall, Error, PrecisionContext};

/// Upper limits that keep a single call interactive in the browser.
pub const MAX_BITS: u32 = 1024;
pub const MAX_X: f64 = 30.5;
pub const MAX_D: u64 = 60;

fn ctx(bits: u32) -> Result<PrecisionContext, String> {
    let bits = bits.clamp(32, MAX_BITS);
    PrecisionContext::new(bits, MAX_BITS, 2).map_err(|e| e.to_string())
}

/// `1/Γ(z)` and `Γ(z)` as JSON.
pub fn eval_json(re: f64, im: f64, bits: u32) -> Result<String, String> {
    if !re.is_finite() || !im.is_finite() {
        return Err("z must be finite".into());
    }
    let c = ctx(bits)?;
    let z = ComplexBall::from_f64(re, im);
    let g = reciprocal_gamma(&z, &c).map_err(|e| e.to_string())?;
    let gam = match gamma(&z, &c) {
        Ok(v) => Some(v.value.to_f64_pair()),
        Err(Error::Pole(_)) => None,
        Err(e) => return Err(e.to_string()),
    };
    let (gr, gi) = g.value.to_f64_pair();
    Ok(json!({
        "z": [re, im],
        "reciprocal_gamma": [gr, gi],
        "reciprocal_gamma_ball": g.value,
        "radius_log2": g.value.rad.log2(),
        "gamma": gam,
        "method": g.method,
        "bits": g.bits,
    })
    .to_string())
}

/// Certified number of solutions of `1/Γ(z) = w` with `-X <= Re z <= 1`,
/// `|Im z| <= 1`.
pub fn count_json(w_re: f64, w_im: f64, x: f64) -> Result<String, String> {
    if !(x > 0.0 && x <= MAX_X) {
        return Err(format!("X must be in (0, {MAX_X}]"));
    }
    let region = RectangleRegion::new(x, 1.0).map_err(|e| e.to_string())?;
    let w = ComplexBall::from_f64(w_re, w_im);
    let c = count_solutions_rectangle(&w, &region, &ctx(64)?).map_err(|e| e.to_string())?;
    Ok(json!({
        "w": [w_re, w_im],
        "X": x,
        "count": c.count,
        "contour_cells": c.contour_cells,
        "bits": c.bits,
    })
    .to_string())
}

/// Census of `[n-1, n]` at denominator `<= D`: per-point gaps for plotting
/// plus the hit counts.
pub fn census_json(n: u32, d: u32) -> Result<String, String> {
    let d = d as u64;
    if !(3..=MAX_D).contains(&d) || !(2..=12).contains(&n) {
        return Err(format!("need 2 <= n <= 12 and 3 <= D <= {MAX_D}"));
    }
    let rep = run_census(n as u64, d, 1.0, &ctx(128)?).map_err(|e| e.to_string())?;
    let points: Vec<_> = rep
        .records
        .iter()
        .map(|r| {
            json!({
                "x": point_f64(&r.point),
                "target": r.target,
                "hit": r.verdict == Verdict::RationalHit,
                "log2_gap": if r.gap_lower_log2.is_finite() { Some(r.gap_lower_log2) } else { None },
            })
        })
        .collect();
    Ok(json!({
        "n": n,
        "D": d,
        "N": rep.n_gamma,
        "N_prime": rep.n_reciprocal,
        "undecided": rep.undecided.len(),
        "bound_N": rep.bound_n,
        "points": points,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eval_reciprocal_gamma(re: f64, im: f64, bits: u32) -> Result<String, JsValue> {
    js(eval_json(re, im, bits))
}

#[wasm_bindgen]
pub fn count_solutions(w_re: f64, w_im: f64, x: f64) -> Result<String, JsValue> {
    js(count_json(w_re, w_im, x))
}

#[wasm_bindgen]
pub fn census(n: u32, d: u32) -> Result<String, JsValue> {
    js(census_json(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn eval_half() {
        let v: Value = serde_json::from_str(&eval_json(0.5, 0.0, 128).unwrap()).unwrap();
        let g = v["gamma"][0].as_f64().unwrap();
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let pole: Value = serde_json::from_str(&eval_json(-2.0, 0.0, 128).unwrap()).unwrap();
        assert!(pole["gamma"].is_null());
    }

    #[test]
    fn count_zeros() {
        let v: Value = serde_json::from_str(&count_json(0.0, 0.0, 5.5).unwrap()).unwrap();
        assert_eq!(v["count"], 6);
        assert!(count_json(0.0, 0.0, 100.0).is_err());
    }

    #[test]
    fn small_census() {
        let v: Value = serde_json::from_str(&census_json(3, 10).unwrap()).unwrap();
        assert_eq!((v["N"].as_u64(), v["N_prime"].as_u64()), (Some(2), Some(2)));
        assert!(census_json(3, 1000).is_err());
    }
}
