//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and run natively too.

use ineqverify_core::kernel::kernel;
use ineqverify_core::positivity::{alpha_threshold_in, region_scan, Status};
use ineqverify_core::quadrature::log_grid;
use ineqverify_core::transition::TransitionFn;
use ineqverify_core::Rational;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_POINTS: u32 = 20_000;
const MAX_INDEX: u32 = 24;
const MAX_CELLS: u32 = 4_000;

#[derive(Debug, Serialize)]
struct Curve {
    n: u32,
    values: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct Curves {
    x: Vec<f64>,
    curves: Vec<Curve>,
}

#[derive(Debug, Serialize)]
struct Cell {
    n: u32,
    alpha: String,
    alpha_value: f64,
    verdict: &'static str,
    witness: Option<String>,
}

#[derive(Debug, Serialize)]
struct Threshold {
    n: u32,
    lo: String,
    hi: String,
    lo_value: f64,
    hi_value: f64,
    exact: bool,
    saturated: bool,
    probes: usize,
}

fn check_points(points: u32) -> Result<(), String> {
    if points == 0 || points > MAX_POINTS {
        return Err(format!("points must be in 1..={MAX_POINTS}"));
    }
    Ok(())
}

fn check_index(n_max: u32) -> Result<(), String> {
    if n_max > MAX_INDEX {
        return Err(format!("n must be at most {MAX_INDEX}"));
    }
    Ok(())
}

fn positive_rational(s: &str) -> Result<Rational, String> {
    let r: Rational = s.trim().parse().map_err(|_| format!("'{s}' is not an exact rational"))?;
    if !r.is_positive() {
        return Err(format!("alpha must be positive, got {r}"));
    }
    Ok(r)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// `A_0 … A_{n_max}` at `x = i/points`.
pub fn kernel_curves_json(n_max: u32, points: u32) -> Result<String, String> {
    check_points(points)?;
    check_index(n_max)?;
    let x: Vec<f64> = (1..=points).map(|i| f64::from(i) / f64::from(points)).collect();
    let curves = (0..=n_max)
        .map(|n| {
            let values = x.iter().map(|&x| kernel(n, x)).collect::<Result<_, _>>();
            values.map(|values| Curve { n, values }).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    Ok(to_json(&Curves { x, curves }))
}

/// `Φ_0 … Φ_{n_max}` at α on a log grid over `[t_min, t_max]`.
pub fn transition_curves_json(alpha: &str, n_max: u32, t_min: f64, t_max: f64, points: u32) -> Result<String, String> {
    check_points(points)?;
    check_index(n_max)?;
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err("need 0 < t_min < t_max".to_string());
    }
    let alpha = positive_rational(alpha)?;
    let x = log_grid(t_min, t_max, points as usize);
    let mut curves = Vec::new();
    for n in 0..=n_max {
        let f = TransitionFn::new(n, &alpha).map_err(|e| e.to_string())?;
        curves.push(Curve {
            n,
            values: x.iter().map(|&t| f.eval(t)).collect(),
        });
    }
    Ok(to_json(&Curves { x, curves }))
}

/// Verdicts for `P_0 … P_{n_max}` at α = `k · step`, `k = 1..=steps`.
pub fn positivity_scan_json(n_max: u32, step: &str, steps: u32) -> Result<String, String> {
    check_index(n_max)?;
    if steps == 0 || (n_max + 1).saturating_mul(steps) > MAX_CELLS {
        return Err(format!("scan must have between 1 and {MAX_CELLS} cells"));
    }
    let step = positive_rational(step)?;
    let alphas: Vec<Rational> = (1..=steps).map(|k| &step * &Rational::from(i64::from(k))).collect();
    let cells: Vec<Cell> = region_scan(0..=n_max, &alphas)
        .cells
        .into_iter()
        .map(|c| Cell {
            n: c.poly_index,
            alpha_value: c.alpha.to_f64(),
            alpha: c.alpha.to_string(),
            verdict: match c.verdict.status {
                Status::Nonnegative => "nonnegative",
                Status::Negative => "negative",
                Status::Inconclusive => "inconclusive",
            },
            witness: c.verdict.witness.map(|w| w.to_string()),
        })
        .collect();
    Ok(to_json(&cells))
}

/// Largest α in `(0, 4]` with `P_n(α, ·) ≥ 0`, to within `tol`.
pub fn alpha_threshold_json(n: u32, tol: f64) -> Result<String, String> {
    check_index(n)?;
    if !(tol >= 1e-12 && tol.is_finite()) {
        return Err("tol must be at least 1e-12".to_string());
    }
    let iv = alpha_threshold_in(n, tol, &Rational::from(4));
    Ok(to_json(&Threshold {
        n,
        lo_value: iv.lo.to_f64(),
        hi_value: iv.hi.to_f64(),
        lo: iv.lo.to_string(),
        hi: iv.hi.to_string(),
        exact: iv.exact,
        saturated: iv.saturated,
        probes: iv.probes,
    }))
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn kernel_curves(n_max: u32, points: u32) -> Result<String, JsValue> {
    js(kernel_curves_json(n_max, points))
}

#[wasm_bindgen]
pub fn transition_curves(alpha: &str, n_max: u32, t_min: f64, t_max: f64, points: u32) -> Result<String, JsValue> {
    js(transition_curves_json(alpha, n_max, t_min, t_max, points))
}

#[wasm_bindgen]
pub fn positivity_scan(n_max: u32, step: &str, steps: u32) -> Result<String, JsValue> {
    js(positivity_scan_json(n_max, step, steps))
}

#[wasm_bindgen]
pub fn alpha_threshold(n: u32, tol: f64) -> Result<String, JsValue> {
    js(alpha_threshold_json(n, tol))
}
