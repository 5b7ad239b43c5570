//! Browser bindings: a solution profile `u(·, t)`, a certified witness, and
//! the corner compatibility conditions. Every export returns a JSON string.

use quarterplane::expr::Variable;
use quarterplane::heat::{solve_heat, HeatPoint};
use quarterplane::kdv::solve_kdv;
use quarterplane::nonuniq::{explain, generate, probe_config_for};
use quarterplane::transforms::{Forcing, HalfLineData, Profile};
use quarterplane::verify::check_compatibility;
use quarterplane::Equation;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const COMPAT_THRESHOLD: f64 = 1e-10;
const MAX_POINTS: usize = 400;

fn equation(name: &str) -> Result<Equation, String> {
    match name {
        "heat" => Ok(Equation::Heat),
        "kdv" => Ok(Equation::Kdv),
        _ => Err(format!("unknown equation `{name}`")),
    }
}

fn data(u0: &str, g0: &str, f: &str) -> Result<HalfLineData, String> {
    let u0 = Profile::parse(u0, Variable::X).map_err(|e| format!("u0: {e}"))?;
    let g0 = Profile::parse(g0, Variable::T).map_err(|e| format!("g0: {e}"))?;
    let f = Forcing::parse(f).map_err(|e| format!("f: {e}"))?;
    HalfLineData::new(u0, g0, f).map_err(|e| e.to_string())
}

fn xs(x_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(x_max > 0.0 && x_max.is_finite()) || points < 2 || points > MAX_POINTS {
        return Err(format!("need x_max > 0 and 2..={MAX_POINTS} points"));
    }
    Ok((1..=points).map(|k| x_max * k as f64 / points as f64).collect())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ProfileOut {
    xs: Vec<f64>,
    values: Vec<Option<f64>>,
    errors: Vec<String>,
    warnings: Vec<String>,
}

pub fn profile_json(eq: &str, u0: &str, g0: &str, f: &str, t: f64, x_max: f64, points: usize, tol: f64) -> Result<String, String> {
    let eq = equation(eq)?;
    let d = data(u0, g0, f)?;
    let xs = xs(x_max, points)?;
    let compat = check_compatibility(&d, eq, COMPAT_THRESHOLD).map_err(|e| e.to_string())?;
    let mut warnings = Vec::new();
    if !compat.all_pass() {
        warnings.push(format!("incompatible data: {}", compat.summary()));
    }
    let mut values = Vec::with_capacity(xs.len());
    let mut errors = Vec::new();
    for &x in &xs {
        let r = HeatPoint::new(x, t).and_then(|p| match eq {
            Equation::Heat => solve_heat(&d, p, tol),
            Equation::Kdv => solve_kdv(&d, p, tol),
        });
        match r {
            Ok(v) => values.push(Some(v)),
            Err(e) => {
                values.push(None);
                errors.push(format!("x = {x}: {e}"));
            }
        }
    }
    to_json(&ProfileOut { xs, values, errors, warnings })
}

#[derive(Serialize)]
struct WitnessOut {
    xs: Vec<f64>,
    values: Vec<f64>,
    l2_exponent: f64,
    failed_clauses: Vec<String>,
    text: String,
}

pub fn witness_json(eq: &str, n: u32, t: f64, x_max: f64, points: usize) -> Result<String, String> {
    let eq = equation(eq)?;
    let xs = xs(x_max, points)?;
    let w = generate(eq, n, &probe_config_for(eq, n)).map_err(|e| e.to_string())?;
    let values = xs.iter().map(|&x| w.eval(x, t)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let e = explain(&w);
    to_json(&WitnessOut {
        xs,
        values,
        l2_exponent: e.l2_exponent,
        failed_clauses: w.certificate.failed_clauses().iter().map(|s| s.to_string()).collect(),
        text: e.text,
    })
}

pub fn compatibility_json(eq: &str, u0: &str, g0: &str, f: &str) -> Result<String, String> {
    let eq = equation(eq)?;
    let d = data(u0, g0, f)?;
    to_json(&check_compatibility(&d, eq, COMPAT_THRESHOLD).map_err(|e| e.to_string())?)
}

/// `{xs, values, errors, warnings}` for `u(x, t)` on `points` equally spaced
/// `x` in `(0, x_max]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn solution_profile(eq: &str, u0: &str, g0: &str, f: &str, t: f64, x_max: f64, points: usize, tol: f64) -> Result<String, JsError> {
    profile_json(eq, u0, g0, f, t, x_max, points, tol).map_err(|e| JsError::new(&e))
}

/// `{xs, values, l2_exponent, failed_clauses, text}` for the `n`-th witness.
#[wasm_bindgen]
pub fn witness(eq: &str, n: u32, t: f64, x_max: f64, points: usize) -> Result<String, JsError> {
    witness_json(eq, n, t, x_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compatibility(eq: &str, u0: &str, g0: &str, f: &str) -> Result<String, JsError> {
    compatibility_json(eq, u0, g0, f).map_err(|e| JsError::new(&e))
}
