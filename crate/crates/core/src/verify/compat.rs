use serde::Serialize;

use crate::dispersion::Equation;
use crate::error::{Error, Result};
use crate::transforms::{HalfLineData, Profile};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompatCondition {
    pub name: String,
    /// Left side minus right side.
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompatFlags {
    pub threshold: f64,
    pub conditions: Vec<CompatCondition>,
}

impl CompatFlags {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn summary(&self) -> String {
        self.conditions
            .iter()
            .map(|c| format!("{}: {} ({:+.3e})", c.name, if c.pass { "pass" } else { "FAIL" }, c.residual))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn derivative(p: &Profile, name: &str, order: usize) -> Result<f64> {
    p.derivatives(0.0, order)
        .get(order)
        .copied()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::MissingDerivative { name: name.into(), order })
}

/// Corner conditions linking `u₀`, `g₀` and `f` at `(0, 0)`. Uses only the
/// data, never a solution.
pub fn check_compatibility(data: &HalfLineData, equation: Equation, threshold: f64) -> Result<CompatFlags> {
    if !(threshold >= 0.0) {
        return Err(crate::error::invalid(format!("threshold must be non-negative, got {threshold}")));
    }
    let f00 = data.f.eval(0.0, 0.0);
    if !f00.is_finite() {
        return Err(Error::MissingDerivative { name: "f".into(), order: 0 });
    }
    let u0 = |k| derivative(&data.u0, "u0", k);
    let g0 = |k| derivative(&data.g0, "g0", k);
    let mut raw = vec![("u0(0) = g0(0)", u0(0)? - g0(0)?)];
    match equation {
        Equation::Heat => raw.push(("u0''(0) + f(0,0) = g0'(0)", u0(2)? + f00 - g0(1)?)),
        Equation::Kdv => raw.push(("g0'(0) = -u0'''(0) + f(0,0)", g0(1)? + u0(3)? - f00)),
    }
    Ok(CompatFlags {
        threshold,
        conditions: raw
            .into_iter()
            .map(|(name, residual)| CompatCondition {
                name: name.into(),
                residual,
                pass: residual.abs() <= threshold,
            })
            .collect(),
    })
}
