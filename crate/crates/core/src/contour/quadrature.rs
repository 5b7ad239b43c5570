//! Real-parameter quadrature built on the same Kronrod engine.

use super::gk;
use super::{QuadratureOutcome, QuadratureSettings};
use crate::error::{Error, Result};
use crate::C64;

/// `∫_a^b f` over the partition `breaks` (must start at `a`, end at `b`).
pub fn integrate_breaks<F: Fn(f64) -> C64>(f: F, breaks: &[f64], settings: &QuadratureSettings) -> QuadratureOutcome {
    let r = gk::adaptive(&f, breaks, settings.tol.abs, settings.tol.rel, settings.max_evaluations);
    QuadratureOutcome {
        value: r.value,
        abs_error_estimate: r.error,
        evaluations: r.evaluations,
        truncation_radius: Vec::new(),
        converged: r.converged,
        tolerance: r.target,
    }
}

/// `∫_a^b f` with `panels` equal initial panels.
pub fn integrate_interval<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    settings: &QuadratureSettings,
) -> QuadratureOutcome {
    let n = panels.max(1);
    let breaks: Vec<f64> = (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    integrate_breaks(f, &breaks, settings)
}

/// `∫_a^∞ f` for a function that decays at infinity.
///
/// Panels of doubling width are added until two consecutive panels
/// contribute less than a thousandth of the tolerance; if that does not
/// happen before `a + 1e7` the integral is reported as divergent.
pub fn integrate_half_line<F: Fn(f64) -> C64>(f: F, a: f64, settings: &QuadratureSettings) -> Result<QuadratureOutcome> {
    let mut breaks = vec![a, a + 0.5];
    let mut width: f64 = 0.5;
    let mut quiet = 0;
    let floor = settings.tol.abs * 1e-3;
    loop {
        let lo = *breaks.last().unwrap();
        width = (width * 2.0).min(64.0_f64.max(width));
        let hi = lo + width;
        let p = gk::qk21(&f, lo, hi);
        breaks.push(hi);
        if p.resabs < floor {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 2 {
            break;
        }
        if hi - a > 1e7 {
            return Err(Error::NotConverged {
                estimate: p.resabs,
                tolerance: settings.tol.abs,
                evaluations: breaks.len() * gk::EVALS_PER_PANEL,
                detail: format!("half-line integral does not decay: |f| mass {:.3e} on [{lo}, {hi}]", p.resabs),
            });
        }
    }
    Ok(integrate_breaks(f, &breaks, settings))
}
