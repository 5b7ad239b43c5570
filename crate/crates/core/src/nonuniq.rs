//! Nonzero solutions of the zero-data problems, certified by the
//! [`crate::verify`] battery.
//!
//! `u_n = ∂ⁿv/∂tⁿ`, where `v` solves the problem with unit boundary datum,
//! vanishes at both boundaries, solves the homogeneous equation and decays in
//! `x`, yet is not the zero solution. The battery locates the hypothesis that
//! excludes it: `∫₀^∞ u_n² dx` blows up like a negative power of `t`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dispersion::Equation;
use crate::error::{Error, Result};
use crate::heat::{heat_un, HeatPoint, UVariant, HEAT_UN_CAP};
use crate::kdv::{kdv_un_with, KdvUVariant, DEFAULT_EPSILON, KDV_UN_CAP};
use crate::transforms::HalfLineData;
use crate::verify::{verify, CandidateSolution, ProbeConfig, StencilOrder, VerificationReport};

/// Clauses a witness must pass.
pub const WITNESS_CLAUSES: [&str; 7] =
    ["residual", "trace_x0", "trace_t0", "compatibility", "decay", "envelope", "nonvanishing"];

pub fn cap(equation: Equation) -> u32 {
    match equation {
        Equation::Heat => HEAT_UN_CAP,
        Equation::Kdv => KDV_UN_CAP,
    }
}

/// The default battery, with fourth-order stencils where second order cannot
/// resolve the residual of `u_n` at the default step.
pub fn probe_config_for(equation: Equation, n: u32) -> ProbeConfig {
    let mut cfg = ProbeConfig::default();
    if equation == Equation::Heat && n > 6 {
        cfg.heat_stencil = StencilOrder::Four;
    }
    cfg
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub equation: Equation,
    /// Order of the time derivative; `None` for a certified custom candidate.
    pub n: Option<u32>,
    pub candidate: CandidateSolution,
    pub certificate: VerificationReport,
    pub config: ProbeConfig,
}

impl Witness {
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        self.candidate.eval(x, t)
    }

    pub fn name(&self) -> &str {
        &self.candidate.name
    }
}

/// The `n`-th member of the family for `equation`, certified on `cfg`.
/// Evaluates through the closed forms of [`heat_un`] and [`kdv_un_with`].
pub fn generate(equation: Equation, n: u32, cfg: &ProbeConfig) -> Result<Witness> {
    let mut w = certify(candidate(equation, n)?, cfg)?;
    w.n = Some(n);
    Ok(w)
}

/// The `n`-th member as an uncertified candidate for zero data.
pub fn candidate(equation: Equation, n: u32) -> Result<CandidateSolution> {
    let cap = cap(equation);
    if n == 0 || n > cap {
        return Err(Error::OrderOutOfRange { n, cap });
    }
    Ok(match equation {
        Equation::Heat => CandidateSolution::new(format!("heat u_{n}"), equation, HalfLineData::zero(), move |x, t| {
            heat_un(n, HeatPoint::new(x, t)?, UVariant::ClosedForm, 0.0)
        }),
        Equation::Kdv => CandidateSolution::new(format!("kdv u_{n}"), equation, HalfLineData::zero(), move |x, t| {
            kdv_un_with(n, HeatPoint::new(x, t)?, KdvUVariant::Airy, DEFAULT_EPSILON, 0.0, cap)
        }),
    })
}

/// Runs the battery on a claimed solution of a zero-data problem. Fails on
/// the first witness clause that does not pass, and when the integrability
/// exponent is not negative.
pub fn certify(candidate: CandidateSolution, cfg: &ProbeConfig) -> Result<Witness> {
    if let Some(detail) = nonzero_data(&candidate.data) {
        return Err(Error::CertificationFailed { clause: "zero_data".into(), detail });
    }
    let report = verify(&candidate, cfg)?;
    for name in WITNESS_CLAUSES {
        let clause = report.clause(name).expect("battery reports every clause");
        if !clause.pass {
            return Err(Error::CertificationFailed { clause: name.into(), detail: clause.detail.clone() });
        }
    }
    let fit = &report.l2_exponent_fit;
    if !(fit.p < 0.0) {
        return Err(Error::CertificationFailed {
            clause: "integrability".into(),
            detail: format!("expected a negative L2 exponent, got p = {}", fit.p),
        });
    }
    Ok(Witness {
        equation: candidate.equation,
        n: None,
        candidate,
        certificate: report,
        config: cfg.clone(),
    })
}

fn nonzero_data(d: &HalfLineData) -> Option<String> {
    (!(d.u0.is_zero() && d.g0.is_zero() && d.f.is_zero()))
        .then(|| format!("a witness must solve the zero-data problem, got {}", d.describe()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Explanation {
    pub witness: String,
    pub equation: Equation,
    pub n: Option<u32>,
    pub max_abs: f64,
    pub max_abs_at: (f64, f64),
    pub residual_sup: f64,
    pub trace_sup_x0: f64,
    pub trace_sup_t0: f64,
    pub l2_exponent: f64,
    pub l2_fit_error: f64,
    pub l2_samples: Vec<(f64, f64)>,
    /// The uniqueness hypothesis the witness violates.
    pub violated: String,
    pub satisfied: Vec<String>,
    pub text: String,
}

/// Renders the certificate of `w` and names the hypothesis it violates.
pub fn explain(w: &Witness) -> Explanation {
    let r = &w.certificate;
    let fit = &r.l2_exponent_fit;
    let eq = w.equation.name();
    let satisfied: Vec<String> = WITNESS_CLAUSES.iter().map(|s| s.to_string()).collect();
    let violated = "uniform L2 bound: sup over 0 < t <= T of int_0^inf V(x,t)^2 dx < inf".to_string();

    let mut text = String::new();
    let _ = writeln!(text, "{} solves the {eq} problem with zero data (u0 = g0 = f = 0).", w.name());
    let _ = writeln!(text);
    let _ = writeln!(
        text,
        "  residual        sup |V_t - L V| = {:.3e} on {} interior points",
        r.residual_sup,
        w.config.residual_grid.len()
    );
    let _ = writeln!(text, "  trace x -> 0    sup |V(x,t)| = {:.3e} at x = {:.0e}", r.trace_sup_x0, offset(w));
    let _ = writeln!(text, "  trace t -> 0    sup |V(x,t)| = {:.3e} at t = {:.0e}", r.trace_sup_t0, offset(w));
    let _ = writeln!(
        text,
        "  decay           |V(x,t)| / max(1, sup|V|) = {:.3e} at x = {}",
        r.decay_probes.tail_ratio, r.decay_probes.x_max
    );
    let _ = writeln!(
        text,
        "  nonzero         max |V| = {:.4e} at (x, t) = ({:.4}, {:.4})",
        r.max_abs.value, r.max_abs.x, r.max_abs.t
    );
    let _ = writeln!(text);
    let _ = writeln!(text, "Yet V is not the zero solution, so uniqueness must fail on a hypothesis:");
    let _ = writeln!(text);
    for (t, i) in &fit.samples {
        let _ = writeln!(text, "  t = {t:<10.4}  int_0^inf V^2 dx = {i:.6e}");
    }
    let _ = writeln!(
        text,
        "  fit: int_0^inf V^2 dx ~ t^p with p = {:.4} (max log residual {:.1e})",
        fit.p, fit.fit_error
    );
    let _ = writeln!(text);
    let _ = writeln!(
        text,
        "p < 0, so the integral is unbounded as t -> 0 and V violates the {violated} hypothesis."
    );
    let _ = writeln!(
        text,
        "The data are zero and compatible; the corner singularity of V comes from v, whose data (0, 1, 0) are not."
    );

    Explanation {
        witness: w.name().to_string(),
        equation: w.equation,
        n: w.n,
        max_abs: r.max_abs.value,
        max_abs_at: (r.max_abs.x, r.max_abs.t),
        residual_sup: r.residual_sup,
        trace_sup_x0: r.trace_sup_x0,
        trace_sup_t0: r.trace_sup_t0,
        l2_exponent: fit.p,
        l2_fit_error: fit.fit_error,
        l2_samples: fit.samples.clone(),
        violated,
        satisfied,
        text,
    }
}

fn offset(w: &Witness) -> f64 {
    w.config.trace_offsets.last().copied().unwrap_or(f64::NAN)
}
