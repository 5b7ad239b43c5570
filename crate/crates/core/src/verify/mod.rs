//! Sampled checks of the hypotheses under which quarter-plane solutions
//! are unique: PDE residual, boundary traces, corner compatibility of the
//! data, decay in `x`, and the exponent `p` in `∫₀^∞ V(x,t)² dx ~ t^p`.
//!
//! Every check is a finite probe. A pass supports the hypothesis on the
//! probed set; it proves nothing about other points.

mod compat;
mod probes;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dispersion::Equation;
use crate::error::{Error, Result};
use crate::transforms::HalfLineData;

pub use compat::{check_compatibility, CompatCondition, CompatFlags};
pub use probes::{
    boundary_traces, decay_probes, integrability_exponent, max_abs, residual, DecayRecord, DecayRow, L2Fit,
    MaxAbs, TraceRow, Traces,
};

/// `n` points from `a` to `b`, equally spaced in `log`.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let (la, lb) = (a.ln(), b.ln());
            (0..n).map(|k| (la + (lb - la) * k as f64 / (n - 1) as f64).exp()).collect()
        }
    }
}

/// A tensor grid of probe points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
}

impl Grid {
    pub fn log(x: (f64, f64), nx: usize, t: (f64, f64), nt: usize) -> Self {
        Self {
            xs: logspace(x.0, x.1, nx),
            ts: logspace(t.0, t.1, nt),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ts.iter().flat_map(move |&t| self.xs.iter().map(move |&x| (x, t)))
    }

    pub fn len(&self) -> usize {
        self.xs.len() * self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StencilOrder {
    Two,
    Four,
}

/// Pass/fail thresholds of the battery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// On the residual divided by `max(1, sup |V|)` over the stencils.
    pub residual: f64,
    /// On the trace error at the smallest offset.
    pub trace: f64,
    pub nonvanishing: f64,
    pub compat: f64,
    /// The fitted `L²` exponent must exceed this.
    pub integrability: f64,
    /// `|V|` at the largest decay probe, relative to `max(1, sup |V|)`.
    pub decay: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            residual: 1e-5,
            trace: 1e-4,
            nonvanishing: 1e-2,
            compat: 1e-10,
            integrability: -0.1,
            decay: 1e-6,
        }
    }
}

/// Where and how the battery probes a candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeConfig {
    pub residual_grid: Grid,
    /// Step for first and second derivatives.
    pub h: f64,
    /// Step for third derivatives.
    pub h3: f64,
    pub heat_stencil: StencilOrder,
    pub kdv_stencil: StencilOrder,
    /// Decreasing offsets from the boundaries.
    pub trace_offsets: Vec<f64>,
    /// Times at which `V(offset, t)` is compared with `g₀(t)`.
    pub trace_ts: Vec<f64>,
    /// Positions at which `V(x, offset)` is compared with `u₀(x)`.
    pub trace_xs: Vec<f64>,
    pub max_abs_grid: Grid,
    pub decay_xs: Vec<f64>,
    pub decay_ts: Vec<f64>,
    pub l2_ts: Vec<f64>,
    pub l2_tol: f64,
    pub thresholds: Thresholds,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            residual_grid: Grid::log((0.25, 8.0), 7, (2.0, 8.0), 5),
            h: 1e-3,
            h3: 5e-3,
            heat_stencil: StencilOrder::Two,
            kdv_stencil: StencilOrder::Four,
            trace_offsets: vec![1e-2, 1e-3, 1e-4],
            trace_ts: logspace(3.0, 10.0, 8),
            trace_xs: logspace(2.0, 10.0, 8),
            max_abs_grid: Grid::log((1e-3, 20.0), 25, (1e-3, 10.0), 25),
            decay_xs: vec![1.0, 2.0, 5.0, 10.0, 20.0],
            decay_ts: vec![0.5, 1.0, 2.0],
            l2_ts: logspace(1.0 / 16.0, 1.0, 5),
            l2_tol: 1e-12,
            thresholds: Thresholds::default(),
        }
    }
}

type Evaluator = Arc<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

/// A function `V(x,t)` claimed to solve the problem for `data`.
#[derive(Clone)]
pub struct CandidateSolution {
    pub name: String,
    pub equation: Equation,
    pub data: HalfLineData,
    evaluator: Evaluator,
}

impl CandidateSolution {
    pub fn new(
        name: impl Into<String>,
        equation: Equation,
        data: HalfLineData,
        evaluator: impl Fn(f64, f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            equation,
            data,
            evaluator: Arc::new(evaluator),
        }
    }

    /// `V(x,t)`, rejecting non-finite values.
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        let v = (self.evaluator)(x, t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                location: format!("{} at (x, t) = ({x}, {t})", self.name),
            })
        }
    }
}

impl fmt::Debug for CandidateSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CandidateSolution")
            .field("name", &self.name)
            .field("equation", &self.equation)
            .field("data", &self.data.describe())
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub candidate: String,
    pub equation: Equation,
    pub data: String,
    pub residual_sup: f64,
    /// `sup |V|` over the residual stencils.
    pub residual_scale: f64,
    pub trace_sup_x0: f64,
    pub trace_sup_t0: f64,
    pub traces: Traces,
    pub max_abs: MaxAbs,
    pub compat_flags: CompatFlags,
    pub decay_probes: DecayRecord,
    pub l2_exponent_fit: L2Fit,
    pub envelope_violation: bool,
    pub envelope_detail: Option<String>,
    pub clauses: Vec<Clause>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failed_clauses(&self) -> Vec<&str> {
        self.clauses.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }
}

/// Runs every probe and assembles the report. The uniqueness hypotheses are
/// the clauses `residual`, `trace_x0`, `trace_t0`, `compatibility`, `decay`,
/// `integrability` and `envelope`; `nonvanishing` is reported alongside.
pub fn verify(c: &CandidateSolution, cfg: &ProbeConfig) -> Result<VerificationReport> {
    let th = cfg.thresholds;
    let (residual_sup, residual_scale) = residual(c, cfg.h, &cfg.residual_grid, cfg)?;
    let traces = boundary_traces(c, &cfg.trace_offsets, &cfg.trace_ts, &cfg.trace_xs)?;
    let max = max_abs(c, &cfg.max_abs_grid)?;
    let compat = check_compatibility(&c.data, c.equation, th.compat)?;
    let decay = decay_probes(c, &cfg.decay_xs, &cfg.decay_ts, cfg.h, th.decay)?;
    let l2_t_max = cfg.l2_ts.iter().cloned().fold(0.0, f64::max);
    let fit = integrability_exponent(c, &cfg.l2_ts, cfg.l2_tol)?;
    let envelope = c.data.envelope_violation(l2_t_max.max(1.0));

    let normalized = residual_sup / residual_scale.max(1.0);
    let mut clauses = vec![
        Clause {
            name: "residual".into(),
            pass: normalized <= th.residual,
            detail: format!("sup |residual| = {residual_sup:.3e} (scale {residual_scale:.3e}), threshold {:.1e}", th.residual),
        },
        Clause {
            name: "trace_x0".into(),
            pass: traces.rows.last().map_or(false, |r| r.x0 <= th.trace),
            detail: format!(
                "|V(x,t) - g0(t)| as x -> 0: {} (monotone: {}, extrapolated limit {:.3e})",
                trace_list(&traces, true),
                traces.monotone_x0,
                traces.limit_x0
            ),
        },
        Clause {
            name: "trace_t0".into(),
            pass: traces.rows.last().map_or(false, |r| r.t0 <= th.trace),
            detail: format!(
                "|V(x,t) - u0(x)| as t -> 0: {} (monotone: {}, extrapolated limit {:.3e})",
                trace_list(&traces, false),
                traces.monotone_t0,
                traces.limit_t0
            ),
        },
        Clause {
            name: "compatibility".into(),
            pass: compat.all_pass(),
            detail: compat.summary(),
        },
        Clause {
            name: "decay".into(),
            pass: decay.decaying,
            detail: format!("|V| at x = {} relative to max(1, sup|V|): {:.3e}", decay.x_max, decay.tail_ratio),
        },
        Clause {
            name: "integrability".into(),
            pass: fit.degenerate || fit.p > th.integrability,
            detail: if fit.degenerate {
                "V vanishes at every L2 sample".into()
            } else {
                format!(
                    "int_0^inf V^2 dx ~ t^p with p = {:.4} (fit error {:.1e}); uniform bound needs p >= 0",
                    fit.p, fit.fit_error
                )
            },
        },
        Clause {
            name: "envelope".into(),
            pass: envelope.is_none(),
            detail: envelope.clone().unwrap_or_else(|| "data respect the declared decay rate".into()),
        },
    ];
    let passed = clauses.iter().all(|c| c.pass);
    clauses.push(Clause {
        name: "nonvanishing".into(),
        pass: max.value > th.nonvanishing,
        detail: format!("max |V| = {:.4e} at (x, t) = ({}, {})", max.value, max.x, max.t),
    });

    Ok(VerificationReport {
        candidate: c.name.clone(),
        equation: c.equation,
        data: c.data.describe(),
        residual_sup,
        residual_scale,
        trace_sup_x0: traces.rows.last().map_or(0.0, |r| r.x0),
        trace_sup_t0: traces.rows.last().map_or(0.0, |r| r.t0),
        traces,
        max_abs: max,
        compat_flags: compat,
        decay_probes: decay,
        l2_exponent_fit: fit,
        envelope_violation: envelope.is_some(),
        envelope_detail: envelope,
        clauses,
        passed,
    })
}

fn trace_list(traces: &Traces, x0: bool) -> String {
    traces
        .rows
        .iter()
        .map(|r| format!("{:.0e}: {:.3e}", r.offset, if x0 { r.x0 } else { r.t0 }))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heat::{example1_u, example1_v, solve_heat, HeatPoint, UVariant, VVariant};
    use crate::oracle;
    use crate::transforms::{Forcing, Profile};

    fn heat_candidate(name: &str, data: HalfLineData, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> CandidateSolution {
        CandidateSolution::new(name, Equation::Heat, data, move |x, t| Ok(f(x, t)))
    }

    #[test]
    fn logspace_endpoints() {
        let v = logspace(1e-3, 20.0, 25);
        assert_eq!(v.len(), 25);
        assert!((v[0] - 1e-3).abs() < 1e-18 && (v[24] - 20.0).abs() < 1e-12);
        assert_eq!(logspace(2.0, 3.0, 1), vec![2.0]);
    }

    #[test]
    fn witness_fails_only_integrability() {
        let c = heat_candidate("u1", HalfLineData::zero(), |x, t| oracle::gauss_kernel_derivative(1, x, t));
        let r = verify(&c, &ProbeConfig::default()).unwrap();
        assert_eq!(r.failed_clauses(), vec!["integrability"]);
        assert!((r.l2_exponent_fit.p + 1.5).abs() < 0.01);
        assert!(r.max_abs.value > 1e-2);
        let at_one = Grid { xs: logspace(1e-3, 20.0, 2000), ts: vec![1.0] };
        assert!((max_abs(&c, &at_one).unwrap().value - 0.2419707).abs() < 1e-5);
        assert!(!r.passed);
    }

    #[test]
    fn erfc_passes_everything_but_compatibility() {
        let data = HalfLineData::new(Profile::zero(), Profile::constant(1.0), Forcing::zero()).unwrap();
        let c = CandidateSolution::new("v", Equation::Heat, data, |x, t| {
            example1_v(HeatPoint::new(x, t)?, VVariant::Gamma, 1e-13)
        });
        let cfg = ProbeConfig {
            max_abs_grid: Grid::log((1e-3, 20.0), 5, (1e-3, 10.0), 5),
            ..ProbeConfig::default()
        };
        let r = verify(&c, &cfg).unwrap();
        assert_eq!(r.failed_clauses(), vec!["compatibility"]);
        assert!(r.l2_exponent_fit.p > 0.4);
    }

    #[test]
    fn compatible_contour_solution_passes() {
        let data = HalfLineData::new(Profile::exp(1.0, -1.0), Profile::exp(1.0, 1.0), Forcing::zero()).unwrap();
        let d = data.clone();
        let c = CandidateSolution::new("utm", Equation::Heat, data, move |x, t| {
            solve_heat(&d, HeatPoint::new(x, t)?, 1e-13)
        });
        let cfg = ProbeConfig {
            max_abs_grid: Grid::log((1e-3, 20.0), 4, (1e-3, 10.0), 4),
            ..ProbeConfig::default()
        };
        let r = verify(&c, &cfg).unwrap();
        assert!(r.passed, "{:#?}", r.clauses);
    }

    #[test]
    fn synthetic_non_solutions() {
        let sq = heat_candidate("x^2", HalfLineData::zero(), |x, _| x * x);
        let grid = Grid::log((0.5, 2.0), 3, (0.5, 2.0), 3);
        let (res, _) = residual(&sq, 1e-3, &grid, &ProbeConfig::default()).unwrap();
        assert!((res - 2.0).abs() < 1e-6);
        let one = heat_candidate("1", HalfLineData::zero(), |_, _| 1.0);
        let tr = boundary_traces(&one, &[1e-2, 1e-3, 1e-4], &[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert_eq!(tr.rows.last().unwrap().x0, 1.0);
        assert_eq!(tr.rows.last().unwrap().t0, 1.0);
        assert!(!decay_probes(&one, &[1.0, 20.0], &[1.0], 1e-3, 1e-6).unwrap().decaying);
        let zero = heat_candidate("0", HalfLineData::zero(), |_, _| 0.0);
        assert_eq!(residual(&zero, 1e-3, &grid, &ProbeConfig::default()).unwrap().0, 0.0);
        assert!(integrability_exponent(&zero, &[0.25, 0.5, 1.0, 2.0], 1e-12).unwrap().degenerate);
    }

    #[test]
    fn u_decays_and_has_known_l2_norm() {
        let c = heat_candidate("u", HalfLineData::zero(), |x, t| {
            example1_u(HeatPoint::new(x, t).unwrap(), UVariant::ClosedForm, 0.0).unwrap()
        });
        let d = decay_probes(&c, &[1.0, 20.0], &[1.0], 1e-3, 1e-6).unwrap();
        assert!(d.rows.last().unwrap().v < 1e-40);
        assert!(d.decaying);
        let fit = integrability_exponent(&c, &[1.0, 2.0, 4.0, 8.0], 1e-13).unwrap();
        assert!((fit.samples[0].1 - 0.0997356).abs() < 1e-7);
        assert!((fit.p + 1.5).abs() < 1e-8);
    }

    #[test]
    fn residual_is_second_order() {
        let c = heat_candidate("u", HalfLineData::zero(), |x, t| oracle::gauss_kernel_derivative(1, x, t));
        let cfg = ProbeConfig::default();
        let (r1, _) = residual(&c, 1e-3, &cfg.residual_grid, &cfg).unwrap();
        let (r2, _) = residual(&c, 5e-4, &cfg.residual_grid, &cfg).unwrap();
        assert!(r1 <= 1e-5);
        let ratio = r1 / r2;
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    }
}
