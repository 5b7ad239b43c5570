//! Oriented paths in the spectral plane and adaptive quadrature along them.
//!
//! Finite segments are integrated by arclength. Rays are truncated at the
//! radius where the exponential envelope of the integrand (times the
//! declared prefactor bound) falls below a tenth of the ray's tolerance
//! share; the neglected tail is added to the error estimate. A ray whose
//! exponent stays bounded is accepted only if the prefactor bound decays at
//! least like `|λ|⁻²`, and is then truncated on the algebraic tail.

pub(crate) mod gk;
mod integrand;
mod path;
pub mod quadrature;

pub use integrand::{Exponent, PrefactorBound, SpectralIntegrand};
pub use path::{
    horizontal_line_unchecked, in_heat_region, in_kdv_region, make_heat_gamma, make_heat_gamma0,
    make_horizontal_line, make_kdv_Gamma, sector_boundary, shifted_kdv_gamma, tilted_heat_gamma0,
    ComplexPath, PathSegment, Sense,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Self { abs, rel: 0.0 }
    }

    pub fn with_rel(mut self, rel: f64) -> Self {
        self.rel = rel;
        self
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::absolute(DEFAULT_TOL)
    }
}

impl From<f64> for Tolerance {
    fn from(abs: f64) -> Self {
        Self::absolute(abs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSettings {
    pub tol: Tolerance,
    pub max_evaluations: usize,
    /// Cap on the number of initial panels laid out to resolve oscillation.
    pub max_panels: usize,
}

impl QuadratureSettings {
    pub fn new(tol: impl Into<Tolerance>) -> Self {
        Self {
            tol: tol.into(),
            ..Default::default()
        }
    }
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            max_evaluations: 4_000_000,
            max_panels: 150_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureOutcome {
    pub value: C64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    /// One entry per ray, in path order.
    pub truncation_radius: Vec<f64>,
    pub converged: bool,
    /// Effective tolerance: `max(abs, rel·|value|)`, raised to the roundoff
    /// floor `100·ε·∫|f|` when that is larger.
    pub tolerance: f64,
}

impl QuadratureOutcome {
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                estimate: self.abs_error_estimate,
                tolerance: self.tolerance,
                evaluations: self.evaluations,
                detail: format!("value so far {}", self.value),
            })
        }
    }
}

/// Integrates with absolute tolerance `tol` and default budgets.
pub fn integrate(path: &ComplexPath, integrand: &SpectralIntegrand<'_>, tol: f64) -> Result<QuadratureOutcome> {
    integrate_with(path, integrand, &QuadratureSettings::new(tol))
}

pub fn integrate_with(
    path: &ComplexPath,
    integrand: &SpectralIntegrand<'_>,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    for &pole in integrand.poles() {
        let distance = path.min_distance_to(pole);
        if distance <= 1e-12 * pole.norm().max(1.0) {
            return Err(Error::PoleOnPath {
                path: path.name().to_string(),
                pole,
                distance,
            });
        }
    }

    let n = path.segments().len() as f64;
    let share = settings.tol.abs / n;
    let mut value = C64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut radii = Vec::new();
    let mut target = 0.0;
    let mut converged = true;

    for (index, seg) in path.segments().iter().enumerate() {
        let (origin, dir, length, sign) = match *seg {
            PathSegment::Segment { a, b } => {
                let len = (b - a).norm();
                (a, (b - a) / len, len, 1.0)
            }
            PathSegment::Ray {
                anchor,
                direction,
                sense,
            } => {
                if integrand.bound().scale == 0.0 {
                    radii.push(0.0);
                    continue;
                }
                let (r, tail) = truncation_radius(path, index, anchor, direction, integrand, share / 10.0)?;
                radii.push(r);
                error += tail;
                let sign = match sense {
                    Sense::Outgoing => 1.0,
                    Sense::Incoming => -1.0,
                };
                (anchor, direction, r, sign)
            }
        };
        if length == 0.0 {
            continue;
        }
        let breaks = panel_layout(origin, dir, length, seg.is_ray(), integrand, settings.max_panels)
            .map_err(|panels| Error::NotConverged {
                estimate: f64::INFINITY,
                tolerance: share,
                evaluations,
                detail: format!(
                    "segment {index} of `{}` needs more than {panels} panels to resolve its oscillation",
                    path.name()
                ),
            })?;
        let f = |s: f64| integrand.eval(origin + dir * s) * dir;
        let budget = settings.max_evaluations.saturating_sub(evaluations).max(gk::EVALS_PER_PANEL * breaks.len());
        let r = gk::adaptive(&f, &breaks, share * 0.9, settings.tol.rel, budget);
        value += r.value * sign;
        error += r.error;
        evaluations += r.evaluations;
        target += r.target;
        converged &= r.converged;
    }

    let tolerance = settings.tol.target(value.norm()).max(target);
    Ok(QuadratureOutcome {
        value,
        abs_error_estimate: error,
        evaluations,
        truncation_radius: radii,
        converged: converged && error <= tolerance,
        tolerance,
    })
}

/// Coefficients in `s` of `Re E(origin + s·dir)`.
fn real_exponent_poly(integrand: &SpectralIntegrand<'_>, origin: C64, dir: C64) -> Vec<f64> {
    let c = integrand.exponent().coeffs();
    let n = c.len();
    let mut out = vec![0.0; n];
    for (k, ck) in c.iter().enumerate() {
        // (origin + s dir)^k = Σ_m binom(k, m) origin^{k-m} dir^m s^m
        let mut binom = 1.0;
        for (m, slot) in out.iter_mut().enumerate().take(k + 1) {
            *slot += (ck * binom * origin.powu((k - m) as u32) * dir.powu(m as u32)).re;
            binom *= (k - m) as f64 / (m + 1) as f64;
        }
    }
    out
}

fn polyval(c: &[f64], s: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * s + v)
}

fn polyder(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect()
}

/// Smallest `R` along the ray beyond which the envelope tail is below `target`.
fn truncation_radius(
    path: &ComplexPath,
    index: usize,
    anchor: C64,
    dir: C64,
    integrand: &SpectralIntegrand<'_>,
    target: f64,
) -> Result<(f64, f64)> {
    let poly = real_exponent_poly(integrand, anchor, dir);
    let scale_ref = poly.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let lead = poly
        .iter()
        .enumerate()
        .rev()
        .find(|(_, v)| v.abs() > 1e-14 * scale_ref.max(f64::MIN_POSITIVE));
    let bound = integrand.bound();
    match lead {
        Some((deg, v)) if deg >= 1 && *v < 0.0 => {}
        None | Some((0, _)) if bound.degree <= -2 => {
            // Bounded exponent, algebraically decaying prefactor:
            // ∫_R^∞ scale·e^{c₀} r^{d} dr = scale·e^{c₀} R^{d+1}/(−d−1).
            let c0 = poly.first().copied().unwrap_or(0.0);
            let p = (-bound.degree - 1) as f64;
            let amp = bound.scale * c0.exp();
            let r = (amp / (p * target)).powf(1.0 / p).max(1.0);
            let s = (r + anchor.norm()).max(r);
            let tail = amp * r.powf(-p) / p;
            return Ok((s, tail));
        }
        _ => {
            return Err(Error::NonDecaying {
                path: path.name().to_string(),
                segment: index,
                detail: format!(
                    "Re(iλx − ω(λ)t) along the ray has coefficients {poly:?}; it must tend to −∞ \
                     (x = {}, t = {})",
                    integrand.exponent().x,
                    integrand.exponent().t
                ),
            })
        }
    }
    let d1 = polyder(&poly);
    let d2 = polyder(&d1);
    let log_env = |s: f64| {
        let r = (anchor + dir * s).norm();
        polyval(&poly, s) + bound.scale.ln() + bound.degree as f64 * r.max(1.0).ln()
    };
    let slope = |s: f64| {
        let r = (anchor + dir * s).norm().max(1.0);
        polyval(&d1, s) + bound.degree.unsigned_abs() as f64 / r
    };
    let ok = |s: f64| {
        let sl = slope(s);
        sl < 0.0 && polyval(&d2, s) <= 1e-300 && (log_env(s) - (-sl).ln()) < target.ln()
    };
    let tail = |s: f64| (log_env(s) - (-slope(s)).ln()).exp();

    let grid = |k: i32| 0.125 * 2f64.powi(k);
    let mut found = None;
    for k in 0..70 {
        if (k..k + 4).all(|j| ok(grid(j))) {
            found = Some(k);
            break;
        }
    }
    let Some(k) = found else {
        return Err(Error::NonDecaying {
            path: path.name().to_string(),
            segment: index,
            detail: "envelope does not fall below tolerance within |λ| < 1e20".into(),
        });
    };
    if k == 0 {
        // Bisect down towards the anchor.
        let (mut lo, mut hi) = (0.0, grid(0));
        if ok(0.0) {
            return Ok((0.0, tail(0.0)));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return Ok((hi, tail(hi)));
    }
    let (mut lo, mut hi) = (grid(k - 1), grid(k));
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((hi, tail(hi)))
}

/// Breakpoints on `[0, length]` so that every panel spans at most one local
/// period of every declared phase; rays additionally grow geometrically.
fn panel_layout(
    origin: C64,
    dir: C64,
    length: f64,
    geometric: bool,
    integrand: &SpectralIntegrand<'_>,
    max_panels: usize,
) -> std::result::Result<Vec<f64>, usize> {
    let two_pi = 2.0 * std::f64::consts::PI;
    // A phase whose factor e^{−ω(λ)t} is below e^{−60} is not resolved.
    let freq = |s: f64| {
        let l = origin + dir * s;
        integrand
            .phases()
            .filter(|p| (p.omega.eval(l) * p.t).re < 60.0)
            .map(|p| (p.derivative(l) * dir).im.abs())
            .fold(0.0, f64::max)
    };
    let mut breaks = vec![0.0];
    let mut s = 0.0;
    while s < length {
        let cap = if geometric { s.max(0.5) } else { length };
        let mut h = cap.min(two_pi / freq(s).max(1e-300));
        let ahead = freq((s + h).min(length));
        h = h.min(two_pi / ahead.max(1e-300));
        let h = h.max(length * 1e-13);
        s = (s + h).min(length);
        if length - s < 1e-9 * h {
            s = length;
        }
        breaks.push(s);
        if breaks.len() > max_panels {
            return Err(max_panels);
        }
    }
    Ok(breaks)
}
