//! The linear KdV equation `u_t + u_xxx = f` on the quarter-plane.
//!
//! With `ω(λ) = −iλ³` and `α = e^{2πi/3}` (so `ω(αλ) = ω(λ)`), the
//! boundary-datum solution
//!
//! ```text
//! v(x,t) = −(3/2πi) ∫_{Im λ = ε} e^{iλx+iλ³t} dλ/λ
//! ```
//!
//! does not depend on `ε > 0`, and its time derivatives `u_n = ∂ⁿv/∂tⁿ`
//! solve the zero-data problem. The general solution is
//!
//! ```text
//! 2πU = J₀⁺ + J₀⁻ − J₁ + J₂⁺ + J₂⁻
//! J₀⁺ = ∫_ℝ e^{iλx−ωt} û₀(λ) dλ
//! J₀⁻ = ∫_Γ e^{iλx−ωt} [α û₀(αλ) + α² û₀(α²λ)] dλ
//! J₁  = ∫_Γ e^{iλx−ωt} 3λ² g̃₀(ω, t) dλ
//! J₂⁺ = ∫_ℝ e^{iλx−ωt} f̃(λ, ω, t) dλ
//! J₂⁻ = ∫_Γ e^{iλx−ωt} [α f̃(αλ, ω, t) + α² f̃(α²λ, ω, t)] dλ
//! ```
//!
//! where `Γ` bounds `{Im λ ≥ 0, Re ω ≤ 0}`, the sector `π/3 ≤ arg λ ≤ 2π/3`.
//! `e^{−ωt}` is unimodular on `ℝ` and on `Γ`, so by default:
//!
//! * the `Γ` terms use [`shifted_kdv_gamma`], each arm moved a distance `η`
//!   into `Re ω > 0`;
//! * the full-line terms use the line `Im λ = η`, or for exponential-sum
//!   data the rays `arg λ = φ, π − φ` with `φ ≤ π/6`.
//!
//! Both moves cross no singularity as long as `η` stays below the decay
//! rate of the data.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

use serde::{Deserialize, Serialize};

use crate::contour::{
    horizontal_line_unchecked, make_horizontal_line, make_kdv_Gamma, sector_boundary, shifted_kdv_gamma, ComplexPath,
    Exponent, PrefactorBound, QuadratureSettings, SpectralIntegrand,
};
use crate::dispersion::DispersionRelation;
use crate::error::{Error, Result};
use crate::evaluation::{check_point, check_tol, Evaluation, Terms, Trap};
use crate::heat::{pole_free_angle, HeatPoint};
use crate::oracle;
use crate::transforms::{Forcing, HalfLineData, PreparedTransforms, Profile, SpectralDomain};
use crate::C64;

/// Largest `n` accepted by [`kdv_un`].
pub const KDV_UN_CAP: u32 = 6;
pub const DEFAULT_EPSILON: f64 = 1.0;
pub const DEFAULT_T_FLOOR: f64 = 1e-4;
/// Largest shift of the contours off the real axis and off `Γ`.
pub const MAX_SHIFT: f64 = 0.5;

/// Points of the quarter-plane are the same for both equations.
pub type KdvPoint = HeatPoint;

/// `α = e^{2πi/3}`.
pub fn alpha() -> C64 {
    C64::from_polar(1.0, 2.0 * FRAC_PI_3)
}

fn kdv() -> DispersionRelation {
    DispersionRelation::kdv()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KdvUVariant {
    Contour,
    Airy,
}

/// Where the `Γ` terms of [`solve_kdv`] are taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KdvContour {
    /// `Γ` itself; transform arguments are checked against `Im ≤ 0`.
    Literal,
    /// `Γ` shifted by `η`; `None` picks `min(δ/2, 1/2, 1/x)`.
    Shifted(Option<f64>),
}

impl Default for KdvContour {
    fn default() -> Self {
        KdvContour::Shifted(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KdvOptions {
    pub tol: f64,
    pub contour: KdvContour,
    pub t_floor: f64,
}

impl Default for KdvOptions {
    fn default() -> Self {
        Self {
            tol: crate::contour::DEFAULT_TOL,
            contour: KdvContour::default(),
            t_floor: DEFAULT_T_FLOOR,
        }
    }
}

impl KdvOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Default::default()
        }
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(crate::error::invalid(format!("ε must be positive, got {eps}")));
    }
    Ok(())
}

/// `v(x,t)` on the line `Im λ = ε`.
pub fn example2_v(p: KdvPoint, eps: f64, tol: f64) -> Result<f64> {
    Ok(example2_v_eval(p, eps, tol)?.value)
}

pub fn example2_v_eval(p: KdvPoint, eps: f64, tol: f64) -> Result<Evaluation> {
    check_point(p.x, p.t)?;
    check_epsilon(eps)?;
    check_tol(tol)?;
    let f = SpectralIntegrand::new(Exponent::new(p.x, p.t, kdv()), |l: C64| 1.0 / l)
        .with_bound(PrefactorBound::new(1.0 / eps.min(1.0), -1));
    let mut terms = Terms::new();
    let settings = QuadratureSettings::new(tol * 2.0 * PI / 3.0);
    terms.integrate(C64::new(0.0, 1.0), &make_horizontal_line(eps)?, &f, &settings, &Trap::new())?;
    terms.finish(3.0 / (2.0 * PI), p.x, p.t)
}

/// `u = ∂v/∂t = −(9/2π) ∫_{Im λ = ε} e^{iλx+iλ³t} λ² dλ`.
pub fn example2_u(p: KdvPoint, eps: f64, tol: f64) -> Result<f64> {
    kdv_un(1, p, eps, tol)
}

/// `u_n = −(9/2π) ∫_{Im λ = ε} (iλ³)^{n−1} e^{iλx+iλ³t} λ² dλ`.
pub fn kdv_un(n: u32, p: KdvPoint, eps: f64, tol: f64) -> Result<f64> {
    kdv_un_with(n, p, KdvUVariant::Contour, eps, tol, KDV_UN_CAP)
}

/// [`kdv_un`] with a choice of evaluator and order cap. The `Airy` variant
/// ignores `ε` and `tol`.
pub fn kdv_un_with(n: u32, p: KdvPoint, variant: KdvUVariant, eps: f64, tol: f64, cap: u32) -> Result<f64> {
    if n == 0 || n > cap {
        return Err(Error::OrderOutOfRange { n, cap });
    }
    check_point(p.x, p.t)?;
    match variant {
        KdvUVariant::Airy => Ok(oracle::airy_kdv_un(n, p.x, p.t)),
        KdvUVariant::Contour => {
            check_epsilon(eps)?;
            check_tol(tol)?;
            let k = (n - 1) as i32;
            let i = C64::new(0.0, 1.0);
            let f = SpectralIntegrand::new(Exponent::new(p.x, p.t, kdv()), move |l: C64| {
                (i * l * l * l).powi(k) * l * l
            })
            .with_bound(PrefactorBound::new((1.0 + eps).powi(3 * k + 2), 3 * k + 2));
            let mut terms = Terms::new();
            let settings = QuadratureSettings::new(tol * 2.0 * PI / 9.0);
            terms.integrate(C64::new(-1.0, 0.0), &make_horizontal_line(eps)?, &f, &settings, &Trap::new())?;
            Ok(terms.finish(9.0 / (2.0 * PI), p.x, p.t)?.value)
        }
    }
}

/// `U(x,t)` for the data `(u₀, g₀, f)` with default options.
pub fn solve_kdv(data: &HalfLineData, p: KdvPoint, tol: f64) -> Result<f64> {
    Ok(solve_kdv_with(data, p, &KdvOptions::with_tol(tol))?.value)
}

pub fn solve_kdv_with(data: &HalfLineData, p: KdvPoint, opts: &KdvOptions) -> Result<Evaluation> {
    let HeatPoint { x, t } = p;
    check_point(x, t)?;
    check_tol(opts.tol)?;
    if t < opts.t_floor {
        return Err(Error::Conditioning { t, floor: opts.t_floor });
    }
    data.require_envelope(t)?;
    let u0_zero = data.u0.is_zero();
    let g0_zero = data.g0.is_zero();
    let f_zero = data.f.is_zero();
    if u0_zero && g0_zero && f_zero {
        return Ok(Evaluation::exact(0.0));
    }

    let delta = data.decay_rate();
    let eta = (0.5 * delta).min(MAX_SHIFT).min(1.0 / x);
    let (gamma, gamma_domain): (ComplexPath, SpectralDomain) = match opts.contour {
        KdvContour::Literal => (make_kdv_Gamma(), SpectralDomain::LowerHalfPlane),
        KdvContour::Shifted(shift) => {
            let eta = shift.unwrap_or(eta);
            if !(eta > 0.0 && eta < delta) {
                return Err(crate::error::invalid(format!(
                    "shift η = {eta} must lie in (0, δ) with δ = {delta}"
                )));
            }
            (shifted_kdv_gamma(eta)?, SpectralDomain::Continued)
        }
    };
    let inner = opts.tol * 1e-3;
    let tf_line = PreparedTransforms::new(data, t, SpectralDomain::Continued, inner)?;
    let tf_gamma = PreparedTransforms::new(data, t, gamma_domain, inner)?;
    let (tf_line, tf_gamma) = (&tf_line, &tf_gamma);
    let trap = Trap::new();
    let trap_ref = &trap;
    let pieces = [!u0_zero, true, !f_zero].iter().filter(|b| **b).count() as f64;
    let settings = QuadratureSettings::new(2.0 * PI * opts.tol / pieces);
    let (a1, a2) = (alpha(), alpha() * alpha());
    let omega = &kdv();
    let mut terms = Terms::new();

    let sector = || sector_boundary("line_rot", pole_free_angle(data, FRAC_PI_6));
    let eta_line = || horizontal_line_unchecked(eta, &format!("line({eta})"));
    let u0_scale = if u0_zero { 0.0 } else { data.u0_transform_scale() };
    let f_scale = data.forcing_scale(t) * (t * (eta.powi(3) * t).exp() + 1.0 / (3.0 * eta));

    if !u0_zero {
        let path = match data.u0 {
            Profile::ExpSum(_) => sector(),
            Profile::General(_) => eta_line(),
        };
        let f = SpectralIntegrand::new(Exponent::new(x, t, kdv()), move |l| trap_ref.catch(tf_line.hat_u0(l)))
            .with_bound(PrefactorBound::new(u0_scale, 0));
        terms.integrate(C64::new(1.0, 0.0), &path, &f, &settings, &trap)?;
    }

    {
        let g_scale = if g0_zero { 0.0 } else { 3.0 * data.g0_sup(t) * (1.0 + t + 1.0 / eta) };
        let f = SpectralIntegrand::new(Exponent::plane_wave(x), move |l: C64| {
            let w = omega.eval(l);
            let mut acc = C64::new(0.0, 0.0);
            if !u0_zero {
                let rotated = a1 * trap_ref.catch(tf_gamma.hat_u0(a1 * l)) + a2 * trap_ref.catch(tf_gamma.hat_u0(a2 * l));
                acc += (-w * t).exp() * rotated;
            }
            if !g0_zero {
                acc -= 3.0 * l * l * trap_ref.catch(tf_gamma.damped_g0(w));
            }
            if !f_zero {
                acc += a1 * trap_ref.catch(tf_gamma.damped_f(a1 * l, w)) + a2 * trap_ref.catch(tf_gamma.damped_f(a2 * l, w));
            }
            acc
        })
        .with_phase(Exponent::new(x, t, kdv()))
        .with_bound(PrefactorBound::new(2.0 * u0_scale * (eta.powi(3) * t).exp() + g_scale + 2.0 * f_scale, 0));
        terms.integrate(C64::new(1.0, 0.0), &gamma, &f, &settings, &trap)?;
    }

    if !f_zero {
        let (path, degree) = match data.f {
            Forcing::ExpSum(_) => (sector(), 0),
            Forcing::General(_) => (eta_line(), -3),
        };
        let f = SpectralIntegrand::new(Exponent::plane_wave(x), move |l: C64| {
            trap_ref.catch(tf_line.damped_f(l, omega.eval(l)))
        })
        .with_phase(Exponent::new(x, t, kdv()))
        .with_bound(PrefactorBound::new(f_scale, degree));
        terms.integrate(C64::new(1.0, 0.0), &path, &f, &settings, &trap)?;
    }

    terms.finish(1.0 / (2.0 * PI), x, t)
}
