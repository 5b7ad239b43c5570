//! The heat equation `u_t = u_xx` on the quarter-plane `x > 0, t > 0`.
//!
//! The boundary-datum solution
//!
//! ```text
//! v(x,t) = (i/π) ∫_γ [e^{iλx−λ²t} − e^{iλx}] dλ/λ = erfc(x/2√t)
//! ```
//!
//! its time derivatives `u_n = ∂ⁿv/∂tⁿ` (which vanish on both boundaries),
//! and the general solution of `U_t − U_xx = f`, `U(x,0) = u₀`, `U(0,t) = g₀`:
//!
//! ```text
//! 2πU = ∫_ℝ e^{iλx−λ²t} û₀(λ) dλ − ∫_γ e^{iλx−λ²t} û₀(−λ) dλ
//!     − 2i ∫_γ e^{iλx−λ²t} λ g̃₀(λ², t) dλ
//!     + ∫_ℝ e^{iλx−λ²t} f̃(λ, λ², t) dλ − ∫_γ e^{iλx−λ²t} f̃(−λ, λ², t) dλ
//! ```
//!
//! `γ` bounds `{Im λ ≥ 0, Re λ² ≤ 0}`. On its rays `e^{−λ²t}` does not decay,
//! so by default the γ-integrals run on the rays `arg λ = θ, π − θ` with
//! `θ = π/8`, where it does; no poles lie in between.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::cmath::expm1;
use crate::contour::{
    horizontal_line_unchecked, make_heat_gamma, sector_boundary, tilted_heat_gamma0, ComplexPath, Exponent,
    PrefactorBound, QuadratureSettings, SpectralIntegrand,
};
use crate::dispersion::DispersionRelation;
use crate::error::{Error, Result};
use crate::evaluation::{check_point, check_tol, Evaluation, Terms, Trap};
use crate::oracle;
use crate::transforms::{Forcing, HalfLineData, PreparedTransforms, SpectralDomain};
use crate::C64;

/// Below this `t` the Gaussian envelope of the full-line terms is too wide.
pub const DEFAULT_T_FLOOR: f64 = 1e-4;
/// Largest `n` accepted by [`heat_un`].
pub const HEAT_UN_CAP: u32 = 8;
/// Default angle of the rays replacing `γ`.
pub const DEFAULT_ROTATION: f64 = PI / 8.0;

/// A point strictly inside the quarter-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatPoint {
    pub x: f64,
    pub t: f64,
}

impl HeatPoint {
    pub fn new(x: f64, t: f64) -> Result<Self> {
        check_point(x, t)?;
        Ok(Self { x, t })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VVariant {
    /// The two rays through the origin.
    Gamma,
    /// Rays from `±1 + i` joined by a segment, avoiding `λ = 0`.
    Gamma0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UVariant {
    Contour,
    ClosedForm,
}

/// Where the γ-integrals of [`solve_heat`] are taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeatContour {
    /// `γ` itself, rays at `π/4` and `3π/4`.
    Literal,
    /// Rays at `θ` and `π − θ`, `0 < θ < π/4`.
    Rotated(f64),
}

impl Default for HeatContour {
    fn default() -> Self {
        HeatContour::Rotated(DEFAULT_ROTATION)
    }
}

impl HeatContour {
    fn angle(self) -> Result<f64> {
        match self {
            HeatContour::Literal => Ok(FRAC_PI_4),
            HeatContour::Rotated(theta) if theta > 0.0 && theta < FRAC_PI_4 => Ok(theta),
            HeatContour::Rotated(theta) => Err(crate::error::invalid(format!(
                "rotation angle must lie in (0, π/4), got {theta}"
            ))),
        }
    }

    fn path(self) -> Result<ComplexPath> {
        Ok(match self {
            HeatContour::Literal => make_heat_gamma(),
            HeatContour::Rotated(_) => sector_boundary("gamma_rot", self.angle()?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatOptions {
    pub tol: f64,
    pub contour: HeatContour,
    pub t_floor: f64,
}

impl Default for HeatOptions {
    fn default() -> Self {
        Self {
            tol: crate::contour::DEFAULT_TOL,
            contour: HeatContour::default(),
            t_floor: DEFAULT_T_FLOOR,
        }
    }
}

impl HeatOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Default::default()
        }
    }
}

fn heat() -> DispersionRelation {
    DispersionRelation::heat()
}

fn real_axis() -> ComplexPath {
    horizontal_line_unchecked(0.0, "real_axis")
}

/// `v(x,t)`, the solution with `u₀ = 0`, `g₀ = 1`, `f = 0`.
pub fn example1_v(p: HeatPoint, variant: VVariant, tol: f64) -> Result<f64> {
    Ok(example1_v_eval(p, variant, tol)?.value)
}

pub fn example1_v_eval(p: HeatPoint, variant: VVariant, tol: f64) -> Result<Evaluation> {
    check_point(p.x, p.t)?;
    check_tol(tol)?;
    let t = p.t;
    let settings = QuadratureSettings::new(tol * PI);
    let trap = Trap::new();
    let mut terms = Terms::new();
    match variant {
        VVariant::Gamma => {
            let f = SpectralIntegrand::new(Exponent::plane_wave(p.x), move |l: C64| {
                if l == C64::new(0.0, 0.0) {
                    return l;
                }
                expm1(-l * l * t) / l
            })
            .with_phase(Exponent::new(p.x, t, heat()))
            .with_bound(PrefactorBound::new(2.0, -1));
            terms.integrate(C64::new(0.0, 1.0), &sector_boundary("gamma_rot", DEFAULT_ROTATION), &f, &settings, &trap)?;
        }
        VVariant::Gamma0 => {
            let f = SpectralIntegrand::new(Exponent::plane_wave(p.x), move |l: C64| expm1(-l * l * t) / l)
                .with_phase(Exponent::new(p.x, t, heat()))
                .with_bound(PrefactorBound::new(2.0 * t.exp(), -1))
                .with_pole(C64::new(0.0, 0.0));
            terms.integrate(C64::new(0.0, 1.0), &tilted_heat_gamma0(DEFAULT_ROTATION, "gamma0_rot"), &f, &settings, &trap)?;
        }
    }
    terms.finish(1.0 / PI, p.x, p.t)
}

/// `u = ∂v/∂t = x e^{−x²/4t} / (2√π t^{3/2})`, zero on both boundaries.
pub fn example1_u(p: HeatPoint, variant: UVariant, tol: f64) -> Result<f64> {
    heat_un(1, p, variant, tol)
}

/// `u_n = ∂ⁿv/∂tⁿ = −(i/π) ∫_ℝ (−λ²)^{n−1} λ e^{iλx−λ²t} dλ` for
/// `1 ≤ n ≤` [`HEAT_UN_CAP`].
pub fn heat_un(n: u32, p: HeatPoint, variant: UVariant, tol: f64) -> Result<f64> {
    heat_un_capped(n, p, variant, tol, HEAT_UN_CAP)
}

pub fn heat_un_capped(n: u32, p: HeatPoint, variant: UVariant, tol: f64, cap: u32) -> Result<f64> {
    if n == 0 || n > cap {
        return Err(Error::OrderOutOfRange { n, cap });
    }
    check_point(p.x, p.t)?;
    match variant {
        UVariant::ClosedForm => Ok(oracle::gauss_kernel_derivative(n, p.x, p.t)),
        UVariant::Contour => {
            check_tol(tol)?;
            let k = (n - 1) as i32;
            let f = SpectralIntegrand::new(Exponent::new(p.x, p.t, heat()), move |l: C64| (-l * l).powi(k) * l)
                .with_bound(PrefactorBound::new(1.0, 2 * k + 1));
            let mut terms = Terms::new();
            terms.integrate(C64::new(0.0, -1.0), &real_axis(), &f, &QuadratureSettings::new(tol * PI), &Trap::new())?;
            Ok(terms.finish(1.0 / PI, p.x, p.t)?.value)
        }
    }
}

/// `U(x,t)` for the data `(u₀, g₀, f)`, with default options and tolerance `tol`.
pub fn solve_heat(data: &HalfLineData, p: HeatPoint, tol: f64) -> Result<f64> {
    Ok(solve_heat_with(data, p, &HeatOptions::with_tol(tol))?.value)
}

pub fn solve_heat_with(data: &HalfLineData, p: HeatPoint, opts: &HeatOptions) -> Result<Evaluation> {
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

    let theta = opts.contour.angle()?;
    let gamma = opts.contour.path()?;
    let tf = PreparedTransforms::new(data, t, SpectralDomain::Continued, opts.tol * 1e-3)?;
    let tf = &tf;
    let trap = Trap::new();
    let trap_ref = &trap;
    let pieces = [!u0_zero, true, !f_zero].iter().filter(|b| **b).count() as f64;
    let settings = QuadratureSettings::new(2.0 * PI * opts.tol / pieces);
    let i = C64::new(0.0, 1.0);
    let mut terms = Terms::new();

    if !u0_zero {
        let f = SpectralIntegrand::new(Exponent::new(x, t, heat()), move |l| trap_ref.catch(tf.hat_u0(l)))
            .with_bound(PrefactorBound::new(data.u0_transform_scale(), 0));
        terms.integrate(C64::new(1.0, 0.0), &real_axis(), &f, &settings, &trap)?;
    }

    {
        let u0_scale = if u0_zero { 0.0 } else { data.u0_transform_scale() };
        let g_scale = if g0_zero { 0.0 } else { data.g0_sup(t) * (1.0 + t) * 4.0 / (2.0 * theta).cos().max(1e-3) };
        let f_scale = data.forcing_scale(t) * (1.0 + t);
        let f = SpectralIntegrand::new(Exponent::plane_wave(x), move |l: C64| {
            let w = l * l;
            let mut acc = C64::new(0.0, 0.0);
            if !u0_zero {
                acc -= (-w * t).exp() * trap_ref.catch(tf.hat_u0(-l));
            }
            if !g0_zero {
                acc -= 2.0 * i * l * trap_ref.catch(tf.damped_g0(w));
            }
            if !f_zero {
                acc -= trap_ref.catch(tf.damped_f(-l, w));
            }
            acc
        })
        .with_phase(Exponent::new(x, t, heat()))
        .with_bound(PrefactorBound::new(u0_scale + g_scale + f_scale, 0));
        terms.integrate(C64::new(1.0, 0.0), &gamma, &f, &settings, &trap)?;
    }

    if !f_zero {
        let (path, degree) = match (&data.f, opts.contour) {
            (Forcing::ExpSum(_), HeatContour::Rotated(_)) => {
                (sector_boundary("line_rot", pole_free_angle(data, theta)), 0)
            }
            _ => (real_axis(), -3),
        };
        let f = SpectralIntegrand::new(Exponent::plane_wave(x), move |l: C64| trap_ref.catch(tf.damped_f(l, l * l)))
            .with_phase(Exponent::new(x, t, heat()))
            .with_bound(PrefactorBound::new(data.forcing_scale(t) * (1.0 + t), degree));
        terms.integrate(C64::new(1.0, 0.0), &path, &f, &settings, &trap)?;
    }

    terms.finish(1.0 / (2.0 * PI), x, t)
}

/// Largest angle `≤ theta` such that the sectors `0 < arg λ < angle` and
/// `π − angle < arg λ < π` hold no pole of the data transforms.
pub(crate) fn pole_free_angle(data: &HalfLineData, theta: f64) -> f64 {
    data.transform_poles()
        .iter()
        .filter(|p| p.im > 0.0)
        .map(|p| {
            let a = p.arg();
            0.5 * a.min(PI - a)
        })
        .fold(theta, f64::min)
}
