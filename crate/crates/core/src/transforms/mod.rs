//! Half-line spectral transforms of the problem data.
//!
//! * `û₀(λ) = ∫₀^∞ e^{−iλy} u₀(y) dy`
//! * `f̂(λ, τ) = ∫₀^∞ e^{−iλy} f(y, τ) dy`
//! * `g̃₀(w, t) = ∫₀^t e^{wτ} g₀(τ) dτ`
//! * `f̃(λ, w, t) = ∫₀^t e^{wτ} f̂(λ, τ) dτ`
//!
//! Exponential sums are transformed in closed form. General data use an
//! integration-by-parts expansion when `|λ|` (or `|w|`) is large and
//! finite-interval Kronrod quadrature otherwise, truncated with the declared
//! decay rate. For `û₀`, which is needed at every quadrature node of a
//! solution integral, the profile is sampled once on nested composite rules.
//!
//! Solution formulas multiply `g̃₀` and `f̃` by `e^{−wt}`; the products
//! `e^{−wt} g̃₀(w, t) = ∫₀^t e^{−ws} g₀(t−s) ds` are provided directly as
//! [`PreparedTransforms::damped_g0`] and [`PreparedTransforms::damped_f`],
//! which stay bounded when `Re w ≥ 0`.

mod data;
mod profile;
mod sampled;

pub use data::{HalfLineData, DEFAULT_DECAY_RATE};
pub use profile::{ExpMode, Forcing, Profile, SmoothFn, SmoothFn2};

pub use crate::dispersion::DispersionRelation;

use std::sync::Arc;

use crate::cmath::phi1;
use crate::contour::quadrature::integrate_interval;
use crate::contour::QuadratureSettings;
use crate::error::{Error, Result};
use crate::C64;
use sampled::Sampled;

/// Number of derivatives used by the integration-by-parts expansions.
const IBP_ORDER: usize = 24;

/// Where transform arguments may lie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralDomain {
    /// `Im λ ≤ 0`, where the defining integrals converge for any data.
    LowerHalfPlane,
    /// `Im λ < δ`, using the declared decay rate `δ` of the data.
    DecayStrip,
    /// Anywhere off the poles for exponential sums, whose transforms are
    /// rational in `λ`; the decay strip for general data.
    Continued,
}

fn check_domain(lambda: C64, domain: SpectralDomain, delta: f64, exp_sum: bool) -> Result<()> {
    let ok = match domain {
        SpectralDomain::LowerHalfPlane => lambda.im <= 1e-12 * lambda.norm().max(1.0),
        SpectralDomain::Continued if exp_sum => true,
        SpectralDomain::DecayStrip | SpectralDomain::Continued => lambda.im < delta,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideHalfPlane {
            lambda,
            im: lambda.im,
            limit: if domain == SpectralDomain::LowerHalfPlane { 0.0 } else { delta },
        })
    }
}

/// `∫₀^∞ e^{−iμy} p(y) dy` for one profile, with its derivatives at `0`
/// cached for the asymptotic expansion.
#[derive(Debug, Clone)]
struct HalfLine {
    profile: Profile,
    delta: f64,
    derivs0: Vec<f64>,
    scale: f64,
    sampled: Option<Arc<Sampled>>,
}

impl HalfLine {
    fn new(profile: Profile, delta: f64) -> Self {
        let (derivs0, scale) = match &profile {
            Profile::ExpSum(_) => (Vec::new(), 0.0),
            Profile::General(_) => (profile.derivatives(0.0, IBP_ORDER), profile.envelope_scale(delta)),
        };
        Self { profile, delta, derivs0, scale, sampled: None }
    }

    /// Also caches composite rules, which pays off once the transform is
    /// needed at many arguments.
    fn cached(profile: Profile, delta: f64) -> Self {
        let mut h = Self::new(profile, delta);
        if matches!(h.profile, Profile::General(_)) && h.scale > 0.0 {
            h.sampled = Some(Arc::new(Sampled::new(h.profile.clone(), delta, h.scale)));
        }
        h
    }

    fn transform(&self, mu: C64, tol: f64) -> Result<C64> {
        let i = C64::new(0.0, 1.0);
        match &self.profile {
            Profile::ExpSum(modes) => Ok(modes.iter().map(|m| m.coeff / (i * mu - m.rate)).sum()),
            Profile::General(_) => {
                if self.scale == 0.0 {
                    return Ok(C64::new(0.0, 0.0));
                }
                if let Some(v) = ibp_series(&self.derivs0, i * mu, tol * 0.1) {
                    return Ok(v);
                }
                if let Some(v) = self.sampled.as_ref().and_then(|s| s.transform(mu, tol)) {
                    return Ok(v);
                }
                self.quadrature(mu, tol)
            }
        }
    }

    fn quadrature(&self, mu: C64, tol: f64) -> Result<C64> {
        let kappa = self.delta - mu.im;
        let y_max = ((10.0 * self.scale / (kappa * tol)).ln() / kappa).max(1.0 / kappa);
        let panels = ((mu.re.abs() * y_max / std::f64::consts::PI).ceil() as usize).clamp(4, 200_000);
        let p = &self.profile;
        let out = integrate_interval(
            |y| (-C64::new(0.0, 1.0) * mu * y).exp() * p.eval(y),
            0.0,
            y_max,
            panels,
            &QuadratureSettings::new(tol * 0.5),
        );
        Ok(out.require_converged()?.value)
    }
}

/// `Σ_k d_k / z^{k+1}`, accepted only once a term falls below `tol` while
/// the terms are still shrinking.
fn ibp_series(derivs: &[f64], z: C64, tol: f64) -> Option<C64> {
    if z.norm() < 2.0 {
        return None;
    }
    let inv = 1.0 / z;
    let coeffs: Vec<C64> = derivs.iter().map(|&d| C64::new(d, 0.0)).collect();
    asymptotic_sum(&coeffs, inv, tol)
}

/// `Σ_k c_k inv^{k+1}`, truncated once a nonzero term falls below `tol`
/// after a small one. Zero coefficients are skipped, and a run of zeros to
/// the end of `coeffs` ends the sum exactly.
fn asymptotic_sum(coeffs: &[C64], inv: C64, tol: f64) -> Option<C64> {
    let mut power = inv;
    let mut sum = C64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for (k, &c) in coeffs.iter().enumerate() {
        if c == C64::new(0.0, 0.0) {
            if coeffs[k..].iter().all(|c| *c == C64::new(0.0, 0.0)) {
                return Some(sum);
            }
            power *= inv;
            continue;
        }
        let term = power * c;
        let size = term.norm();
        if size > last && size > tol {
            return None;
        }
        sum += term;
        if size < tol && last < 1e3 * tol.max(size) {
            return Some(sum);
        }
        last = size;
        power *= inv;
    }
    None
}

/// `∫₀^t e^{−ws} p(t−s) ds` for a profile `p`, optionally without the
/// damping factor.
#[derive(Debug, Clone)]
struct Damped {
    profile: Profile,
    t: f64,
    derivs_t: Vec<f64>,
    derivs_0: Vec<f64>,
    sup: f64,
}

impl Damped {
    fn new(profile: Profile, t: f64) -> Self {
        let (derivs_t, derivs_0, sup) = match &profile {
            Profile::ExpSum(_) => (Vec::new(), Vec::new(), 0.0),
            Profile::General(_) => {
                let sup = (0..=64).map(|k| profile.eval(t * k as f64 / 64.0).abs()).fold(0.0, f64::max);
                (profile.derivatives(t, IBP_ORDER), profile.derivatives(0.0, IBP_ORDER), sup)
            }
        };
        Self { profile, t, derivs_t, derivs_0, sup }
    }

    /// `e^{−wt} ∫₀^t e^{wτ} p(τ) dτ`.
    fn damped(&self, w: C64, tol: f64) -> Result<C64> {
        let t = self.t;
        match &self.profile {
            Profile::ExpSum(modes) => {
                Ok(modes.iter().map(|m| m.coeff * (m.rate * t).exp() * t * phi1(-(w + m.rate) * t)).sum())
            }
            Profile::General(_) => {
                if self.sup == 0.0 {
                    return Ok(C64::new(0.0, 0.0));
                }
                if let Some(v) = self.ibp(w, tol * 0.1) {
                    return Ok(v);
                }
                self.quadrature(w, tol)
            }
        }
    }

    /// `∫₀^t e^{wτ} p(τ) dτ`.
    fn literal(&self, w: C64, tol: f64) -> Result<C64> {
        let t = self.t;
        match &self.profile {
            Profile::ExpSum(modes) => Ok(modes.iter().map(|m| m.coeff * t * phi1((w + m.rate) * t)).sum()),
            Profile::General(_) => Ok((w * t).exp() * self.damped(w, tol * (-w.re * t).exp().min(1.0))?),
        }
    }

    fn ibp(&self, w: C64, tol: f64) -> Option<C64> {
        if w.norm() * self.t < 8.0 {
            return None;
        }
        let decay = (-w * self.t).exp();
        let mixed: Vec<C64> = self
            .derivs_t
            .iter()
            .zip(&self.derivs_0)
            .enumerate()
            .map(|(k, (&at_t, &at_0))| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                (C64::new(at_t, 0.0) - decay * at_0) * sign
            })
            .collect();
        asymptotic_sum(&mixed, 1.0 / w, tol)
    }

    fn quadrature(&self, w: C64, tol: f64) -> Result<C64> {
        let t = self.t;
        let s_max = if w.re > 0.0 {
            t.min((10.0 * self.sup / (w.re * tol)).max(1.0).ln() / w.re)
        } else {
            t
        };
        let panels = ((w.im.abs() * s_max / std::f64::consts::PI).ceil() as usize).clamp(2, 200_000);
        let p = &self.profile;
        let out = integrate_interval(
            |s| (-w * s).exp() * p.eval(t - s),
            0.0,
            s_max,
            panels,
            &QuadratureSettings::new(tol * 0.5),
        );
        Ok(out.require_converged()?.value)
    }
}

/// Number of `τ`-derivatives in the large-`|w|` expansion of forcing terms.
const TIME_ORDER: usize = 5;
/// Forward-difference stencil for the `τ`-derivatives.
const STENCIL_POINTS: usize = 10;
const STENCIL_STEP: f64 = 0.02;

/// Finite-difference weights `c[k][m]` for the `k`-th derivative at `z` from
/// values at `nodes[m]`.
fn fornberg(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// `∂τᵏ ∂yʲ f(0, τ)` at `τ = 0` and `τ = t` for general forcing, so that
///
/// `e^{−wt} f̃(λ, w, t) = Σ_k (−1)^k [∂τᵏf̂(λ, t) − e^{−wt} ∂τᵏf̂(λ, 0)] / w^{k+1}`
///
/// with each `∂τᵏf̂` itself expanded in `1/(iλ)`.
#[derive(Debug, Clone)]
struct ForcingExpansion {
    at_t: Vec<Vec<f64>>,
    at_0: Vec<Vec<f64>>,
}

impl ForcingExpansion {
    fn new(f: &Forcing, t: f64) -> Self {
        let nodes: Vec<f64> = (0..STENCIL_POINTS).map(|m| m as f64).collect();
        let weights = fornberg(0.0, &nodes, TIME_ORDER - 1);
        let mixed = |tau: f64| -> Vec<Vec<f64>> {
            let samples: Vec<Vec<f64>> = nodes
                .iter()
                .map(|m| f.derivatives_x(0.0, tau + m * STENCIL_STEP, IBP_ORDER))
                .collect();
            (0..TIME_ORDER)
                .map(|k| {
                    let scale = STENCIL_STEP.powi(-(k as i32));
                    (0..=IBP_ORDER)
                        .map(|j| (0..STENCIL_POINTS).map(|m| weights[k][m] * samples[m][j]).sum::<f64>() * scale)
                        .collect()
                })
                .collect()
        };
        Self { at_t: mixed(t), at_0: mixed(0.0) }
    }

    fn damped(&self, lambda: C64, w: C64, t: f64, tol: f64) -> Option<C64> {
        if w.norm() * t < 8.0 || lambda.norm() < 2.0 {
            return None;
        }
        let z = C64::new(0.0, 1.0) * lambda;
        let decay = (-w * t).exp();
        let mut power = 1.0 / w;
        let mut sum = C64::new(0.0, 0.0);
        for k in 0..TIME_ORDER {
            let inner = tol * 0.1 / power.norm();
            let mut term = ibp_series(&self.at_t[k], z, inner)?;
            if decay.norm() * self.at_0[k].iter().fold(0.0f64, |m, v| m.max(v.abs())) > 1e-300 {
                term -= decay * ibp_series(&self.at_0[k], z, inner / decay.norm().max(1e-300))?;
            }
            term *= power * if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += term;
            if k >= 1 && term.norm() < tol * 0.1 {
                return Some(sum);
            }
            power /= w;
        }
        None
    }
}

/// Transforms of one data set at a fixed final time `t`, with everything
/// that does not depend on the spectral argument computed once.
#[derive(Debug, Clone)]
pub struct PreparedTransforms {
    data: HalfLineData,
    t: f64,
    domain: SpectralDomain,
    tol: f64,
    u0: HalfLine,
    g0: Damped,
    f: Option<ForcingExpansion>,
}

impl PreparedTransforms {
    pub fn new(data: &HalfLineData, t: f64, domain: SpectralDomain, tol: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self {
            u0: HalfLine::cached(data.u0.clone(), data.decay_rate()),
            g0: Damped::new(data.g0.clone(), t),
            f: match data.f {
                Forcing::General(_) => Some(ForcingExpansion::new(&data.f, t)),
                Forcing::ExpSum(_) => None,
            },
            data: data.clone(),
            t,
            domain,
            tol,
        })
    }

    pub fn data(&self) -> &HalfLineData {
        &self.data
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn hat_u0(&self, lambda: C64) -> Result<C64> {
        let exp_sum = matches!(self.data.u0, Profile::ExpSum(_));
        check_domain(lambda, self.domain, self.data.decay_rate(), exp_sum)?;
        self.u0.transform(lambda, self.tol)
    }

    pub fn hat_f(&self, lambda: C64, tau: f64) -> Result<C64> {
        check_domain(lambda, self.domain, self.data.decay_rate(), self.forcing_is_exp_sum())?;
        HalfLine::new(self.data.f.slice(tau), self.data.decay_rate()).transform(lambda, self.tol)
    }

    pub fn tilde_g0(&self, w: C64) -> Result<C64> {
        self.g0.literal(w, self.tol)
    }

    /// `e^{−wt} g̃₀(w, t)`.
    pub fn damped_g0(&self, w: C64) -> Result<C64> {
        self.g0.damped(w, self.tol)
    }

    pub fn tilde_f(&self, lambda: C64, w: C64) -> Result<C64> {
        check_domain(lambda, self.domain, self.data.decay_rate(), self.forcing_is_exp_sum())?;
        self.forcing_in_time(lambda, w, false)
    }

    /// `e^{−wt} f̃(λ, w, t)`.
    pub fn damped_f(&self, lambda: C64, w: C64) -> Result<C64> {
        check_domain(lambda, self.domain, self.data.decay_rate(), self.forcing_is_exp_sum())?;
        self.forcing_in_time(lambda, w, true)
    }

    fn forcing_is_exp_sum(&self) -> bool {
        matches!(self.data.f, Forcing::ExpSum(_))
    }

    fn forcing_in_time(&self, lambda: C64, w: C64, damped: bool) -> Result<C64> {
        let t = self.t;
        let i = C64::new(0.0, 1.0);
        match &self.data.f {
            crate::transforms::Forcing::ExpSum(terms) => Ok(terms
                .iter()
                .map(|k| {
                    let space = k.coeff / (i * lambda - k.rate_x);
                    let time = if damped {
                        (k.rate_t * t).exp() * t * phi1(-(w + k.rate_t) * t)
                    } else {
                        t * phi1((w + k.rate_t) * t)
                    };
                    space * time
                })
                .sum()),
            crate::transforms::Forcing::General(_) => {
                if let Some(v) = self.f.as_ref().and_then(|e| e.damped(lambda, w, t, self.tol)) {
                    return Ok(if damped { v } else { (w * t).exp() * v });
                }
                let delta = self.data.decay_rate();
                let f = &self.data.f;
                let tol = self.tol;
                let failure = std::sync::Mutex::new(None);
                let s_max = if damped && w.re > 0.0 { t.min((1e3 / tol).ln() / w.re) } else { t };
                let panels = ((w.im.abs() * s_max / std::f64::consts::PI).ceil() as usize).clamp(2, 20_000);
                let integrand = |s: f64| {
                    let slice = HalfLine::new(f.slice(t - s), delta);
                    match slice.transform(lambda, tol) {
                        Ok(v) => {
                            if damped {
                                (-w * s).exp() * v
                            } else {
                                (w * (t - s)).exp() * v
                            }
                        }
                        Err(e) => {
                            failure.lock().expect("unpoisoned").get_or_insert(e);
                            C64::new(f64::NAN, f64::NAN)
                        }
                    }
                };
                let out = integrate_interval(integrand, 0.0, s_max, panels, &QuadratureSettings::new(tol * 0.5));
                if let Some(e) = failure.into_inner().expect("unpoisoned") {
                    return Err(e);
                }
                Ok(out.require_converged()?.value)
            }
        }
    }
}

/// `û₀(λ)` for `Im λ ≤ 0`.
pub fn hat_u0(lambda: C64, data: &HalfLineData, tol: f64) -> Result<C64> {
    check_domain(lambda, SpectralDomain::LowerHalfPlane, data.decay_rate(), false)?;
    HalfLine::new(data.u0.clone(), data.decay_rate()).transform(lambda, tol)
}

/// `g̃₀(w, t)` for `t > 0`.
pub fn tilde_g0(w: C64, t: f64, data: &HalfLineData, tol: f64) -> Result<C64> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    Damped::new(data.g0.clone(), t).literal(w, tol)
}

/// `f̂(λ, τ)` for `Im λ ≤ 0`, `τ ≥ 0`.
pub fn hat_f(lambda: C64, tau: f64, data: &HalfLineData, tol: f64) -> Result<C64> {
    check_domain(lambda, SpectralDomain::LowerHalfPlane, data.decay_rate(), false)?;
    if !(tau >= 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be nonnegative, got {tau}")));
    }
    HalfLine::new(data.f.slice(tau), data.decay_rate()).transform(lambda, tol)
}

/// `f̃(λ, w, t)` for `Im λ ≤ 0`, `t > 0`.
pub fn tilde_f(lambda: C64, w: C64, t: f64, data: &HalfLineData, tol: f64) -> Result<C64> {
    PreparedTransforms::new(data, t, SpectralDomain::LowerHalfPlane, tol)?.tilde_f(lambda, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymptotic_sum_skips_zero_coefficients() {
        let odd: Vec<C64> = (0..12).map(|k| C64::new(if k % 2 == 1 { 1.0 } else { 0.0 }, 0.0)).collect();
        let z = C64::new(0.0, 100.0);
        let v = asymptotic_sum(&odd, 1.0 / z, 1e-20).unwrap();
        let exact = 1.0 / (z * z) / (1.0 - 1.0 / (z * z));
        assert!((v - exact).norm() < 1e-20);
        let poly = [C64::new(0.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        assert_eq!(asymptotic_sum(&poly, C64::new(0.5, 0.0), 1e-30), Some(C64::new(0.5, 0.0)));
    }

    #[test]
    fn fornberg_weights() {
        let nodes: Vec<f64> = (0..5).map(|m| m as f64).collect();
        let c = fornberg(0.0, &nodes, 2);
        let expect1 = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];
        for (a, b) in c[1].iter().zip(expect1) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!((c[0][0] - 1.0).abs() < 1e-15 && c[0][1..].iter().all(|v| v.abs() < 1e-15));
        assert!(c[2].iter().sum::<f64>().abs() < 1e-13);
    }
    use crate::expr::Variable;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn data(u0: &str, g0: &str, f: &str) -> HalfLineData {
        HalfLineData::new(
            Profile::parse(u0, Variable::X).unwrap(),
            Profile::parse(g0, Variable::T).unwrap(),
            Forcing::parse(f).unwrap(),
        )
        .unwrap()
    }

    #[derive(Debug)]
    struct Gaussian;

    impl SmoothFn for Gaussian {
        fn eval(&self, s: f64) -> f64 {
            (-s * s).exp()
        }
        fn derivatives(&self, s: f64, order: usize) -> Vec<f64> {
            crate::expr::Expr::parse("exp(-x^2)").unwrap().derivatives(Variable::X, s, s, order)
        }
    }

    #[test]
    fn exponential_initial_datum() {
        let d = data("exp(-x)", "0", "0");
        for lambda in [c(0.0, 0.0), c(2.5, 0.0), c(-7.0, -0.5)] {
            let v = hat_u0(lambda, &d, 1e-12).unwrap();
            let expected = 1.0 / (1.0 + c(0.0, 1.0) * lambda);
            assert!((v - expected).norm() < 1e-15);
        }
        assert_eq!(hat_u0(c(1.0, 0.0), &HalfLineData::zero(), 1e-12).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn gaussian_at_origin() {
        let d = HalfLineData::new(Profile::General(Arc::new(Gaussian)), Profile::zero(), Forcing::zero()).unwrap();
        let v = hat_u0(c(0.0, 0.0), &d, 1e-12).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-11);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn upper_half_plane_rejected() {
        let d = data("exp(-x)", "1", "0");
        assert!(matches!(hat_u0(c(0.0, 0.1), &d, 1e-10), Err(Error::OutsideHalfPlane { .. })));
        assert!(hat_f(c(1.0, 1.0), 0.5, &d, 1e-10).is_err());
        let strip = PreparedTransforms::new(&d, 1.0, SpectralDomain::DecayStrip, 1e-10).unwrap();
        assert!(strip.hat_u0(c(0.0, 0.5)).is_ok());
        assert!(strip.hat_u0(c(0.0, 1.0)).is_err());
    }

    #[test]
    fn constant_boundary_datum() {
        let d = data("0", "1", "0");
        let w = c(0.3, -2.0);
        let t = 1.7;
        let v = tilde_g0(w, t, &d, 1e-12).unwrap();
        assert!((v - ((w * t).exp() - 1.0) / w).norm() < 1e-14);
        assert!((tilde_g0(c(0.0, 0.0), t, &d, 1e-12).unwrap() - t).norm() < 1e-15);
        assert_eq!(tilde_g0(w, t, &HalfLineData::zero(), 1e-12).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn forcing_examples() {
        let lambda = c(0.7, -0.2);
        let i = c(0.0, 1.0);
        let d = data("0", "0", "exp(-x)");
        let v = tilde_f(lambda, c(0.0, 0.0), 2.0, &d, 1e-12).unwrap();
        assert!((v - 2.0 / (1.0 + i * lambda)).norm() < 1e-14);
        let d = data("0", "0", "exp(-x)*exp(-t)");
        let v = tilde_f(lambda, c(1.0, 0.0), 1.0, &d, 1e-12).unwrap();
        assert!((v - 1.0 / (1.0 + i * lambda)).norm() < 1e-14);
        assert_eq!(tilde_f(lambda, c(1.0, 0.0), 1.0, &HalfLineData::zero(), 1e-12).unwrap(), c(0.0, 0.0));
        let v = hat_f(lambda, 0.5, &d, 1e-12).unwrap();
        assert!((v - (-0.5f64).exp() / (1.0 + i * lambda)).norm() < 1e-14);
    }

    #[test]
    fn general_boundary_datum_matches_closed_form() {
        // g0 = 1 + t² written so that it is not recognised as an exponential sum
        let general = data("0", "1 + t^2", "0");
        let t = 1.3;
        let prepared = PreparedTransforms::new(&general, t, SpectralDomain::LowerHalfPlane, 1e-12).unwrap();
        for w in [c(0.0, 0.0), c(0.5, 3.0), c(2.0, -40.0), c(30.0, 100.0), c(0.0, 500.0)] {
            // ∫₀^t e^{−ws}(1 + (t−s)²) ds by parts
            let e = (-w * t).exp();
            let exact = (1.0 + t * t) / w - 2.0 * t / (w * w) + 2.0 / (w * w * w) - e * (1.0 / w + 2.0 / (w * w * w));
            let exact = if w.norm() == 0.0 { c(t + t * t * t / 3.0, 0.0) } else { exact };
            let v = prepared.damped_g0(w).unwrap();
            assert!((v - exact).norm() < 1e-11, "w={w}: {v} vs {exact}");
        }
    }

    #[test]
    fn general_initial_datum_matches_closed_form() {
        // (1 + x) e^{−x} is not an exponential sum: û = 1/(1+iλ) + 1/(1+iλ)²
        let d = data("(1 + x)*exp(-x)", "0", "0");
        let i = c(0.0, 1.0);
        for lambda in [c(0.0, 0.0), c(1.5, -0.3), c(-6.0, 0.0), c(80.0, -1.0)] {
            let z = 1.0 / (1.0 + i * lambda);
            let v = hat_u0(lambda, &d, 1e-12).unwrap();
            assert!((v - z - z * z).norm() < 1e-11, "λ={lambda}: {v}");
        }
    }

    #[test]
    fn general_forcing_matches_closed_form() {
        let general = data("0", "0", "exp(-x)*(1 + t^2)");
        let lambda = c(0.4, -0.1);
        let w = c(1.0, 2.0);
        let t = 0.8;
        let v = tilde_f(lambda, w, t, &general, 1e-11).unwrap();
        // ∫₀^t e^{wτ}(1+τ²)dτ / (1 + iλ)
        let e = (w * t).exp();
        let time = (e - 1.0) / w + e * (t * t / w - 2.0 * t / (w * w) + 2.0 / (w * w * w)) - 2.0 / (w * w * w);
        let exact = time / (1.0 + c(0.0, 1.0) * lambda);
        assert!((v - exact).norm() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn general_forcing_expansion_at_large_arguments() {
        let general = data("0", "0", "exp(-x)*(1 + t^2)");
        let t = 0.8;
        let prepared = PreparedTransforms::new(&general, t, SpectralDomain::DecayStrip, 1e-11).unwrap();
        for (lambda, w) in [(c(40.0, 0.3), c(1600.0, 24.0)), (c(-300.0, 0.2), c(50.0, 2.7e7)), (c(5.0, 0.0), c(25.0, 0.0))] {
            assert!(prepared.f.as_ref().unwrap().damped(lambda, w, t, 1e-11).is_some(), "λ={lambda}");
            let v = prepared.damped_f(lambda, w).unwrap();
            let e = (-w * t).exp();
            let time = (1.0 + t * t) / w - 2.0 * t / (w * w) + 2.0 / (w * w * w) - e * (1.0 / w + 2.0 / (w * w * w));
            let exact = time / (1.0 + c(0.0, 1.0) * lambda);
            assert!((v - exact).norm() < 1e-10 * exact.norm().max(1e-3), "λ={lambda}: {v} vs {exact}");
        }
    }

    #[test]
    fn decay_inference_and_violations() {
        assert_eq!(data("exp(-2*x) + exp(-x/2)", "0", "0").decay_rate(), 0.5);
        assert!(HalfLineData::new(Profile::constant(1.0), Profile::zero(), Forcing::zero()).is_err());
        let d = data("exp(-x)", "0", "0");
        assert!(d.clone().with_decay_rate(2.0).is_err());
        assert!(d.with_decay_rate(0.5).is_ok());
        let slow = data("1/(1 + x^2)", "0", "0");
        assert!(slow.envelope_violation(1.0).is_some());
        let fast = data("exp(-x^2)", "0", "0");
        assert!(fast.envelope_violation(1.0).is_none());
    }
}
