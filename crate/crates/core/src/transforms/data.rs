use super::profile::{Forcing, Profile};
use crate::error::{Error, Result};
use crate::C64;

/// Default decay rate assumed for general (non-exponential-sum) data.
pub const DEFAULT_DECAY_RATE: f64 = 1.0;

/// Initial datum `u₀`, boundary datum `g₀` and forcing `f` of a
/// quarter-plane problem, with the declared rate `δ` such that
/// `|u₀(x)|, |f(x,t)| ≤ C e^{−δx}`.
#[derive(Debug, Clone)]
pub struct HalfLineData {
    pub u0: Profile,
    pub g0: Profile,
    pub f: Forcing,
    decay_rate: f64,
}

impl HalfLineData {
    /// Builds the triple, inferring `δ` from exponential sums (the slowest
    /// rate present) or using [`DEFAULT_DECAY_RATE`] otherwise.
    pub fn new(u0: Profile, g0: Profile, f: Forcing) -> Result<Self> {
        let inferred = Self::exact_rate(&u0, &f)?;
        let decay_rate = match inferred {
            Some(r) if r.is_finite() => r,
            _ => DEFAULT_DECAY_RATE,
        };
        Ok(Self { u0, g0, f, decay_rate })
    }

    pub fn zero() -> Self {
        Self::new(Profile::zero(), Profile::zero(), Forcing::zero()).expect("zero data are valid")
    }

    /// Declares `δ` explicitly. For exponential sums it may not exceed the
    /// slowest rate actually present.
    pub fn with_decay_rate(mut self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidArgument(format!("decay rate must be positive, got {delta}")));
        }
        if let Some(r) = Self::exact_rate(&self.u0, &self.f)? {
            if delta > r * (1.0 + 1e-12) {
                return Err(Error::DecayViolation {
                    name: "u0/f".into(),
                    detail: format!("declared rate {delta} exceeds the slowest exponential rate {r}"),
                });
            }
        }
        self.decay_rate = delta;
        Ok(self)
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    /// `min(−Re a)` over exponential modes in `x`, `None` if no modes are
    /// present or any datum is general; errors if some mode does not decay.
    fn exact_rate(u0: &Profile, f: &Forcing) -> Result<Option<f64>> {
        let mut rates: Vec<(C64, &str)> = Vec::new();
        match u0 {
            Profile::ExpSum(m) => rates.extend(m.iter().map(|m| (m.rate, "u0"))),
            Profile::General(_) => return Ok(None),
        }
        match f {
            Forcing::ExpSum(k) => rates.extend(k.iter().map(|k| (k.rate_x, "f"))),
            Forcing::General(_) => return Ok(None),
        }
        let mut slowest: Option<f64> = None;
        for (rate, name) in rates {
            let r = -rate.re;
            if r <= 0.0 {
                return Err(Error::DecayViolation {
                    name: name.into(),
                    detail: format!("mode with rate {rate} does not decay as x -> infinity"),
                });
            }
            slowest = Some(slowest.map_or(r, |s: f64| s.min(r)));
        }
        Ok(slowest)
    }

    /// Samples `|u₀|` and `|f(·, τ)|` for `τ ∈ [0, t_max]` beyond the bulk of
    /// the data and reports probes that exceed the declared envelope by more
    /// than three orders of magnitude.
    pub fn envelope_violation(&self, t_max: f64) -> Option<String> {
        let delta = self.decay_rate;
        let check = |p: &Profile, name: &str| -> Option<String> {
            if matches!(p, Profile::ExpSum(_)) {
                return None;
            }
            let weighted = |s: f64| p.eval(s).abs() * (delta * s).exp();
            let head = (0..=16).map(|k| weighted(k as f64 * 0.25 / delta)).fold(0.0, f64::max);
            for k in 1..=19 {
                let s = (4.0 + 4.0 * k as f64) / delta;
                let w = weighted(s);
                if !w.is_finite() || w > 1e3 * head.max(f64::MIN_POSITIVE) {
                    return Some(format!(
                        "|{name}({s:.3})| = {:.3e} exceeds the e^(-{delta} x) envelope fitted on [0, {:.3}]",
                        p.eval(s).abs(),
                        4.0 / delta
                    ));
                }
            }
            None
        };
        if let Some(v) = check(&self.u0, "u0") {
            return Some(v);
        }
        if let Forcing::General(_) = self.f {
            for k in 0..=8 {
                let tau = t_max * k as f64 / 8.0;
                if let Some(v) = check(&self.f.slice(tau), &format!("f(., {tau:.3})")) {
                    return Some(v);
                }
            }
        }
        None
    }

    /// Errors with [`Error::DecayViolation`] if [`Self::envelope_violation`]
    /// finds a breach.
    pub fn require_envelope(&self, t_max: f64) -> Result<()> {
        match self.envelope_violation(t_max) {
            Some(detail) => Err(Error::DecayViolation { name: "data".into(), detail }),
            None => Ok(()),
        }
    }

    /// Poles `λ = −ia` of `û₀` and `f̂` coming from exponential modes `e^{ax}`.
    pub fn transform_poles(&self) -> Vec<C64> {
        let i = C64::new(0.0, 1.0);
        let mut poles = Vec::new();
        if let Profile::ExpSum(m) = &self.u0 {
            poles.extend(m.iter().map(|m| -i * m.rate));
        }
        if let Forcing::ExpSum(k) = &self.f {
            poles.extend(k.iter().map(|k| -i * k.rate_x));
        }
        poles
    }

    /// Rough bound on `|û₀(λ)|` for `Im λ ≤ δ/2`.
    pub(crate) fn u0_transform_scale(&self) -> f64 {
        match &self.u0 {
            Profile::ExpSum(m) => m.iter().map(|m| m.coeff.norm() * 4.0 / (-m.rate.re).max(1e-3)).sum(),
            Profile::General(_) => 4.0 * self.u0.envelope_scale(self.decay_rate) / self.decay_rate,
        }
    }

    /// Sampled `sup |g₀|` on `[0, t]`, with a safety factor.
    pub(crate) fn g0_sup(&self, t: f64) -> f64 {
        2.0 * (0..=128).map(|k| self.g0.eval(t * k as f64 / 128.0).abs()).fold(0.0, f64::max)
    }

    /// Sampled `sup_τ (|f(0,τ)| + ∫₀^∞ |f_y(y,τ)| dy)` over `[0, t]`, with a
    /// safety factor; `|f̂(λ,τ)|` is at most this over `|λ|`.
    pub(crate) fn forcing_scale(&self, t: f64) -> f64 {
        if self.f.is_zero() {
            return 0.0;
        }
        let y_max = 40.0 / self.decay_rate;
        let n = 400;
        let h = y_max / n as f64;
        let mut best: f64 = 0.0;
        for k in 0..=16 {
            let tau = t * k as f64 / 16.0;
            let slice = self.f.slice(tau);
            let slope: f64 = (0..=n).map(|j| slice.derivatives(j as f64 * h, 1)[1].abs() * h).sum();
            best = best.max(slice.eval(0.0).abs() + slope);
        }
        4.0 * best
    }

    pub fn describe(&self) -> String {
        format!("u0 = {}, g0 = {}, f = {}", self.u0.describe(), self.g0.describe(), self.f.describe())
    }
}
