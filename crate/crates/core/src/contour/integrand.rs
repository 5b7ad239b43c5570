use crate::dispersion::DispersionRelation;
use crate::C64;

/// The exponent `iλx − ω(λ)t` of a spectral integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponent {
    pub x: f64,
    pub t: f64,
    pub omega: DispersionRelation,
}

impl Exponent {
    pub fn new(x: f64, t: f64, omega: DispersionRelation) -> Self {
        Self { x, t, omega }
    }

    /// `iλx` alone.
    pub fn plane_wave(x: f64) -> Self {
        Self::new(x, 0.0, DispersionRelation::zero())
    }

    pub fn eval(&self, lambda: C64) -> C64 {
        C64::new(0.0, self.x) * lambda - self.omega.eval(lambda) * self.t
    }

    pub fn derivative(&self, lambda: C64) -> C64 {
        C64::new(0.0, self.x) - self.omega.derivative(lambda) * self.t
    }

    /// Coefficients of the exponent as a polynomial in `λ`.
    pub(crate) fn coeffs(&self) -> Vec<C64> {
        let n = self.omega.coeffs().len().max(2);
        let mut c = vec![C64::new(0.0, 0.0); n];
        for (k, w) in self.omega.coeffs().iter().enumerate() {
            c[k] -= w * self.t;
        }
        c[1] += C64::new(0.0, self.x);
        c
    }
}

/// `|prefactor(λ)| ≤ scale · max(|λ|, 1)^degree` on the paths it is paired with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefactorBound {
    pub scale: f64,
    pub degree: i32,
}

impl PrefactorBound {
    pub fn new(scale: f64, degree: i32) -> Self {
        Self { scale, degree }
    }

    pub fn at(&self, radius: f64) -> f64 {
        self.scale * radius.max(1.0).powi(self.degree)
    }
}

impl Default for PrefactorBound {
    fn default() -> Self {
        Self::new(1.0, 0)
    }
}

type Prefactor<'a> = Box<dyn Fn(C64) -> C64 + Send + Sync + 'a>;

/// `λ ↦ prefactor(λ) · exp(iλx − ω(λ)t)`.
///
/// `phases` lists extra exponentials hidden inside the prefactor; they only
/// steer the initial panel layout so that oscillations are resolved.
pub struct SpectralIntegrand<'a> {
    exponent: Exponent,
    phases: Vec<Exponent>,
    prefactor: Prefactor<'a>,
    bound: PrefactorBound,
    poles: Vec<C64>,
}

impl<'a> SpectralIntegrand<'a> {
    pub fn new(exponent: Exponent, prefactor: impl Fn(C64) -> C64 + Send + Sync + 'a) -> Self {
        Self {
            exponent,
            phases: Vec::new(),
            prefactor: Box::new(prefactor),
            bound: PrefactorBound::default(),
            poles: Vec::new(),
        }
    }

    pub fn with_bound(mut self, bound: PrefactorBound) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_pole(mut self, pole: C64) -> Self {
        self.poles.push(pole);
        self
    }

    pub fn with_phase(mut self, phase: Exponent) -> Self {
        self.phases.push(phase);
        self
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn bound(&self) -> PrefactorBound {
        self.bound
    }

    pub fn poles(&self) -> &[C64] {
        &self.poles
    }

    pub(crate) fn phases(&self) -> impl Iterator<Item = &Exponent> {
        std::iter::once(&self.exponent).chain(self.phases.iter())
    }

    pub fn eval(&self, lambda: C64) -> C64 {
        let p = (self.prefactor)(lambda);
        if p == C64::new(0.0, 0.0) {
            return p;
        }
        p * self.exponent.eval(lambda).exp()
    }
}

impl std::fmt::Debug for SpectralIntegrand<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralIntegrand")
            .field("exponent", &self.exponent)
            .field("bound", &self.bound)
            .field("poles", &self.poles)
            .finish_non_exhaustive()
    }
}
