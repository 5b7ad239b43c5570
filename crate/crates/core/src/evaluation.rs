//! Pointwise results of the contour-integral solvers.

use std::sync::Mutex;

use serde::Serialize;

use crate::contour::{integrate_with, ComplexPath, QuadratureOutcome, QuadratureSettings, SpectralIntegrand};
use crate::error::{Error, Result};
use crate::C64;

/// A real solution value with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub abs_error: f64,
    /// Imaginary part left over from the complex integrals; zero up to
    /// quadrature error for real data.
    pub imag: f64,
    pub evaluations: usize,
}

impl Evaluation {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error: 0.0,
            imag: 0.0,
            evaluations: 0,
        }
    }
}

/// Keeps the first error raised inside an integrand closure, which can only
/// return a number.
pub(crate) struct Trap(Mutex<Option<Error>>);

impl Trap {
    pub fn new() -> Self {
        Trap(Mutex::new(None))
    }

    pub fn catch(&self, r: Result<C64>) -> C64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.lock().expect("unpoisoned").get_or_insert(e);
                C64::new(f64::NAN, f64::NAN)
            }
        }
    }

    fn take(&self) -> Option<Error> {
        self.0.lock().expect("unpoisoned").take()
    }

    pub fn into_error(self) -> Option<Error> {
        self.0.into_inner().expect("unpoisoned")
    }
}

/// Signed sum of contour integrals.
pub(crate) struct Terms {
    sum: C64,
    error: f64,
    evaluations: usize,
}

impl Terms {
    pub fn new() -> Self {
        Self {
            sum: C64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        }
    }

    pub fn integrate(
        &mut self,
        coeff: C64,
        path: &ComplexPath,
        integrand: &SpectralIntegrand<'_>,
        settings: &QuadratureSettings,
        trap: &Trap,
    ) -> Result<()> {
        let out = integrate_with(path, integrand, settings);
        if let Some(e) = trap.take() {
            return Err(e);
        }
        let out = out?;
        self.evaluations += out.evaluations;
        let out: QuadratureOutcome = out.require_converged()?;
        self.sum += coeff * out.value;
        self.error += coeff.norm() * out.abs_error_estimate;
        Ok(())
    }

    /// `scale · Σ`, checked for finiteness.
    pub fn finish(self, scale: f64, x: f64, t: f64) -> Result<Evaluation> {
        let v = self.sum * scale;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite {
                location: format!("(x, t) = ({x}, {t})"),
            });
        }
        Ok(Evaluation {
            value: v.re,
            abs_error: self.error * scale.abs(),
            imag: v.im,
            evaluations: self.evaluations,
        })
    }
}

pub(crate) fn check_point(x: f64, t: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite() && t > 0.0 && t.is_finite()) {
        return Err(crate::error::invalid(format!(
            "point must satisfy x > 0, t > 0, got ({x}, {t})"
        )));
    }
    Ok(())
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(crate::error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}
