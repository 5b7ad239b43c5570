//! Polynomial dispersion relations `ω(λ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    /// `u_t = u_xx`, with `ω(λ) = λ²`.
    Heat,
    /// `u_t + u_xxx = 0`, with `ω(λ) = -iλ³`.
    Kdv,
}

impl Equation {
    pub fn dispersion(self) -> DispersionRelation {
        match self {
            Equation::Heat => DispersionRelation::heat(),
            Equation::Kdv => DispersionRelation::kdv(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Equation::Heat => "heat",
            Equation::Kdv => "kdv",
        }
    }
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Equation {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "heat" => Ok(Equation::Heat),
            "kdv" => Ok(Equation::Kdv),
            other => Err(crate::error::invalid(format!("unknown equation `{other}`"))),
        }
    }
}

/// `ω(λ) = Σ_k coeffs[k] λ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionRelation {
    coeffs: Vec<C64>,
    tag: Option<Equation>,
}

impl DispersionRelation {
    pub fn heat() -> Self {
        Self {
            coeffs: vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            tag: Some(Equation::Heat),
        }
    }

    pub fn kdv() -> Self {
        Self {
            coeffs: vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
            ],
            tag: Some(Equation::Kdv),
        }
    }

    /// `ω ≡ 0`; used for integrands whose only exponential is `e^{iλx}`.
    pub fn zero() -> Self {
        Self {
            coeffs: Vec::new(),
            tag: None,
        }
    }

    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs, tag: None }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn tag(&self) -> Option<Equation> {
        self.tag
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, lambda: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * lambda + c)
    }

    pub fn derivative(&self, lambda: C64) -> C64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc * lambda + c * k as f64)
    }
}
