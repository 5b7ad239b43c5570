use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::expr::{Expr, ExpTerm, Variable};
use crate::C64;

/// A smooth real function of one variable with derivatives of any order.
pub trait SmoothFn: Send + Sync + fmt::Debug {
    fn eval(&self, s: f64) -> f64;
    /// `[f(s), f'(s), ..., f^{(order)}(s)]`.
    fn derivatives(&self, s: f64, order: usize) -> Vec<f64>;
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

/// A smooth real function of `(x, t)` with partial derivatives in each
/// variable separately.
pub trait SmoothFn2: Send + Sync + fmt::Debug {
    fn eval(&self, x: f64, t: f64) -> f64;
    fn derivatives_x(&self, x: f64, t: f64, order: usize) -> Vec<f64>;
    fn derivatives_t(&self, x: f64, t: f64, order: usize) -> Vec<f64>;
    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

/// One exponential `c e^{a s}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpMode {
    pub coeff: C64,
    pub rate: C64,
}

impl ExpMode {
    pub fn new(coeff: impl Into<C64>, rate: impl Into<C64>) -> Self {
        Self { coeff: coeff.into(), rate: rate.into() }
    }
}

#[derive(Debug)]
struct ExprFn {
    expr: Expr,
    var: Variable,
}

impl SmoothFn for ExprFn {
    fn eval(&self, s: f64) -> f64 {
        self.expr.eval(s, s)
    }
    fn derivatives(&self, s: f64, order: usize) -> Vec<f64> {
        self.expr.derivatives(self.var, s, s, order)
    }
    fn describe(&self) -> String {
        self.expr.to_string()
    }
}

#[derive(Debug)]
struct ExprFn2 {
    expr: Expr,
}

impl SmoothFn2 for ExprFn2 {
    fn eval(&self, x: f64, t: f64) -> f64 {
        self.expr.eval(x, t)
    }
    fn derivatives_x(&self, x: f64, t: f64, order: usize) -> Vec<f64> {
        self.expr.derivatives(Variable::X, x, t, order)
    }
    fn derivatives_t(&self, x: f64, t: f64, order: usize) -> Vec<f64> {
        self.expr.derivatives(Variable::T, x, t, order)
    }
    fn describe(&self) -> String {
        self.expr.to_string()
    }
}

/// Initial or boundary datum. Finite exponential sums have closed-form
/// transforms; anything else goes through quadrature.
#[derive(Debug, Clone)]
pub enum Profile {
    /// `Re Σ c e^{a s}`; an empty sum is the zero function.
    ExpSum(Vec<ExpMode>),
    General(Arc<dyn SmoothFn>),
}

impl Profile {
    pub fn zero() -> Self {
        Profile::ExpSum(Vec::new())
    }

    pub fn constant(c: f64) -> Self {
        Profile::exp(c, 0.0)
    }

    /// `c e^{a s}`.
    pub fn exp(c: f64, a: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        Profile::ExpSum(vec![ExpMode::new(c, a)])
    }

    pub fn general(f: Arc<dyn SmoothFn>) -> Self {
        Profile::General(f)
    }

    /// Parses an expression in the single variable `var`.
    pub fn parse(src: &str, var: Variable) -> Result<Self> {
        let expr = Expr::parse(src)?;
        Self::from_expr(expr, var)
    }

    pub fn from_expr(expr: Expr, var: Variable) -> Result<Self> {
        expr.require_only(&[var], if var == Variable::X { "u0" } else { "g0" })?;
        if let Some(terms) = expr.exp_sum() {
            let rate = |k: &ExpTerm| if var == Variable::X { k.rate_x } else { k.rate_t };
            return Ok(Profile::ExpSum(terms.iter().map(|k| ExpMode { coeff: k.coeff, rate: rate(k) }).collect()));
        }
        Ok(Profile::General(Arc::new(ExprFn { expr, var })))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Profile::ExpSum(m) if m.is_empty())
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Profile::ExpSum(modes) => modes.iter().map(|m| m.coeff * (m.rate * s).exp()).sum::<C64>().re,
            Profile::General(f) => f.eval(s),
        }
    }

    pub fn derivatives(&self, s: f64, order: usize) -> Vec<f64> {
        match self {
            Profile::ExpSum(modes) => (0..=order)
                .map(|k| modes.iter().map(|m| m.coeff * m.rate.powi(k as i32) * (m.rate * s).exp()).sum::<C64>().re)
                .collect(),
            Profile::General(f) => f.derivatives(s, order),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Profile::ExpSum(modes) if modes.is_empty() => "0".into(),
            Profile::ExpSum(modes) => describe_modes(modes.iter().map(|m| (m.coeff, vec![(m.rate, "s")]))),
            Profile::General(f) => f.describe(),
        }
    }
}

/// Forcing term `f(x, t)`.
#[derive(Debug, Clone)]
pub enum Forcing {
    /// `Re Σ c e^{a x + b t}`; empty means `f ≡ 0`.
    ExpSum(Vec<ExpTerm>),
    General(Arc<dyn SmoothFn2>),
}

impl Forcing {
    pub fn zero() -> Self {
        Forcing::ExpSum(Vec::new())
    }

    /// `c e^{a x + b t}`.
    pub fn exp(c: f64, a: f64, b: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        Forcing::ExpSum(vec![ExpTerm { coeff: c.into(), rate_x: a.into(), rate_t: b.into() }])
    }

    pub fn general(f: Arc<dyn SmoothFn2>) -> Self {
        Forcing::General(f)
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_expr(Expr::parse(src)?)
    }

    pub fn from_expr(expr: Expr) -> Result<Self> {
        if let Some(terms) = expr.exp_sum() {
            return Ok(Forcing::ExpSum(terms));
        }
        Ok(Forcing::General(Arc::new(ExprFn2 { expr })))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Forcing::ExpSum(m) if m.is_empty())
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        match self {
            Forcing::ExpSum(terms) => terms.iter().map(|k| k.eval(x, t)).sum::<C64>().re,
            Forcing::General(f) => f.eval(x, t),
        }
    }

    /// The slice `y ↦ f(y, τ)` as a profile.
    pub fn slice(&self, tau: f64) -> Profile {
        match self {
            Forcing::ExpSum(terms) => Profile::ExpSum(
                terms
                    .iter()
                    .map(|k| ExpMode { coeff: k.coeff * (k.rate_t * tau).exp(), rate: k.rate_x })
                    .collect(),
            ),
            Forcing::General(f) => Profile::General(Arc::new(Slice { f: f.clone(), tau })),
        }
    }

    pub fn derivatives_x(&self, x: f64, t: f64, order: usize) -> Vec<f64> {
        self.slice(t).derivatives(x, order)
    }

    pub fn derivatives_t(&self, x: f64, t: f64, order: usize) -> Vec<f64> {
        match self {
            Forcing::ExpSum(terms) => (0..=order)
                .map(|k| terms.iter().map(|m| m.rate_t.powi(k as i32) * m.eval(x, t)).sum::<C64>().re)
                .collect(),
            Forcing::General(f) => f.derivatives_t(x, t, order),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Forcing::ExpSum(terms) if terms.is_empty() => "0".into(),
            Forcing::ExpSum(terms) => {
                describe_modes(terms.iter().map(|k| (k.coeff, vec![(k.rate_x, "x"), (k.rate_t, "t")])))
            }
            Forcing::General(f) => f.describe(),
        }
    }
}

#[derive(Debug)]
struct Slice {
    f: Arc<dyn SmoothFn2>,
    tau: f64,
}

impl SmoothFn for Slice {
    fn eval(&self, s: f64) -> f64 {
        self.f.eval(s, self.tau)
    }
    fn derivatives(&self, s: f64, order: usize) -> Vec<f64> {
        self.f.derivatives_x(s, self.tau, order)
    }
}

fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("({}{:+}i)", z.re, z.im)
    }
}

fn describe_modes<'a>(terms: impl Iterator<Item = (C64, Vec<(C64, &'a str)>)>) -> String {
    let parts: Vec<String> = terms
        .map(|(c, rates)| {
            let exponent: Vec<String> = rates
                .iter()
                .filter(|(r, _)| *r != C64::new(0.0, 0.0))
                .map(|(r, v)| format!("{}*{v}", fmt_c(*r)))
                .collect();
            if exponent.is_empty() {
                fmt_c(c)
            } else {
                format!("{}*exp({})", fmt_c(c), exponent.join(" + "))
            }
        })
        .collect();
    parts.join(" + ")
}

impl Profile {
    /// `sup |p(s)| e^{δ s}` over a sample of `[0, 40/δ]`.
    pub(crate) fn envelope_scale(&self, delta: f64) -> f64 {
        (0..=80)
            .map(|k| {
                let s = k as f64 * 0.5 / delta;
                self.eval(s).abs() * (delta * s).exp()
            })
            .fold(0.0, f64::max)
    }
}
