//! A small arithmetic expression language for user-supplied data.
//!
//! Grammar: numbers, the variables `x` and `t`, the constants `pi` and `e`,
//! binary `+ - * / ^` (with `^` right-associative and binding tighter than
//! unary minus on its left operand), and the functions `exp`, `sin`, `cos`.
//! Derivatives of any order come from forward-mode Taylor arithmetic
//! ([`Jet`]), so conditions such as `u₀'''(0)` are evaluated exactly rather
//! than by finite differences.

mod expsum;
mod jet;
mod parse;

use std::fmt;
use std::str::FromStr;

pub use expsum::ExpTerm;
pub use jet::Jet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    X,
    T,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::X => "x",
            Variable::T => "t",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Variable),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Parses `src`; errors carry the 1-based column of the offending token.
    pub fn parse(src: &str) -> Result<Expr> {
        parse::Parser::parse(src)
    }

    pub fn uses(&self, v: Variable) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(w) => *w == v,
            Expr::Neg(a) | Expr::Call(_, a) => a.uses(v),
            Expr::Bin(_, a, b) => a.uses(v) || b.uses(v),
        }
    }

    /// Rejects expressions that mention any variable outside `allowed`.
    pub fn require_only(&self, allowed: &[Variable], what: &str) -> Result<()> {
        for v in [Variable::X, Variable::T] {
            if !allowed.contains(&v) && self.uses(v) {
                return Err(Error::InvalidArgument(format!("{what} may not depend on `{v}`")));
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(Variable::X) => x,
            Expr::Var(Variable::T) => t,
            Expr::Neg(a) => -a.eval(x, t),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x, t), b.eval(x, t));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => {
                        if b.fract() == 0.0 && b.abs() <= 64.0 {
                            a.powi(b as i32)
                        } else {
                            a.powf(b)
                        }
                    }
                }
            }
            Expr::Call(func, a) => {
                let a = a.eval(x, t);
                match func {
                    Func::Exp => a.exp(),
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                }
            }
        }
    }

    /// Taylor expansion in `var` about `(x, t)` to the given order.
    pub fn jet(&self, var: Variable, x: f64, t: f64, order: usize) -> Jet {
        match self {
            Expr::Num(v) => Jet::constant(*v, order),
            Expr::Var(w) => {
                let value = if *w == Variable::X { x } else { t };
                if *w == var {
                    Jet::variable(value, order)
                } else {
                    Jet::constant(value, order)
                }
            }
            Expr::Neg(a) => -&a.jet(var, x, t, order),
            Expr::Bin(op, a, b) => {
                let ja = a.jet(var, x, t, order);
                let jb = b.jet(var, x, t, order);
                match op {
                    BinOp::Add => &ja + &jb,
                    BinOp::Sub => &ja - &jb,
                    BinOp::Mul => &ja * &jb,
                    BinOp::Div => &ja / &jb,
                    BinOp::Pow => ja.pow(&jb),
                }
            }
            Expr::Call(func, a) => {
                let ja = a.jet(var, x, t, order);
                match func {
                    Func::Exp => ja.exp(),
                    Func::Sin => ja.sin_cos().0,
                    Func::Cos => ja.sin_cos().1,
                }
            }
        }
    }

    /// `[f, ∂f, ..., ∂^order f]` with respect to `var` at `(x, t)`.
    pub fn derivatives(&self, var: Variable, x: f64, t: f64, order: usize) -> Vec<f64> {
        self.jet(var, x, t, order).derivatives()
    }

    /// The expression as `Σ c e^{a x + b t}` if it has that shape
    /// (constants, exponentials, sines and cosines of linear arguments, and
    /// sums, products, integer powers of those).
    pub fn exp_sum(&self) -> Option<Vec<ExpTerm>> {
        expsum::exp_sum(self)
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {s} {b})")
            }
            Expr::Call(func, a) => {
                let name = match func {
                    Func::Exp => "exp",
                    Func::Sin => "sin",
                    Func::Cos => "cos",
                };
                write!(f, "{name}({a})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn precedence_and_associativity() {
        let e = Expr::parse("1 + 2*3^2^0.5 - -4/2").unwrap();
        let expected = 1.0 + 2.0 * 3f64.powf(2f64.powf(0.5)) + 2.0;
        assert!((e.eval(0.0, 0.0) - expected).abs() < 1e-14);
        assert_eq!(Expr::parse("-2^2").unwrap().eval(0.0, 0.0), -4.0);
        assert_eq!(Expr::parse("2*pi").unwrap().eval(0.0, 0.0), 2.0 * std::f64::consts::PI);
        assert_eq!(Expr::parse("1.5e-3").unwrap().eval(0.0, 0.0), 1.5e-3);
    }

    #[test]
    fn parse_errors_carry_columns() {
        match Expr::parse("exp(x +)").unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 8),
            e => panic!("{e}"),
        }
        match Expr::parse("2 * foo(x)").unwrap_err() {
            Error::Parse { column, message } => {
                assert_eq!(column, 5);
                assert!(message.contains("foo"));
            }
            e => panic!("{e}"),
        }
        assert!(Expr::parse("(x").is_err());
        assert!(Expr::parse("x $ 2").is_err());
        assert!(Expr::parse("").is_err());
    }

    #[test]
    fn third_derivative_at_zero() {
        let e = Expr::parse("exp(-x)").unwrap();
        let d = e.derivatives(Variable::X, 0.0, 0.0, 3);
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
        let g = Expr::parse("x^3*sin(x) + cos(2*x)").unwrap();
        let d = g.derivatives(Variable::X, 0.0, 0.0, 4);
        // cos(2x) → 1, 0, −4, 0, 16 ; x³ sin x → 4! x⁴/3! coefficient: 24
        assert_eq!(d, vec![1.0, 0.0, -4.0, 0.0, 16.0 + 24.0]);
    }

    #[test]
    fn partial_derivatives_in_each_variable() {
        let e = Expr::parse("exp(-x)*t^2").unwrap();
        assert_eq!(e.derivatives(Variable::T, 1.0, 3.0, 2), vec![9.0 * (-1f64).exp(), 6.0 * (-1f64).exp(), 2.0 * (-1f64).exp()]);
        assert!(e.uses(Variable::T) && e.uses(Variable::X));
        assert!(e.require_only(&[Variable::X], "u0").is_err());
    }

    #[test]
    fn recognizes_exponential_sums() {
        let e = Expr::parse("2*exp(-x) - exp(-3*x)/4 + 1").unwrap();
        let terms = e.exp_sum().unwrap();
        assert_eq!(terms.len(), 3);
        for x in [0.0, 0.7, 3.0] {
            let s: C64 = terms.iter().map(|k| k.eval(x, 0.0)).sum();
            assert!((s.re - e.eval(x, 0.0)).abs() < 1e-15);
            assert!(s.im.abs() < 1e-15);
        }
        let trig = Expr::parse("sin(2*t) + cos(t)^2").unwrap().exp_sum().unwrap();
        for t in [0.0, 0.4, 2.0] {
            let s: C64 = trig.iter().map(|k| k.eval(0.0, t)).sum();
            assert!((s.re - ((2.0 * t).sin() + t.cos().powi(2))).abs() < 1e-14);
            assert!(s.im.abs() < 1e-14);
        }
        let forcing = Expr::parse("exp(-x)*exp(-t)").unwrap().exp_sum().unwrap();
        assert_eq!(forcing.len(), 1);
        assert_eq!(forcing[0].rate_x, C64::new(-1.0, 0.0));
        assert_eq!(forcing[0].rate_t, C64::new(-1.0, 0.0));
        assert!(Expr::parse("exp(-x^2)").unwrap().exp_sum().is_none());
        assert!(Expr::parse("x*exp(-x)").unwrap().exp_sum().is_none());
        assert_eq!(Expr::parse("0").unwrap().exp_sum().unwrap(), vec![]);
    }

    #[test]
    fn display_round_trips() {
        let src = "exp(-x/2)*sin(3*t) - 2^x";
        let e = Expr::parse(src).unwrap();
        let again = Expr::parse(&e.to_string()).unwrap();
        for (x, t) in [(0.1, 0.2), (1.0, 2.0)] {
            assert_eq!(e.eval(x, t), again.eval(x, t));
        }
    }
}
