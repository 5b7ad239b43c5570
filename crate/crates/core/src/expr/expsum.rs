//! Recognition of expressions that are finite sums `Σ c e^{a x + b t}`.

use super::{BinOp, Expr, Func, Variable};
use crate::C64;

const MAX_TERMS: usize = 64;

/// One term `c e^{a x + b t}` with complex coefficient and rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coeff: C64,
    pub rate_x: C64,
    pub rate_t: C64,
}

impl ExpTerm {
    pub fn eval(&self, x: f64, t: f64) -> C64 {
        self.coeff * (self.rate_x * x + self.rate_t * t).exp()
    }
}

/// `(const, coefficient of x, coefficient of t)`.
type Linear = (C64, C64, C64);

fn linear(e: &Expr) -> Option<Linear> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    Some(match e {
        Expr::Num(v) => (C64::new(*v, 0.0), zero, zero),
        Expr::Var(Variable::X) => (zero, one, zero),
        Expr::Var(Variable::T) => (zero, zero, one),
        Expr::Neg(a) => {
            let (c, x, t) = linear(a)?;
            (-c, -x, -t)
        }
        Expr::Bin(BinOp::Add, a, b) | Expr::Bin(BinOp::Sub, a, b) => {
            let (c1, x1, t1) = linear(a)?;
            let (c2, x2, t2) = linear(b)?;
            let s = if matches!(e, Expr::Bin(BinOp::Sub, ..)) { -1.0 } else { 1.0 };
            (c1 + c2 * s, x1 + x2 * s, t1 + t2 * s)
        }
        Expr::Bin(BinOp::Mul, a, b) => {
            let la = linear(a)?;
            let lb = linear(b)?;
            if la.1 == zero && la.2 == zero {
                (la.0 * lb.0, la.0 * lb.1, la.0 * lb.2)
            } else if lb.1 == zero && lb.2 == zero {
                (lb.0 * la.0, lb.0 * la.1, lb.0 * la.2)
            } else {
                return None;
            }
        }
        Expr::Bin(BinOp::Div, a, b) => {
            let la = linear(a)?;
            let k = e_const(b)?;
            (la.0 / k, la.1 / k, la.2 / k)
        }
        _ => return None,
    })
}

fn e_const(e: &Expr) -> Option<C64> {
    let (c, x, t) = linear(e)?;
    (x == C64::new(0.0, 0.0) && t == C64::new(0.0, 0.0)).then_some(c)
}

fn exp_of(l: Linear, scale: C64) -> ExpTerm {
    ExpTerm { coeff: scale * l.0.exp(), rate_x: l.1, rate_t: l.2 }
}

fn product(a: &[ExpTerm], b: &[ExpTerm]) -> Option<Vec<ExpTerm>> {
    if a.len() * b.len() > MAX_TERMS {
        return None;
    }
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(ExpTerm { coeff: p.coeff * q.coeff, rate_x: p.rate_x + q.rate_x, rate_t: p.rate_t + q.rate_t });
        }
    }
    Some(out)
}

/// Merges terms with equal rates and drops zero coefficients.
fn normalize(terms: Vec<ExpTerm>) -> Vec<ExpTerm> {
    let mut out: Vec<ExpTerm> = Vec::new();
    for term in terms {
        match out.iter_mut().find(|o| o.rate_x == term.rate_x && o.rate_t == term.rate_t) {
            Some(o) => o.coeff += term.coeff,
            None => out.push(term),
        }
    }
    out.retain(|t| t.coeff != C64::new(0.0, 0.0));
    out
}

pub(super) fn exp_sum(e: &Expr) -> Option<Vec<ExpTerm>> {
    terms(e).map(normalize)
}

fn terms(e: &Expr) -> Option<Vec<ExpTerm>> {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    Some(match e {
        Expr::Num(v) => vec![ExpTerm { coeff: C64::new(*v, 0.0), rate_x: zero, rate_t: zero }],
        Expr::Var(_) => return None,
        Expr::Neg(a) => terms(a)?.into_iter().map(|t| ExpTerm { coeff: -t.coeff, ..t }).collect(),
        Expr::Call(Func::Exp, arg) => vec![exp_of(linear(arg)?, one)],
        Expr::Call(Func::Sin, arg) => {
            let l = linear(arg)?;
            let ip = (i * l.0, i * l.1, i * l.2);
            let im = (-i * l.0, -i * l.1, -i * l.2);
            vec![exp_of(ip, -i * 0.5), exp_of(im, i * 0.5)]
        }
        Expr::Call(Func::Cos, arg) => {
            let l = linear(arg)?;
            let ip = (i * l.0, i * l.1, i * l.2);
            let im = (-i * l.0, -i * l.1, -i * l.2);
            vec![exp_of(ip, C64::new(0.5, 0.0)), exp_of(im, C64::new(0.5, 0.0))]
        }
        Expr::Bin(BinOp::Add, a, b) => {
            let mut v = terms(a)?;
            v.extend(terms(b)?);
            if v.len() > MAX_TERMS {
                return None;
            }
            v
        }
        Expr::Bin(BinOp::Sub, a, b) => {
            let mut v = terms(a)?;
            v.extend(terms(b)?.into_iter().map(|t| ExpTerm { coeff: -t.coeff, ..t }));
            if v.len() > MAX_TERMS {
                return None;
            }
            v
        }
        Expr::Bin(BinOp::Mul, a, b) => product(&terms(a)?, &terms(b)?)?,
        Expr::Bin(BinOp::Div, a, b) => {
            let denom = normalize(terms(b)?);
            if denom.len() != 1 {
                return None;
            }
            let d = denom[0];
            let inv = ExpTerm { coeff: one / d.coeff, rate_x: -d.rate_x, rate_t: -d.rate_t };
            product(&terms(a)?, &[inv])?
        }
        Expr::Bin(BinOp::Pow, a, b) => {
            let p = e_const(b)?;
            if p.im != 0.0 || p.re.fract() != 0.0 || !(0.0..=8.0).contains(&p.re) {
                return None;
            }
            let base = terms(a)?;
            let mut acc = vec![ExpTerm { coeff: one, rate_x: zero, rate_t: zero }];
            for _ in 0..p.re as usize {
                acc = normalize(product(&acc, &base)?);
            }
            acc
        }
    })
}
