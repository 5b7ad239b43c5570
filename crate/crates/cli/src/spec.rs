//! Data, grid and candidate specifications.

use anyhow::{anyhow, bail, Context, Result};
use quarterplane::expr::{Expr, Variable};
use quarterplane::transforms::{Forcing, HalfLineData, Profile};
use quarterplane::verify::logspace;
use serde::Serialize;

/// Built-in data as `(u0, g0, f)` expressions.
pub const NAMED_DATA: [(&str, [&str; 3]); 4] = [
    ("zero", ["0", "0", "0"]),
    ("step", ["0", "1", "0"]),
    ("exp-decay", ["exp(-x)", "0", "0"]),
    ("exp-compat", ["exp(-x)", "exp(t)", "0"]),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataSpec {
    pub u0: String,
    pub g0: String,
    pub f: String,
    pub decay_rate: Option<f64>,
}

impl DataSpec {
    /// A named datum, with any of its three parts replaced by expressions.
    pub fn resolve(
        name: Option<&str>,
        u0: Option<&str>,
        g0: Option<&str>,
        f: Option<&str>,
        decay_rate: Option<f64>,
    ) -> Result<Self> {
        let base = match name {
            None => NAMED_DATA[0].1,
            Some(n) => NAMED_DATA.iter().find(|(k, _)| *k == n).map(|(_, v)| *v).ok_or_else(|| {
                let known: Vec<&str> = NAMED_DATA.iter().map(|(k, _)| *k).collect();
                anyhow!("unknown data `{n}` (expected one of {})", known.join(", "))
            })?,
        };
        Ok(Self {
            u0: u0.unwrap_or(base[0]).to_string(),
            g0: g0.unwrap_or(base[1]).to_string(),
            f: f.unwrap_or(base[2]).to_string(),
            decay_rate,
        })
    }

    pub fn build(&self) -> Result<HalfLineData> {
        let u0 = Profile::parse(&self.u0, Variable::X).with_context(|| format!("u0 = `{}`", self.u0))?;
        let g0 = Profile::parse(&self.g0, Variable::T).with_context(|| format!("g0 = `{}`", self.g0))?;
        let f = Forcing::parse(&self.f).with_context(|| format!("f = `{}`", self.f))?;
        let data = HalfLineData::new(u0, g0, f)?;
        Ok(match self.decay_rate {
            Some(d) => data.with_decay_rate(d)?,
            None => data,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub spec: String,
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
}

pub const DEFAULT_GRID: &str = "0.25:4:16,0.25:2:8";

impl GridSpec {
    /// `default`, or `X,T` where each axis is `a`, `a:b:n` (uniform) or
    /// `log:a:b:n`.
    pub fn parse(spec: &str) -> Result<Self> {
        let src = if spec == "default" { DEFAULT_GRID } else { spec };
        let (x, t) = src
            .split_once(',')
            .ok_or_else(|| anyhow!("grid `{spec}` must have the form X,T"))?;
        let xs = axis(x).with_context(|| format!("x axis of grid `{spec}`"))?;
        let ts = axis(t).with_context(|| format!("t axis of grid `{spec}`"))?;
        if let Some(bad) = xs.iter().find(|x| !(**x > 0.0)) {
            bail!("grid x = {bad} is not in the open quarter-plane");
        }
        if let Some(bad) = ts.iter().find(|t| !(**t > 0.0)) {
            bail!("grid t = {bad} is not in the open quarter-plane");
        }
        Ok(Self { spec: spec.to_string(), xs, ts })
    }

    /// Points in row-major order, `t` outer.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.ts.iter().flat_map(|&t| self.xs.iter().map(move |&x| (x, t))).collect()
    }
}

fn axis(s: &str) -> Result<Vec<f64>> {
    let (log, body) = match s.trim().strip_prefix("log:") {
        Some(rest) => (true, rest),
        None => (false, s.trim()),
    };
    let parts: Vec<&str> = body.split(':').collect();
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| anyhow!("`{p}`: {e}"));
    match parts.as_slice() {
        [a] if !log => Ok(vec![num(a)?]),
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|e| anyhow!("`{n}`: {e}"))?;
            if n == 0 {
                bail!("an axis needs at least one point");
            }
            if log {
                if !(a > 0.0 && b > 0.0) {
                    bail!("log axis endpoints must be positive");
                }
                return Ok(logspace(a, b, n));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect())
        }
        _ => bail!("axis `{s}` must be `a`, `a:b:n` or `log:a:b:n`"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CandidateSpec {
    Utm,
    Witness(u32),
    Expression(Expr, String),
}

impl CandidateSpec {
    /// `utm`, `witness:n`, or an expression in `x` and `t`, optionally
    /// prefixed with `expr:`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "utm" {
            return Ok(Self::Utm);
        }
        if let Some(n) = s.strip_prefix("witness:") {
            let n = n.trim().parse().map_err(|e| anyhow!("witness order `{n}`: {e}"))?;
            return Ok(Self::Witness(n));
        }
        let src = s.strip_prefix("expr:").unwrap_or(s);
        let e = Expr::parse(src).with_context(|| format!("candidate expression `{src}`"))?;
        Ok(Self::Expression(e, src.to_string()))
    }
}
