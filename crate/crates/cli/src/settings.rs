//! Flags, the JSON config file and the tolerance environment variable.
//!
//! A value given as a flag wins over the config file, which wins over
//! [`TOL_ENV`] and then the built-in default.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::Args;
use quarterplane::verify::ProbeConfig;
use quarterplane::Equation;
use serde::{Deserialize, Serialize};

pub const TOL_ENV: &str = "QUARTERPLANE_TOL";
pub const DEFAULT_TOL: f64 = quarterplane::contour::DEFAULT_TOL;
/// Tolerance of contour evaluations inside `verify`, where finite
/// differences amplify quadrature noise by `h⁻³`.
pub const DEFAULT_CANDIDATE_TOL: f64 = 1e-13;

/// Everything a run depends on. Written back into each manifest, so a
/// manifest can be passed to `--config` to repeat the run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<Equation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! or_fields {
    ($a:ident, $b:ident, $($f:ident),*) => {
        Config { $($f: $a.$f.or($b.$f)),* }
    };
}

impl Config {
    /// Field-wise: `self` where set, else `other`.
    pub fn or(self, other: Config) -> Config {
        let (a, b) = (self, other);
        or_fields!(a, b, equation, data, u0, g0, f, decay_rate, grid, tol, t_floor, n, candidate, candidate_tol, probe, out)
    }

    /// Reads a config file, or the `config` object of a run manifest.
    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut v: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(inner) = v.get_mut("config").filter(|c| c.is_object()) {
            v = inner.take();
        }
        serde_json::from_value(v).with_context(|| format!("reading config {}", path.display()))
    }

    pub fn equation(&self) -> Result<Equation> {
        self.equation.ok_or_else(|| anyhow!("no equation given (use --eq heat|kdv)"))
    }

    pub fn tol(&self) -> Result<f64> {
        let tol = match self.tol {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(s) => s.trim().parse().map_err(|e| anyhow!("{TOL_ENV}=`{s}`: {e}"))?,
                Err(_) => DEFAULT_TOL,
            },
        };
        positive("tolerance", tol)
    }

    pub fn candidate_tol(&self) -> Result<f64> {
        positive("candidate tolerance", self.candidate_tol.unwrap_or(DEFAULT_CANDIDATE_TOL))
    }

    pub fn t_floor(&self) -> Result<f64> {
        positive("t floor", self.t_floor.unwrap_or(quarterplane::heat::DEFAULT_T_FLOOR))
    }
}

fn positive(what: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(anyhow!("{what} must be positive, got {v}"))
    }
}

fn parse_equation(s: &str) -> Result<Equation, String> {
    match s {
        "heat" => Ok(Equation::Heat),
        "kdv" => Ok(Equation::Kdv),
        _ => Err(format!("`{s}` is not an equation (expected heat or kdv)")),
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// heat or kdv.
    #[arg(long = "eq", value_parser = parse_equation)]
    pub equation: Option<Equation>,
    /// Absolute tolerance of the contour integrals [env: QUARTERPLANE_TOL]
    #[arg(long)]
    pub tol: Option<f64>,
    /// Smallest t accepted by the solvers.
    #[arg(long)]
    pub t_floor: Option<f64>,
    /// JSON config file, or a manifest from an earlier run.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// zero, step, exp-decay or exp-compat.
    #[arg(long)]
    pub data: Option<String>,
    /// Initial datum, an expression in x.
    #[arg(long)]
    pub u0: Option<String>,
    /// Boundary datum, an expression in t.
    #[arg(long)]
    pub g0: Option<String>,
    /// Forcing, an expression in x and t.
    #[arg(long)]
    pub f: Option<String>,
    /// Declared decay rate of u0 and f in x.
    #[arg(long)]
    pub decay_rate: Option<f64>,
}

impl CommonArgs {
    pub fn config(&self) -> Config {
        Config {
            equation: self.equation,
            tol: self.tol,
            t_floor: self.t_floor,
            out: self.out.clone(),
            ..Config::default()
        }
    }

    /// Flags in `own`, then the config file.
    pub fn merged(&self, own: Config) -> Result<Config> {
        let flags = own.or(self.config());
        match &self.config {
            Some(path) => Ok(flags.or(Config::load(path)?)),
            None => Ok(flags),
        }
    }
}

impl DataArgs {
    pub fn config(&self) -> Config {
        Config {
            data: self.data.clone(),
            u0: self.u0.clone(),
            g0: self.g0.clone(),
            f: self.f.clone(),
            decay_rate: self.decay_rate,
            ..Config::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let a = Config { tol: Some(1e-8), ..Config::default() };
        let b = Config { tol: Some(1e-6), grid: Some("1,1".into()), ..Config::default() };
        let c = a.or(b);
        assert_eq!(c.tol, Some(1e-8));
        assert_eq!(c.grid.as_deref(), Some("1,1"));
    }

    #[test]
    fn manifest_is_a_config() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.json");
        fs::write(&p, r#"{"command": "solve", "config": {"equation": "kdv", "tol": 1e-9}}"#).unwrap();
        let c = Config::load(&p).unwrap();
        assert_eq!(c.equation, Some(Equation::Kdv));
        assert_eq!(c.tol, Some(1e-9));
        fs::write(&p, r#"{"tolerance": 1}"#).unwrap();
        assert!(Config::load(&p).is_err());
    }

    #[test]
    fn probe_config_is_partial() {
        let c: Config = serde_json::from_str(r#"{"probe": {"h": 0.002}}"#).unwrap();
        let p = c.probe.unwrap();
        assert_eq!(p.h, 0.002);
        assert_eq!(p.h3, ProbeConfig::default().h3);
    }
}
