use std::path::PathBuf;

use anyhow::{anyhow, Result};
use quarterplane::expr::Variable;
use quarterplane::heat::{solve_heat_with, HeatOptions, HeatPoint};
use quarterplane::kdv::{solve_kdv_with, KdvOptions};
use quarterplane::nonuniq::{self, explain};
use quarterplane::transforms::HalfLineData;
use quarterplane::verify::{check_compatibility, verify as run_battery, CandidateSolution, CompatFlags, ProbeConfig};
use quarterplane::{Equation, Error, Evaluation};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{self, Row};
use crate::settings::Config;
use crate::spec::{CandidateSpec, DataSpec, GridSpec};
use crate::{usage, Exit};

const COMPAT_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Serialize)]
struct Versions {
    quarterplane: &'static str,
    quarterplane_cli: &'static str,
}

const VERSIONS: Versions = Versions {
    quarterplane: quarterplane::VERSION,
    quarterplane_cli: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Serialize)]
struct DataRecord {
    u0: String,
    g0: String,
    f: String,
    decay_rate: f64,
}

impl DataRecord {
    fn new(spec: &DataSpec, data: &HalfLineData) -> Self {
        Self {
            u0: spec.u0.clone(),
            g0: spec.g0.clone(),
            f: spec.f.clone(),
            decay_rate: data.decay_rate(),
        }
    }
}

#[derive(Debug, Serialize)]
struct GridRecord {
    spec: String,
    xs: Vec<f64>,
    ts: Vec<f64>,
}

impl From<&GridSpec> for GridRecord {
    fn from(g: &GridSpec) -> Self {
        Self { spec: g.spec.clone(), xs: g.xs.clone(), ts: g.ts.clone() }
    }
}

#[derive(Debug, Serialize)]
struct PointFailure {
    x: f64,
    t: f64,
    error: String,
}

#[derive(Debug, Serialize)]
struct SolveManifest {
    command: &'static str,
    config: Config,
    equation: Equation,
    data: DataRecord,
    tol: f64,
    solver: serde_json::Value,
    grid: GridRecord,
    compatibility: CompatFlags,
    warnings: Vec<String>,
    failures: Vec<PointFailure>,
    max_abs_error: f64,
    evaluations: usize,
    outputs: Vec<String>,
    versions: Versions,
}

fn out_dir(cfg: &Config) -> PathBuf {
    cfg.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn data_spec(cfg: &Config) -> Result<(DataSpec, HalfLineData)> {
    let spec = DataSpec::resolve(cfg.data.as_deref(), cfg.u0.as_deref(), cfg.g0.as_deref(), cfg.f.as_deref(), cfg.decay_rate)
        .map_err(usage)?;
    let data = spec.build().map_err(usage)?;
    Ok((spec, data))
}

fn compat_warnings(flags: &CompatFlags) -> Vec<String> {
    if flags.all_pass() {
        return Vec::new();
    }
    let w = format!("incompatible data: {}", flags.summary());
    eprintln!("warning: {w}");
    vec![w]
}

enum Solver {
    Heat(HeatOptions),
    Kdv(KdvOptions),
}

impl Solver {
    fn new(eq: Equation, tol: f64, t_floor: f64) -> Self {
        match eq {
            Equation::Heat => Solver::Heat(HeatOptions { t_floor, ..HeatOptions::with_tol(tol) }),
            Equation::Kdv => Solver::Kdv(KdvOptions { t_floor, ..KdvOptions::with_tol(tol) }),
        }
    }

    fn eval(&self, data: &HalfLineData, x: f64, t: f64) -> quarterplane::Result<Evaluation> {
        let p = HeatPoint::new(x, t)?;
        match self {
            Solver::Heat(o) => solve_heat_with(data, p, o),
            Solver::Kdv(o) => solve_kdv_with(data, p, o),
        }
    }

    fn describe(&self) -> Result<serde_json::Value> {
        Ok(match self {
            Solver::Heat(o) => serde_json::to_value(o)?,
            Solver::Kdv(o) => serde_json::to_value(o)?,
        })
    }
}

pub fn solve(cfg: Config) -> Result<Exit> {
    let eq = cfg.equation().map_err(usage)?;
    let tol = cfg.tol().map_err(usage)?;
    let t_floor = cfg.t_floor().map_err(usage)?;
    let (spec, data) = data_spec(&cfg)?;
    let grid = GridSpec::parse(cfg.grid.as_deref().unwrap_or("default")).map_err(usage)?;
    let compatibility = check_compatibility(&data, eq, COMPAT_THRESHOLD)?;
    let warnings = compat_warnings(&compatibility);

    let solver = Solver::new(eq, tol, t_floor);
    let results: Vec<(f64, f64, quarterplane::Result<Evaluation>)> = grid
        .points()
        .into_par_iter()
        .map(|(x, t)| (x, t, solver.eval(&data, x, t)))
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    let mut evaluations = 0;
    for (x, t, r) in results {
        match r {
            Ok(e) => {
                evaluations += e.evaluations;
                rows.push(Row { x, t, value: e.value, abs_error: e.abs_error });
            }
            Err(err) => {
                eprintln!("error at (x, t) = ({x}, {t}): {err}");
                failures.push(PointFailure { x, t, error: err.to_string() });
                rows.push(Row { x, t, value: f64::NAN, abs_error: f64::NAN });
            }
        }
    }
    let max_abs_error = rows.iter().map(|r| r.abs_error).filter(|e| e.is_finite()).fold(0.0, f64::max);

    let dir = out_dir(&cfg);
    let csv = output::write(&dir, "solution.csv", &output::csv(&rows))?;
    let manifest = SolveManifest {
        command: "solve",
        config: Config {
            equation: Some(eq),
            data: cfg.data.clone(),
            u0: Some(spec.u0.clone()),
            g0: Some(spec.g0.clone()),
            f: Some(spec.f.clone()),
            decay_rate: cfg.decay_rate,
            grid: Some(grid.spec.clone()),
            tol: Some(tol),
            t_floor: Some(t_floor),
            ..Config::default()
        },
        equation: eq,
        data: DataRecord::new(&spec, &data),
        tol,
        solver: solver.describe()?,
        grid: (&grid).into(),
        compatibility,
        warnings,
        failures,
        max_abs_error,
        evaluations,
        outputs: vec![csv, "manifest.json".into()],
        versions: VERSIONS,
    };
    output::write(&dir, "manifest.json", &output::json(&manifest)?)?;
    println!(
        "{eq}: {} points, max abs_error {:.3e}, {} failed; wrote {}",
        rows.len(),
        max_abs_error,
        manifest.failures.len(),
        dir.join("solution.csv").display()
    );
    Ok(if manifest.failures.is_empty() { Exit::Ok } else { Exit::Compute })
}

#[derive(Debug, Serialize)]
struct CounterexampleManifest {
    command: &'static str,
    config: Config,
    equation: Equation,
    n: u32,
    witness: String,
    grid: GridRecord,
    l2_exponent: f64,
    outputs: Vec<String>,
    versions: Versions,
}

pub fn counterexample(cfg: Config) -> Result<Exit> {
    let eq = cfg.equation().map_err(usage)?;
    let n = cfg.n.ok_or_else(|| usage(anyhow!("no witness order given (use --n)")))?;
    let probe = cfg.probe.clone().unwrap_or_else(|| nonuniq::probe_config_for(eq, n));
    let grid = GridSpec::parse(cfg.grid.as_deref().unwrap_or("default")).map_err(usage)?;
    let w = match nonuniq::generate(eq, n, &probe) {
        Ok(w) => w,
        Err(e @ Error::OrderOutOfRange { .. }) => return Err(usage(e.into())),
        Err(Error::CertificationFailed { clause, detail }) => {
            eprintln!("certification failed on clause `{clause}`: {detail}");
            return Ok(Exit::Failed);
        }
        Err(e) => return Err(e.into()),
    };
    let values: Vec<quarterplane::Result<f64>> = grid.points().into_par_iter().map(|(x, t)| w.eval(x, t)).collect();
    let mut rows = Vec::with_capacity(values.len());
    for ((x, t), v) in grid.points().into_iter().zip(values) {
        rows.push(Row { x, t, value: v?, abs_error: 0.0 });
    }
    let e = explain(&w);

    let dir = out_dir(&cfg);
    let outputs = vec![
        output::write(&dir, "witness.csv", &output::csv(&rows))?,
        output::write(&dir, "certificate.json", &output::json(&w.certificate)?)?,
        output::write(&dir, "explain.json", &output::json(&e)?)?,
        output::write(&dir, "explain.txt", &e.text)?,
        "manifest.json".to_string(),
    ];
    let manifest = CounterexampleManifest {
        command: "counterexample",
        config: Config {
            equation: Some(eq),
            n: Some(n),
            grid: Some(grid.spec.clone()),
            probe: Some(probe),
            ..Config::default()
        },
        equation: eq,
        n,
        witness: w.name().to_string(),
        grid: (&grid).into(),
        l2_exponent: e.l2_exponent,
        outputs,
        versions: VERSIONS,
    };
    output::write(&dir, "manifest.json", &output::json(&manifest)?)?;
    print!("{}", e.text);
    Ok(Exit::Ok)
}

#[derive(Debug, Serialize)]
struct VerifyManifest {
    command: &'static str,
    config: Config,
    equation: Equation,
    data: DataRecord,
    candidate: String,
    passed: bool,
    failed_clauses: Vec<String>,
    outputs: Vec<String>,
    versions: Versions,
}

fn candidate(
    eq: Equation,
    spec: &CandidateSpec,
    data: &HalfLineData,
    tol: f64,
    t_floor: f64,
) -> Result<CandidateSolution> {
    Ok(match spec {
        CandidateSpec::Utm => {
            let solver = Solver::new(eq, tol, t_floor);
            let d = data.clone();
            CandidateSolution::new(format!("{eq} utm"), eq, data.clone(), move |x, t| Ok(solver.eval(&d, x, t)?.value))
        }
        CandidateSpec::Witness(n) => {
            let mut c = nonuniq::candidate(eq, *n).map_err(|e| usage(e.into()))?;
            c.data = data.clone();
            c
        }
        CandidateSpec::Expression(e, src) => {
            e.require_only(&[Variable::X, Variable::T], "candidate").map_err(|e| usage(e.into()))?;
            let e = e.clone();
            CandidateSolution::new(src.clone(), eq, data.clone(), move |x, t| Ok(e.eval(x, t)))
        }
    })
}

pub fn verify(cfg: Config) -> Result<Exit> {
    let eq = cfg.equation().map_err(usage)?;
    let tol = cfg.candidate_tol().map_err(usage)?;
    let t_floor = cfg.t_floor().map_err(usage)?;
    let (spec, data) = data_spec(&cfg)?;
    let cand_src = cfg.candidate.clone().unwrap_or_else(|| "utm".into());
    let cand = CandidateSpec::parse(&cand_src).map_err(usage)?;
    let probe = match (&cfg.probe, &cand) {
        (Some(p), _) => p.clone(),
        (None, CandidateSpec::Witness(n)) => nonuniq::probe_config_for(eq, *n),
        (None, _) => ProbeConfig::default(),
    };
    let c = candidate(eq, &cand, &data, tol, t_floor)?;
    let report = run_battery(&c, &probe)?;
    let json = output::json(&report)?;

    let mut summary = String::new();
    for cl in &report.clauses {
        summary += &format!("{:<14} {}  {}\n", cl.name, if cl.pass { "PASS" } else { "FAIL" }, cl.detail);
    }
    summary += if report.passed { "all clauses pass\n" } else { "some clauses fail\n" };

    if cfg.out.is_none() {
        eprint!("{summary}");
        print!("{json}");
    } else {
        print!("{summary}");
    }
    if let Some(dir) = &cfg.out {
        let manifest = VerifyManifest {
            command: "verify",
            config: Config {
                equation: Some(eq),
                data: cfg.data.clone(),
                u0: Some(spec.u0.clone()),
                g0: Some(spec.g0.clone()),
                f: Some(spec.f.clone()),
                decay_rate: cfg.decay_rate,
                candidate: Some(cand_src),
                candidate_tol: Some(tol),
                t_floor: Some(t_floor),
                probe: Some(probe),
                ..Config::default()
            },
            equation: eq,
            data: DataRecord::new(&spec, &data),
            candidate: report.candidate.clone(),
            passed: report.passed,
            failed_clauses: report.failed_clauses().iter().map(|s| s.to_string()).collect(),
            outputs: vec![output::write(dir, "report.json", &json)?, "manifest.json".into()],
            versions: VERSIONS,
        };
        output::write(dir, "manifest.json", &output::json(&manifest)?)?;
    }
    Ok(if report.passed { Exit::Ok } else { Exit::Failed })
}
