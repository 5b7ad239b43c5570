//! Acceptance battery. Prints one line per criterion and exits nonzero if
//! any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use quarterplane::heat::{self, HeatPoint, UVariant, VVariant};
use quarterplane::kdv::{self, KdvUVariant};
use quarterplane::nonuniq::generate;
use quarterplane::oracle;
use quarterplane::transforms::{Forcing, HalfLineData, Profile};
use quarterplane::verify::{
    boundary_traces, check_compatibility, integrability_exponent, logspace, residual, CandidateSolution, ProbeConfig,
};
use quarterplane::{Equation, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

/// Log-uniform random points in a box.
fn random_points(seed: u64, n: usize, x: (f64, f64), t: (f64, f64)) -> Vec<(f64, f64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut draw = |(a, b): (f64, f64)| (rng.gen_range(a.ln()..b.ln()) as f64).exp();
    (0..n).map(|_| (draw(x), draw(t))).collect()
}

fn pt(x: f64, t: f64) -> HeatPoint {
    HeatPoint::new(x, t).expect("probe points are in the open quadrant")
}

fn heat_oracle() -> Result<Outcome> {
    let data = HalfLineData::new(Profile::zero(), Profile::constant(1.0), Forcing::zero())?;
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for &t in &logspace(0.05, 10.0, 20) {
        for &x in &logspace(0.05, 20.0, 20) {
            let got = heat::solve_heat(&data, pt(x, t), 1e-11)?;
            worst = worst.max((got - oracle::erfc_solution(x, t)?).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-8 && secs <= 60.0,
        format!("max |solve_heat - erfc| = {worst:.2e} on 20x20 grid in {secs:.2} s"),
    )
}

fn gamma_rewrite() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (x, t) in random_points(2, 50, (0.05, 10.0), (0.05, 10.0)) {
        let a = heat::example1_v(pt(x, t), VVariant::Gamma, 1e-12)?;
        let b = heat::example1_v(pt(x, t), VVariant::Gamma0, 1e-12)?;
        worst = worst.max((a - b).abs());
    }
    outcome(worst <= 1e-9, format!("max |v_gamma - v_gamma0| = {worst:.2e} at 50 points"))
}

fn l2_law() -> Result<Outcome> {
    let kernel = CandidateSolution::new("x t^-3/2 e^-x^2/4t", Equation::Heat, HalfLineData::zero(), |x, t| {
        Ok(x * t.powf(-1.5) * (-x * x / (4.0 * t)).exp())
    });
    let fit = integrability_exponent(&kernel, &[0.25, 1.0, 4.0, 16.0], 1e-13)?;
    let worst = fit.samples[..3]
        .iter()
        .map(|&(t, i)| (i / ((PI / 2.0).sqrt() * t.powf(-1.5)) - 1.0).abs())
        .fold(0.0, f64::max);
    let w = generate(Equation::Heat, 1, &ProbeConfig::default())?;
    let p = w.certificate.l2_exponent_fit.p;
    outcome(
        worst <= 1e-8 && (p + 1.5).abs() <= 0.01,
        format!("max relative error vs sqrt(pi/2) t^-3/2 = {worst:.2e}; witness exponent p = {p:.5}"),
    )
}

fn witness_battery(eq: Equation, orders: std::ops::RangeInclusive<u32>) -> Result<(bool, String)> {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in orders {
        let cfg = ProbeConfig::default();
        let w = generate(eq, n, &cfg);
        let (res, trace, max) = match &w {
            Ok(w) => {
                let r = &w.certificate;
                (r.residual_sup, r.trace_sup_x0.max(r.trace_sup_t0), r.max_abs.value)
            }
            Err(e) => {
                pass = false;
                parts.push(format!("u{n}: {e}"));
                continue;
            }
        };
        pass &= res <= 1e-5 && trace <= 1e-4 && max >= 1e-2;
        parts.push(format!("u{n}: res {res:.1e} trace {trace:.1e} max {max:.1e}"));
    }
    Ok((pass, parts.join("; ")))
}

fn heat_witnesses() -> Result<Outcome> {
    let (mut pass, mut detail) = witness_battery(Equation::Heat, 1..=6)?;
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for (x, t) in random_points(40 + n as u64, 10, (0.05, 8.0), (0.5, 8.0)) {
            let a = heat::heat_un(n, pt(x, t), UVariant::Contour, 1e-12)?;
            let b = heat::heat_un(n, pt(x, t), UVariant::ClosedForm, 0.0)?;
            worst = worst.max((a - b).abs());
        }
    }
    pass &= worst <= 1e-9;
    detail.push_str(&format!("; contour vs closed form {worst:.1e}"));
    outcome(pass, detail)
}

fn kdv_witnesses() -> Result<Outcome> {
    let (mut pass, mut detail) = witness_battery(Equation::Kdv, 1..=4)?;
    let mut worst: f64 = 0.0;
    for (x, t) in random_points(5, 50, (0.05, 10.0), (0.05, 5.0)) {
        let a = kdv::example2_u(pt(x, t), 1.0, 1e-11)?;
        worst = worst.max((a - oracle::airy_kdv_u(x, t)).abs());
    }
    pass &= worst <= 1e-7;
    detail.push_str(&format!("; example2_u vs Airy {worst:.1e} at 50 points"));
    outcome(pass, detail)
}

fn epsilon_independence() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (x, t) in random_points(6, 20, (0.1, 5.0), (0.1, 1.5)) {
        for f in [kdv::example2_v, kdv::example2_u] {
            let vals: Vec<f64> = [0.5, 1.0, 2.0].iter().map(|&e| f(pt(x, t), e, 1e-12)).collect::<Result<_>>()?;
            worst = worst.max((vals[0] - vals[1]).abs()).max((vals[1] - vals[2]).abs()).max((vals[0] - vals[2]).abs());
        }
    }
    outcome(worst <= 1e-9, format!("max pairwise gap over eps in {{0.5, 1, 2}} = {worst:.2e} at 20 points (v and u)"))
}

fn compatibility() -> Result<Outcome> {
    let step = HalfLineData::new(Profile::zero(), Profile::constant(1.0), Forcing::zero())?;
    let c = check_compatibility(&step, Equation::Heat, 1e-10)?;
    let step_ok = !c.conditions[0].pass && c.conditions[0].residual == -1.0;

    let exp = HalfLineData::new(Profile::exp(1.0, -1.0), Profile::exp(1.0, 1.0), Forcing::zero())?;
    let exp_ok = check_compatibility(&exp, Equation::Heat, 1e-10)?.all_pass();

    // sin(x) e^{-x^2} has u0'''(0) = -7, so g0 = 7t satisfies the KdV condition.
    let smooth = HalfLineData::new(
        Profile::parse("sin(x)*exp(-x^2)", quarterplane::expr::Variable::X)?,
        Profile::parse("7*t", quarterplane::expr::Variable::T)?,
        Forcing::zero(),
    )?;
    let k = check_compatibility(&smooth, Equation::Kdv, 0.0)?;
    let off = HalfLineData::new(
        Profile::parse("sin(x)*exp(-x^2)", quarterplane::expr::Variable::X)?,
        Profile::parse("6*t", quarterplane::expr::Variable::T)?,
        Forcing::zero(),
    )?;
    let k_off = check_compatibility(&off, Equation::Kdv, 1e-10)?;
    let kdv_ok = k.all_pass() && !k_off.conditions[1].pass && k_off.conditions[1].residual == -1.0;
    outcome(
        step_ok && exp_ok && kdv_ok,
        format!(
            "step: {}; exp heat: {}; kdv sin(x)e^(-x^2) with 7t: {}, with 6t: {}",
            c.summary(),
            if exp_ok { "pass" } else { "FAIL" },
            k.summary(),
            k_off.summary()
        ),
    )
}

fn reconstruction() -> Result<Outcome> {
    let offsets = [1e-2, 1e-3, 1e-4];
    let ts = logspace(0.1, 2.0, 6);
    let xs = logspace(0.1, 5.0, 6);
    let exp = || HalfLineData::new(Profile::exp(1.0, -1.0), Profile::exp(1.0, 1.0), Forcing::zero());
    let x = quarterplane::expr::Variable::X;
    let t = quarterplane::expr::Variable::T;
    let cases: Vec<(&str, Equation, HalfLineData)> = vec![
        ("heat (e^-x, e^t, 0)", Equation::Heat, exp()?),
        ("kdv (e^-x, e^t, 0)", Equation::Kdv, exp()?),
        (
            "heat (x e^(-x^2), t^2, 0)",
            Equation::Heat,
            HalfLineData::new(Profile::parse("x*exp(-x^2)", x)?, Profile::parse("t^2", t)?, Forcing::zero())?,
        ),
        (
            "kdv (sin(x) e^(-x^2), 7t, 0)",
            Equation::Kdv,
            HalfLineData::new(Profile::parse("sin(x)*exp(-x^2)", x)?, Profile::parse("7*t", t)?, Forcing::zero())?,
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, eq, data) in cases {
        let d = data.clone();
        let c = CandidateSolution::new(name, eq, data, move |x, t| match eq {
            Equation::Heat => heat::solve_heat(&d, pt(x, t), 1e-11),
            Equation::Kdv => kdv::solve_kdv(&d, pt(x, t), 1e-11),
        });
        let tr = boundary_traces(&c, &offsets, &ts, &xs)?;
        let last = tr.rows.last().expect("three offsets");
        let ok = last.x0 <= 1e-3 && last.t0 <= 1e-3 && tr.monotone_x0 && tr.monotone_t0;
        pass &= ok;
        let seq = |f: fn(&quarterplane::verify::TraceRow) -> f64| {
            tr.rows.iter().map(|r| format!("{:.1e}", f(r))).collect::<Vec<_>>().join(" > ")
        };
        parts.push(format!("{name}: g0 {} ; u0 {}", seq(|r| r.x0), seq(|r| r.t0)));
    }
    outcome(pass, parts.join("; "))
}

fn residual_order() -> Result<Outcome> {
    let c = CandidateSolution::new("u", Equation::Heat, HalfLineData::zero(), |x, t| {
        heat::example1_u(pt(x, t), UVariant::ClosedForm, 0.0)
    });
    let cfg = ProbeConfig::default();
    let (r1, _) = residual(&c, 1e-3, &cfg.residual_grid, &cfg)?;
    let (r2, _) = residual(&c, 5e-4, &cfg.residual_grid, &cfg)?;
    let ratio = r1 / r2;
    outcome(
        (3.5..=4.5).contains(&ratio),
        format!("residual {r1:.3e} at h = 1e-3, {r2:.3e} at h = 5e-4, ratio {ratio:.3}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("heat oracle", heat_oracle),
        ("gamma rewrite", gamma_rewrite),
        ("L2 law", l2_law),
        ("heat witnesses", heat_witnesses),
        ("kdv witnesses", kdv_witnesses),
        ("eps independence", epsilon_independence),
        ("compatibility", compatibility),
        ("reconstruction", reconstruction),
        ("residual order", residual_order),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        failed += usize::from(!o.pass);
        println!(
            "criterion {} [{name}] {} ({:.1} s): {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
