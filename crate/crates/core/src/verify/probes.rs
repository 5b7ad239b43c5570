use serde::Serialize;

use super::{CandidateSolution, Grid, ProbeConfig, StencilOrder};
use crate::contour::quadrature::{integrate_breaks, integrate_half_line};
use crate::contour::{QuadratureSettings, Tolerance};
use crate::dispersion::Equation;
use crate::error::{invalid, Result};
use crate::evaluation::Trap;
use crate::C64;

/// Evaluates `f` on every item using scoped threads. Order is preserved.
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("probe thread panicked")).collect()
    })
}

fn collect<R>(v: Vec<Result<R>>) -> Result<Vec<R>> {
    v.into_iter().collect()
}

fn sup(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

/// `(V_t, spatial operator)` at one point; the operator is `V_xx` for heat
/// and `−V_xxx` for KdV, so the residual is `V_t − op − f`.
fn stencil(c: &CandidateSolution, x: f64, t: f64, h: f64, h3: f64, order: StencilOrder) -> Result<(f64, f64, f64)> {
    let v = |x: f64, t: f64| c.eval(x, t);
    let centre = v(x, t)?;
    let vt = match order {
        StencilOrder::Two => (v(x, t + h)? - v(x, t - h)?) / (2.0 * h),
        StencilOrder::Four => (-v(x, t + 2.0 * h)? + 8.0 * v(x, t + h)? - 8.0 * v(x, t - h)? + v(x, t - 2.0 * h)?) / (12.0 * h),
    };
    let op = match (c.equation, order) {
        (Equation::Heat, StencilOrder::Two) => (v(x + h, t)? - 2.0 * centre + v(x - h, t)?) / (h * h),
        (Equation::Heat, StencilOrder::Four) => {
            (-v(x + 2.0 * h, t)? + 16.0 * v(x + h, t)? - 30.0 * centre + 16.0 * v(x - h, t)? - v(x - 2.0 * h, t)?)
                / (12.0 * h * h)
        }
        (Equation::Kdv, StencilOrder::Two) => {
            -(v(x + 2.0 * h3, t)? - 2.0 * v(x + h3, t)? + 2.0 * v(x - h3, t)? - v(x - 2.0 * h3, t)?) / (2.0 * h3.powi(3))
        }
        (Equation::Kdv, StencilOrder::Four) => {
            -(-v(x + 3.0 * h3, t)? + 8.0 * v(x + 2.0 * h3, t)? - 13.0 * v(x + h3, t)? + 13.0 * v(x - h3, t)?
                - 8.0 * v(x - 2.0 * h3, t)?
                + v(x - 3.0 * h3, t)?)
                / (8.0 * h3.powi(3))
        }
    };
    Ok((centre, vt, op))
}

/// `sup |V_t − op(V) − f|` over the grid by central differences, with step
/// `h` in time and in `x` for heat. KdV third derivatives use the
/// configured `h3` scaled by `h / cfg.h`. Also returns `sup |V|` over the
/// grid.
pub fn residual(c: &CandidateSolution, h: f64, grid: &Grid, cfg: &ProbeConfig) -> Result<(f64, f64)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid(format!("step must be positive, got {h}")));
    }
    let order = match c.equation {
        Equation::Heat => cfg.heat_stencil,
        Equation::Kdv => cfg.kdv_stencil,
    };
    let h3 = cfg.h3 * h / cfg.h;
    let reach_x = match c.equation {
        Equation::Heat => h,
        Equation::Kdv => h3,
    };
    let points: Vec<(f64, f64)> = grid.points().collect();
    for &(x, t) in &points {
        if x < 4.0 * reach_x || t < 4.0 * h {
            return Err(invalid(format!(
                "probe ({x}, {t}) lies within 4h of the boundary (h = {h}, x step {reach_x})"
            )));
        }
    }
    let rows = collect(par_map(&points, |&(x, t)| {
        let (v, vt, op) = stencil(c, x, t, h, h3, order)?;
        Ok(((vt - op - c.data.f.eval(x, t)).abs(), v.abs()))
    }))?;
    Ok((sup(rows.iter().map(|r| r.0)), sup(rows.iter().map(|r| r.1))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub offset: f64,
    /// `sup_t |V(offset, t) − g₀(t)| / max(1, |g₀(t)|)`.
    pub x0: f64,
    /// `sup_x |V(x, offset) − u₀(x)| / max(1, |u₀(x)|)`.
    pub t0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Traces {
    pub rows: Vec<TraceRow>,
    pub monotone_x0: bool,
    pub monotone_t0: bool,
    /// Linear extrapolation of the last two offsets to offset zero.
    pub limit_x0: f64,
    pub limit_t0: f64,
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-14)
}

fn extrapolate(offsets: &[f64], e: &[f64]) -> f64 {
    match e.len() {
        0 => 0.0,
        1 => e[0],
        n => {
            let (o2, o3, e2, e3) = (offsets[n - 2], offsets[n - 1], e[n - 2], e[n - 1]);
            (e3 - (e2 - e3) * o3 / (o2 - o3)).max(0.0)
        }
    }
}

/// Distance of `V` from the data along shrinking offsets from each boundary.
pub fn boundary_traces(c: &CandidateSolution, offsets: &[f64], ts: &[f64], xs: &[f64]) -> Result<Traces> {
    if offsets.is_empty() || offsets.iter().any(|&o| !(o > 0.0)) || offsets.windows(2).any(|w| w[1] >= w[0]) {
        return Err(invalid("trace offsets must be positive and strictly decreasing"));
    }
    let rows = collect(par_map(offsets, |&o| {
        let gap = |v: f64, datum: f64| (v - datum).abs() / datum.abs().max(1.0);
        let x0 = collect(ts.iter().map(|&t| Ok(gap(c.eval(o, t)?, c.data.g0.eval(t)))).collect())?;
        let t0 = collect(xs.iter().map(|&x| Ok(gap(c.eval(x, o)?, c.data.u0.eval(x)))).collect())?;
        Ok(TraceRow { offset: o, x0: sup(x0), t0: sup(t0) })
    }))?;
    let ex: Vec<f64> = rows.iter().map(|r| r.x0).collect();
    let et: Vec<f64> = rows.iter().map(|r| r.t0).collect();
    Ok(Traces {
        monotone_x0: non_increasing(&ex),
        monotone_t0: non_increasing(&et),
        limit_x0: extrapolate(offsets, &ex),
        limit_t0: extrapolate(offsets, &et),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxAbs {
    pub value: f64,
    pub x: f64,
    pub t: f64,
}

pub fn max_abs(c: &CandidateSolution, grid: &Grid) -> Result<MaxAbs> {
    let points: Vec<(f64, f64)> = grid.points().collect();
    let values = collect(par_map(&points, |&(x, t)| c.eval(x, t)))?;
    let mut best = MaxAbs { value: 0.0, x: f64::NAN, t: f64::NAN };
    for (&(x, t), v) in points.iter().zip(values) {
        if v.abs() > best.value || best.x.is_nan() {
            best = MaxAbs { value: v.abs(), x, t };
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub x: f64,
    pub t: f64,
    pub v: f64,
    pub vx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vxx: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRecord {
    pub rows: Vec<DecayRow>,
    pub x_max: f64,
    /// Largest `|V(x_max, t)| / max(1, sup |V|)` over the probe times.
    pub tail_ratio: f64,
    pub decaying: bool,
}

/// Tabulates `|V|`, `|V_x|` and for KdV `|V_xx|` at large `x`. `V` counts as
/// decaying when, at every probe time, `|V|` is non-increasing over the last
/// three positions and small at the last one.
pub fn decay_probes(c: &CandidateSolution, xs: &[f64], ts: &[f64], h: f64, threshold: f64) -> Result<DecayRecord> {
    if xs.len() < 2 || xs.windows(2).any(|w| w[1] <= w[0]) || xs[0] <= h {
        return Err(invalid("decay positions must be increasing and exceed the step"));
    }
    let x_max = xs[xs.len() - 1];
    if x_max < 20.0 {
        return Err(invalid(format!("largest decay position must be at least 20, got {x_max}")));
    }
    let points: Vec<(f64, f64)> = ts.iter().flat_map(|&t| xs.iter().map(move |&x| (x, t))).collect();
    let rows = collect(par_map(&points, |&(x, t)| {
        let (l, m, r) = (c.eval(x - h, t)?, c.eval(x, t)?, c.eval(x + h, t)?);
        Ok(DecayRow {
            x,
            t,
            v: m.abs(),
            vx: ((r - l) / (2.0 * h)).abs(),
            vxx: (c.equation == Equation::Kdv).then(|| ((r - 2.0 * m + l) / (h * h)).abs()),
        })
    }))?;
    let scale = sup(rows.iter().map(|r| r.v)).max(1.0);
    let mut tail_ratio: f64 = 0.0;
    let mut decaying = true;
    for per_t in rows.chunks(xs.len()) {
        let tail: Vec<f64> = per_t.iter().rev().take(3).rev().map(|r| r.v).collect();
        let ratio = tail[tail.len() - 1] / scale;
        tail_ratio = tail_ratio.max(ratio);
        decaying &= ratio <= threshold && non_increasing(&tail);
    }
    Ok(DecayRecord { rows, x_max, tail_ratio, decaying })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct L2Fit {
    /// Least-squares slope of `ln I` against `ln t`.
    pub p: f64,
    pub intercept: f64,
    /// Largest `|ln I − (p ln t + c)|` over the samples.
    pub fit_error: f64,
    /// `(t, I(t))` with `I(t) = ∫₀^∞ V(x,t)² dx`.
    pub samples: Vec<(f64, f64)>,
    /// `I` vanished at every sample, so no fit was made.
    pub degenerate: bool,
    /// Set when the `x`-integral failed to converge at some sample.
    pub divergent: Option<String>,
}

const ROUGH_BREAKS: [f64; 9] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];

/// Fits `∫₀^∞ V(x,t)² dx ~ C t^p` over the sample times.
pub fn integrability_exponent(c: &CandidateSolution, ts: &[f64], tol: f64) -> Result<L2Fit> {
    if ts.len() < 4 || ts.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(invalid("the L2 fit needs at least four positive sample times"));
    }
    let outcomes = par_map(ts, |&t| {
        let trap = Trap::new();
        let f = |x: f64| trap.catch(c.eval(x, t).map(|v| C64::new(v * v, 0.0)));
        let rough = integrate_breaks(&f, &ROUGH_BREAKS, &QuadratureSettings::new(1e-3)).value.re.abs();
        let settings = QuadratureSettings::new(Tolerance { abs: (tol * rough).max(1e-300), rel: tol });
        let out = integrate_half_line(&f, 0.0, &settings);
        (trap.into_error(), out)
    });
    let mut samples = Vec::with_capacity(ts.len());
    let nan = |samples, divergent| L2Fit {
        p: f64::NAN,
        intercept: f64::NAN,
        fit_error: f64::NAN,
        samples,
        degenerate: false,
        divergent: Some(divergent),
    };
    for (&t, (err, out)) in ts.iter().zip(outcomes) {
        if let Some(e) = err {
            return Err(e);
        }
        match out.and_then(|o| o.require_converged()) {
            Ok(o) => samples.push((t, o.value.re)),
            Err(e) => return Ok(nan(samples, format!("t = {t}: {e}"))),
        }
    }
    if samples.iter().all(|s| s.1 == 0.0) {
        return Ok(L2Fit {
            p: f64::NAN,
            intercept: f64::NAN,
            fit_error: f64::NAN,
            samples,
            degenerate: true,
            divergent: None,
        });
    }
    if samples.iter().any(|s| !(s.1 > 0.0)) {
        return Ok(nan(samples, "I vanishes at some but not all samples".into()));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(t, i)| (t.ln(), i.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let p = sxy / sxx;
    let intercept = my - p * mx;
    let fit_error = sup(pts.iter().map(|q| (q.1 - p * q.0 - intercept).abs()));
    Ok(L2Fit { p, intercept, fit_error, samples, degenerate: false, divergent: None })
}
