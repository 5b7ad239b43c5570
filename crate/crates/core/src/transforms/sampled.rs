//! Composite Kronrod rules over `[0, Y]` with the profile sampled once per
//! refinement level, for transforms of one profile at many arguments.

use std::sync::OnceLock;

use super::profile::Profile;
use crate::contour::gk::kronrod21;
use crate::C64;

const BASE_PANELS: usize = 16;
const MAX_LEVEL: usize = 12;
const COARSE_STEP: f64 = 0.125;
/// Largest phase change of `e^{−iμy}` across one panel.
const MAX_PHASE: f64 = 8.0;
const TOL_FLOOR: f64 = 1e-17;

#[derive(Debug)]
pub(super) struct Sampled {
    profile: Profile,
    delta: f64,
    scale: f64,
    kappa_min: f64,
    y_max: f64,
    /// `Σ_{j ≥ k} |p(y_j)| e^{(δ − κ_min) y_j} · step` on the coarse grid.
    tail: Vec<f64>,
    levels: Vec<OnceLock<Vec<f64>>>,
}

impl Sampled {
    pub fn new(profile: Profile, delta: f64, scale: f64) -> Self {
        let kappa_min = 0.25 * delta;
        let y_max = ((10.0 * scale / (kappa_min * TOL_FLOOR)).max(1.0).ln() / kappa_min).max(1.0 / kappa_min);
        let n = (y_max / COARSE_STEP).ceil() as usize + 1;
        let mut tail = vec![0.0; n + 1];
        for k in (0..n).rev() {
            let y = k as f64 * COARSE_STEP;
            tail[k] = tail[k + 1] + profile.eval(y).abs() * ((delta - kappa_min) * y).exp() * COARSE_STEP;
        }
        Self {
            profile,
            delta,
            scale,
            kappa_min,
            y_max,
            tail,
            levels: (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect(),
        }
    }

    fn panels(level: usize) -> usize {
        BASE_PANELS << level
    }

    /// Kronrod weights times `p` at the nodes, panel by panel.
    fn level(&self, level: usize) -> &[f64] {
        self.levels[level].get_or_init(|| {
            let (x, w) = kronrod21();
            let m = Self::panels(level);
            let h = self.y_max / m as f64;
            let mut out = Vec::with_capacity(m * 21);
            for k in 0..m {
                let c = (k as f64 + 0.5) * h;
                for j in 0..21 {
                    out.push(0.5 * h * w[j] * self.profile.eval(c + 0.5 * h * x[j]));
                }
            }
            out
        })
    }

    fn sum(&self, mu: C64, level: usize, y_cut: f64) -> C64 {
        let (x, _) = kronrod21();
        let m = Self::panels(level);
        let h = self.y_max / m as f64;
        let used = ((y_cut / h).ceil() as usize).clamp(1, m);
        let i = C64::new(0.0, 1.0);
        let nodes: Vec<C64> = x.iter().map(|&xj| (-i * mu * (0.5 * h * xj)).exp()).collect();
        let wp = self.level(level);
        let mut total = C64::new(0.0, 0.0);
        for k in 0..used {
            let row = &wp[k * 21..(k + 1) * 21];
            let inner: C64 = row.iter().zip(&nodes).map(|(&a, &b)| b * a).sum();
            total += (-i * mu * ((k as f64 + 0.5) * h)).exp() * inner;
        }
        total
    }

    /// `∫₀^∞ e^{−iμy} p(y) dy`, or `None` when `μ` or `tol` is outside what
    /// the cached rules can deliver.
    pub fn transform(&self, mu: C64, tol: f64) -> Option<C64> {
        let kappa = self.delta - mu.im;
        if kappa < self.kappa_min || tol < TOL_FLOOR {
            return None;
        }
        let y_env = ((10.0 * self.scale / (kappa * tol)).max(1.0).ln() / kappa).min(self.y_max);
        let k_cut = self.tail.partition_point(|&s| s > 0.1 * tol);
        let y_cut = y_env.min(k_cut as f64 * COARSE_STEP).max(COARSE_STEP);
        let mut level = 0;
        while level < MAX_LEVEL && mu.re.abs() * self.y_max / Self::panels(level) as f64 > MAX_PHASE {
            level += 1;
        }
        let mut prev = self.sum(mu, level, y_cut);
        while level < MAX_LEVEL {
            level += 1;
            let next = self.sum(mu, level, y_cut);
            if (next - prev).norm() <= tol {
                return Some(next);
            }
            prev = next;
        }
        None
    }
}
