//! Airy function `Ai` and its derivatives for real argument.
//!
//! Two independent evaluations are provided: the Maclaurin series (used
//! for `z ≤ 2`) and the Bessel representation
//! `Ai(z) = (1/π)√(z/3) K_{1/3}(ζ)`, `Ai'(z) = −z/(π√3) K_{2/3}(ζ)` with
//! `ζ = (2/3) z^{3/2}`, where `K_ν` comes from Steed's continued fraction
//! (used for `z > 2`). Higher derivatives follow from `Ai'' = z Ai`.

use std::f64::consts::PI;

/// `Ai(0) = 3^{−2/3} / Γ(2/3)`.
#[allow(clippy::excessive_precision)]
pub const AI0: f64 = 0.355_028_053_887_817_239_260;
/// `−Ai'(0) = 3^{−1/3} / Γ(1/3)`.
#[allow(clippy::excessive_precision)]
pub const AIP0_NEG: f64 = 0.258_819_403_792_806_798_405;

const SERIES_CUTOFF: f64 = 2.0;

/// `(Ai(z), Ai'(z))` from the Maclaurin series. Accurate for `|z| ≲ 3`.
pub fn airy_maclaurin(z: f64) -> (f64, f64) {
    let z3 = z * z * z;
    // f = Σ t_k, g = Σ s_k, f' = Σ u_k, g' = Σ v_k
    let (mut t, mut s, mut u, mut v) = (1.0, z, 0.5 * z * z, 1.0);
    let (mut f, mut g, mut fp, mut gp) = (t, s, u, v);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        t *= z3 / (k3 * (k3 - 1.0));
        s *= z3 / ((k3 + 1.0) * k3);
        v *= z3 / (k3 * (k3 - 2.0));
        if k >= 2 {
            u *= z3 / ((k3 - 1.0) * (k3 - 3.0));
        }
        f += t;
        g += s;
        gp += v;
        if k >= 2 {
            fp += u;
        }
        let biggest = t.abs().max(s.abs()).max(u.abs()).max(v.abs());
        if biggest < 1e-18 * (f.abs() + g.abs()) {
            break;
        }
    }
    (AI0 * f - AIP0_NEG * g, AI0 * fp - AIP0_NEG * gp)
}

/// `(e^{x} K_ν(x), e^{x} K_{ν+1}(x))` for `|ν| ≤ 1/2` and `x ≳ 1`.
fn bessel_k_scaled(nu: f64, x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - nu * nu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..100_000 {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k_nu = (PI / (2.0 * x)).sqrt() / s;
    let k_nu1 = k_nu * (nu + x + 0.5 - h) / x;
    (k_nu, k_nu1)
}

/// `(Ai(z), Ai'(z))` from the Bessel representation.
/// Accurate for `z ≳ 1.3` (NaN below `z ≈ 1.1`); underflows to zero beyond
/// `z ≈ 104`.
pub fn airy_bessel(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (k13, k43) = bessel_k_scaled(1.0 / 3.0, zeta);
    let k23 = k43 - 2.0 / (3.0 * zeta) * k13;
    let damp = (-zeta).exp();
    let ai = (z / 3.0).sqrt() / PI * k13 * damp;
    let aip = -z / (PI * 3f64.sqrt()) * k23 * damp;
    (ai, aip)
}

/// `(Ai(z), Ai'(z))`, choosing the evaluation route by argument.
pub fn airy_pair(z: f64) -> (f64, f64) {
    if z <= SERIES_CUTOFF {
        airy_maclaurin(z)
    } else {
        airy_bessel(z)
    }
}

pub fn airy_ai(z: f64) -> f64 {
    airy_pair(z).0
}

/// Polynomials `(P_k, Q_k)` with `Ai^{(k)}(z) = P_k(z) Ai(z) + Q_k(z) Ai'(z)`.
///
/// `P_{k+1} = P_k' + z Q_k`, `Q_{k+1} = P_k + Q_k'`, starting from `P_0 = 1`,
/// `Q_0 = 0`. Coefficients are integers, stored as `f64` (exact for the
/// orders used here).
pub fn airy_derivative_polys(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![1.0];
    let mut q: Vec<f64> = vec![0.0];
    for _ in 0..k {
        let mut zq = vec![0.0];
        zq.extend_from_slice(&q);
        let next_p = add(&derivative(&p), &zq);
        let next_q = add(&p, &derivative(&q));
        p = trim(next_p);
        q = trim(next_q);
    }
    (p, q)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    if c.len() <= 1 {
        return vec![0.0];
    }
    c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0.0) + b.get(i).copied().unwrap_or(0.0))
        .collect()
}

fn trim(mut c: Vec<f64>) -> Vec<f64> {
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    c
}

fn polyval(c: &[f64], z: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * z + v)
}

/// `Ai^{(k)}(z)`.
pub fn airy_ai_derivative(k: usize, z: f64) -> f64 {
    let (p, q) = airy_derivative_polys(k);
    let (ai, aip) = airy_pair(z);
    polyval(&p, z) * ai + polyval(&q, z) * aip
}
