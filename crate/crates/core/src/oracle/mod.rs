//! Independent reference values for the worked examples.
//!
//! Nothing here touches [`crate::contour`]: every function is a closed form
//! built from special functions that are themselves computed by two
//! routes and cross-checked in the tests.

mod airy;
mod erfc;
mod kernel;

use std::f64::consts::PI;

use crate::error::{invalid, Result};

pub use airy::{airy_ai, airy_ai_derivative, airy_bessel, airy_derivative_polys, airy_maclaurin, airy_pair};
pub use erfc::{erfc, erfc_continued_fraction, erfc_series};
pub use kernel::{heat_kernel_coefficients, heat_kernel_time_derivative};

/// `erfc(x / 2√t)`: the heat solution with zero initial data and unit
/// boundary value. Requires `x ≥ 0` and `t > 0`.
pub fn erfc_solution(x: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite() && x >= 0.0) {
        return Err(invalid(format!("erfc solution needs x >= 0 and t > 0, got ({x}, {t})")));
    }
    Ok(erfc(x / (2.0 * t.sqrt())))
}

/// `∂_t^{n−1}` of `x/(2√π) t^{−3/2} e^{−x²/4t}`, the heat solution with zero
/// initial and boundary data that stays bounded in the open quadrant.
///
/// This is `∂_t^n erfc(x/2√t)`.
pub fn gauss_kernel_derivative(n: u32, x: f64, t: f64) -> f64 {
    assert!(n >= 1, "order starts at 1");
    x / (2.0 * PI.sqrt()) * heat_kernel_time_derivative(n - 1, x, t)
}

/// `3ξ Ai(ξ)/t` with `ξ = x/(3t)^{1/3}`.
pub fn airy_kdv_u(x: f64, t: f64) -> f64 {
    let xi = x / (3.0 * t).cbrt();
    3.0 * xi * airy_ai(xi) / t
}

/// `9 (−1)^{n−1} Ai^{(3n−1)}(ξ) / (3t)^n`, the `n`-th member of the KdV
/// family; `n = 1` agrees with [`airy_kdv_u`].
pub fn airy_kdv_un(n: u32, x: f64, t: f64) -> f64 {
    assert!(n >= 1, "order starts at 1");
    let c = (3.0 * t).cbrt();
    let xi = x / c;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    9.0 * sign * airy_ai_derivative(3 * n as usize - 1, xi) / (3.0 * t).powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erfc_solution_solves_heat_equation() {
        let h = 1e-4;
        for &(x, t) in &[(0.5, 0.3), (1.0, 1.0), (3.0, 2.0)] {
            let ut = (erfc_solution(x, t + h).unwrap() - erfc_solution(x, t - h).unwrap()) / (2.0 * h);
            let uxx = (erfc_solution(x + h, t).unwrap() - 2.0 * erfc_solution(x, t).unwrap() + erfc_solution(x - h, t).unwrap()) / (h * h);
            assert!((ut - uxx).abs() < 1e-6, "({x},{t}): {ut} vs {uxx}");
        }
        assert!((erfc_solution(1e-12, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(erfc_solution(0.0, 2.0).unwrap(), 1.0);
        assert!(erfc_solution(1.0, 0.0).is_err());
        assert!(erfc_solution(1.0, -1.0).is_err());
    }

    #[test]
    fn gauss_kernel_is_time_derivative_of_erfc() {
        let h = 1e-5;
        for &(x, t) in &[(0.5, 0.3), (1.0, 1.0), (3.0, 2.0)] {
            let dt = (erfc_solution(x, t + h).unwrap() - erfc_solution(x, t - h).unwrap()) / (2.0 * h);
            assert!((gauss_kernel_derivative(1, x, t) - dt).abs() < 1e-8);
        }
    }

    #[test]
    fn gauss_kernel_second_member_reference() {
        let v = gauss_kernel_derivative(2, 1.0, 1.0);
        let expected = -1.25 * (-0.25f64).exp() / (2.0 * PI.sqrt());
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn gauss_kernel_members_solve_heat_equation() {
        let h = 1e-3;
        for n in 1..=6 {
            let u = |x: f64, t: f64| gauss_kernel_derivative(n, x, t);
            let (x, t) = (2.0, 3.0);
            let ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            let uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            assert!((ut - uxx).abs() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn airy_members_solve_kdv() {
        let h = 1e-3;
        for n in 1..=4 {
            let u = |x: f64, t: f64| airy_kdv_un(n, x, t);
            let (x, t) = (1.5, 1.0);
            let ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            let uxxx = (u(x + 2.0 * h, t) - 2.0 * u(x + h, t) + 2.0 * u(x - h, t) - u(x - 2.0 * h, t)) / (2.0 * h * h * h);
            assert!((ut + uxxx).abs() < 1e-4 * (1.0 + ut.abs()), "n={n}: {ut} {uxxx}");
        }
    }

    #[test]
    fn airy_first_member_matches_direct_form() {
        for &(x, t) in &[(0.3, 0.5), (2.0, 1.0), (5.0, 3.0)] {
            assert!((airy_kdv_un(1, x, t) - airy_kdv_u(x, t)).abs() < 1e-13);
        }
    }

    #[test]
    fn airy_members_vanish_at_boundary() {
        // Ai^{(3n−1)}(0) = 0: P has no constant term, Q's vanishes too
        for n in 1..=4 {
            assert!(airy_kdv_un(n, 0.0, 1.0).abs() < 1e-14, "n={n}");
        }
    }
}
