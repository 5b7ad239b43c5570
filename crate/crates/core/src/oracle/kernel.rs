//! Closed forms for the heat kernel's time derivatives.

use num_rational::Rational64;

/// Coefficients `c_j` with
/// `∂_t^k [t^{−3/2} e^{−x²/4t}] = e^{−x²/4t} Σ_j c_j x^{2j} t^{−3/2−k−j}`.
pub fn heat_kernel_coefficients(k: u32) -> Vec<Rational64> {
    let mut c = vec![Rational64::from_integer(1)];
    let quarter = Rational64::new(1, 4);
    for step in 0..k {
        let mut next = vec![Rational64::from_integer(0); c.len() + 1];
        for (j, &cj) in c.iter().enumerate() {
            let power = Rational64::new(3, 2) + Rational64::from_integer((step as usize + j) as i64);
            next[j] -= power * cj;
            next[j + 1] += cj * quarter;
        }
        c = next;
    }
    c
}

/// `∂_t^k [t^{−3/2} e^{−x²/4t}]`.
pub fn heat_kernel_time_derivative(k: u32, x: f64, t: f64) -> f64 {
    let coeffs = heat_kernel_coefficients(k);
    let x2 = x * x;
    let mut sum = 0.0;
    let mut x2j_over_tj = 1.0;
    for c in coeffs {
        sum += (*c.numer() as f64 / *c.denom() as f64) * x2j_over_tj;
        x2j_over_tj *= x2 / t;
    }
    (-x2 / (4.0 * t)).exp() * t.powf(-1.5 - k as f64) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_derivative_coefficients() {
        let c = heat_kernel_coefficients(1);
        assert_eq!(c, vec![Rational64::new(-3, 2), Rational64::new(1, 4)]);
    }

    #[test]
    fn matches_finite_differences() {
        let (x, t, h) = (1.3, 0.8, 1e-3);
        for k in 0..5 {
            let f = |s: f64| heat_kernel_time_derivative(k, x, s);
            let fd = (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
            let exact = heat_kernel_time_derivative(k + 1, x, t);
            assert!((fd - exact).abs() < 1e-6 * (1.0 + exact.abs()), "k={k}: {fd} vs {exact}");
        }
    }
}
