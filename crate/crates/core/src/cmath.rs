//! Complex elementary functions that need care near zero.

use crate::C64;

/// `e^z − 1` without cancellation for small `|z|`.
pub fn expm1(z: C64) -> C64 {
    if z.norm() < 0.5 {
        z * phi1_series(z)
    } else {
        z.exp() - 1.0
    }
}

/// `φ₁(z) = (e^z − 1)/z`, with `φ₁(0) = 1`.
pub fn phi1(z: C64) -> C64 {
    if z.norm() < 0.5 {
        phi1_series(z)
    } else {
        (z.exp() - 1.0) / z
    }
}

fn phi1_series(z: C64) -> C64 {
    // Σ z^k/(k+1)!
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..30 {
        term *= z / (k as f64 + 1.0);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arguments() {
        let z = C64::new(1e-10, -2e-10);
        let e = expm1(z);
        assert!((e - z).norm() < 1e-19);
        assert_eq!(phi1(C64::new(0.0, 0.0)), C64::new(1.0, 0.0));
    }

    #[test]
    fn continuity_across_switch() {
        for &r in &[0.4999, 0.5001] {
            let z = C64::from_polar(r, 2.0);
            let direct = (z.exp() - 1.0) / z;
            assert!((phi1(z) - direct).norm() < 1e-15);
        }
    }
}
