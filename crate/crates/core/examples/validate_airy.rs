//! Compares three evaluations of the KdV `u(x,t)`: the Airy closed form,
//! the contour engine, and a plain trapezoid sum of
//! `−(9/2π) ∫ e^{iλx+iλ³t} λ² dλ` over `λ = s + i`, which shares no code
//! with either.
//!
//! ```text
//! cargo run --release -p quarterplane --example validate_airy > docs/validate_airy.csv
//! ```

use std::f64::consts::PI;

use quarterplane::heat::HeatPoint;
use quarterplane::kdv::example2_u;
use quarterplane::oracle::airy_kdv_u;
use quarterplane::C64;

fn brute(x: f64, t: f64) -> f64 {
    let eps: f64 = 1.0;
    let s_max = ((40.0 + t * eps.powi(3)) / (3.0 * t * eps)).sqrt();
    let h = 2e-3;
    let n = (s_max / h).ceil() as i64;
    let i = C64::new(0.0, 1.0);
    let mut sum = C64::new(0.0, 0.0);
    for k in -n..=n {
        let l = C64::new(k as f64 * h, eps);
        sum += (i * l * x + i * l * l * l * t).exp() * l * l;
    }
    -9.0 / (2.0 * PI) * (sum * h).re
}

fn main() {
    println!("x,t,airy,contour,trapezoid,contour_minus_airy,trapezoid_minus_airy");
    for t in [0.1, 0.5, 1.0, 2.0] {
        for x in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let a = airy_kdv_u(x, t);
            let c = example2_u(HeatPoint::new(x, t).unwrap(), 1.0, 1e-12).unwrap();
            let b = brute(x, t);
            println!("{x},{t},{a:.17e},{c:.17e},{b:.17e},{:.3e},{:.3e}", c - a, b - a);
        }
    }
}
