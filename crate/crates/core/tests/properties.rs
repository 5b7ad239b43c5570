use proptest::prelude::*;
use quarterplane::expr::{Expr, Variable};
use quarterplane::heat::{heat_un, solve_heat, HeatPoint, UVariant};
use quarterplane::kdv::{kdv_un_with, KdvUVariant, DEFAULT_EPSILON};
use quarterplane::oracle::{
    airy_bessel, airy_maclaurin, erfc, erfc_continued_fraction, erfc_series, erfc_solution,
};
use quarterplane::transforms::{Forcing, HalfLineData, Profile};
use quarterplane::verify::{check_compatibility, logspace, residual, CandidateSolution, Grid, ProbeConfig};
use quarterplane::Equation;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn logspace_is_geometric(a in 1e-3f64..1.0, ratio in 1.5f64..1e3, n in 2usize..30) {
        let b = a * ratio;
        let v = logspace(a, b, n);
        prop_assert_eq!(v.len(), n);
        prop_assert!(close(v[0], a, 1e-14) && close(v[n - 1], b, 1e-14));
        let q = v[1] / v[0];
        for w in v.windows(2) {
            prop_assert!(w[1] > w[0]);
            prop_assert!(close(w[1] / w[0], q, 1e-12));
        }
    }

    #[test]
    fn erfc_routes_agree(x in 1.0f64..4.0) {
        prop_assert!(close(erfc_series(x), erfc_continued_fraction(x), 1e-12 / erfc(x).min(1.0)));
    }

    #[test]
    fn erfc_reflection(x in -5.0f64..5.0) {
        prop_assert!(close(erfc(x) + erfc(-x), 2.0, 1e-15));
    }

    #[test]
    fn airy_routes_agree(z in 1.3f64..3.0) {
        let (a, ap) = airy_maclaurin(z);
        let (b, bp) = airy_bessel(z);
        prop_assert!((a - b).abs() < 1e-13, "{} {}", a, b);
        prop_assert!((ap - bp).abs() < 1e-13, "{} {}", ap, bp);
    }

    #[test]
    fn erfc_solution_is_a_monotone_profile(x in 0.0f64..5.0, dx in 1e-3f64..1.0, t in 0.01f64..10.0) {
        let a = erfc_solution(x, t).unwrap();
        let b = erfc_solution(x + dx, t).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b <= a);
    }

    #[test]
    fn compatibility_residuals_scale_linearly(c in -10.0f64..10.0, r in 0.1f64..3.0, s in -3.0f64..3.0, k in -5.0f64..5.0) {
        let data = |scale: f64| HalfLineData::new(Profile::exp(scale * c, -r), Profile::exp(scale, s), Forcing::zero()).unwrap();
        for eq in [Equation::Heat, Equation::Kdv] {
            let one = check_compatibility(&data(1.0), eq, 0.0).unwrap();
            let many = check_compatibility(&data(k), eq, 0.0).unwrap();
            for (a, b) in one.conditions.iter().zip(&many.conditions) {
                prop_assert!(close(b.residual, k * a.residual, 1e-12), "{} vs {}", b.residual, k * a.residual);
            }
        }
    }

    #[test]
    fn polynomial_derivatives_are_exact(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, x in -2.0f64..2.0) {
        let e = Expr::parse(&format!("{a}*x^3 + {b}*x^2 + {c}*x - 1")).unwrap();
        let d = e.derivatives(Variable::X, x, 0.0, 4);
        prop_assert!(close(d[1], 3.0 * a * x * x + 2.0 * b * x + c, 1e-12));
        prop_assert!(close(d[2], 6.0 * a * x + 2.0 * b, 1e-12));
        prop_assert!(close(d[3], 6.0 * a, 1e-12));
        prop_assert_eq!(d[4], 0.0);
    }

    #[test]
    fn exp_sin_product_derivatives(w in 0.1f64..3.0, x in -1.0f64..1.0) {
        let e = Expr::parse(&format!("exp(-x)*sin({w}*x)")).unwrap();
        let d = e.derivatives(Variable::X, x, 0.0, 1);
        let want = (-x).exp() * (w * (w * x).cos() - (w * x).sin());
        prop_assert!(close(d[1], want, 1e-13));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn step_solution_matches_erfc(x in 0.01f64..6.0, t in 0.01f64..4.0) {
        let data = HalfLineData::new(Profile::zero(), Profile::constant(1.0), Forcing::zero()).unwrap();
        let v = solve_heat(&data, HeatPoint::new(x, t).unwrap(), 1e-11).unwrap();
        prop_assert!((v - erfc_solution(x, t).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn heat_witness_variants_agree(n in 1u32..5, x in 0.1f64..4.0, t in 0.2f64..3.0) {
        let p = HeatPoint::new(x, t).unwrap();
        let contour = heat_un(n, p, UVariant::Contour, 1e-11).unwrap();
        let closed = heat_un(n, p, UVariant::ClosedForm, 0.0).unwrap();
        prop_assert!((contour - closed).abs() < 1e-9 * (1.0 + closed.abs()), "{} vs {}", contour, closed);
    }

    #[test]
    fn witnesses_are_successive_time_derivatives(n in 2u32..6, x in 0.2f64..4.0, t in 0.5f64..3.0) {
        let h = 1e-4;
        let u = |k: u32, t: f64| heat_un(k, HeatPoint::new(x, t).unwrap(), UVariant::ClosedForm, 0.0).unwrap();
        let fd = (u(n - 1, t + h) - u(n - 1, t - h)) / (2.0 * h);
        prop_assert!((fd - u(n, t)).abs() < 1e-5 * (1.0 + u(n, t).abs()), "{} vs {}", fd, u(n, t));
        let k = |k: u32, t: f64| kdv_un_with(k, HeatPoint::new(x, t).unwrap(), KdvUVariant::Airy, DEFAULT_EPSILON, 0.0, 6).unwrap();
        let fd = (k(n - 1, t + h) - k(n - 1, t - h)) / (2.0 * h);
        prop_assert!((fd - k(n, t)).abs() < 1e-5 * (1.0 + k(n, t).abs()), "{} vs {}", fd, k(n, t));
    }

    #[test]
    fn residual_is_homogeneous(scale in -4.0f64..4.0, n in 1u32..3) {
        let cfg = ProbeConfig::default();
        let grid = Grid::log((0.5, 4.0), 3, (2.0, 4.0), 2);
        let base = move |x: f64, t: f64| kdv_un_with(n, HeatPoint::new(x, t)?, KdvUVariant::Airy, DEFAULT_EPSILON, 0.0, 6);
        let one = CandidateSolution::new("u", Equation::Kdv, HalfLineData::zero(), base);
        let many = CandidateSolution::new("su", Equation::Kdv, HalfLineData::zero(), move |x, t| Ok(scale * base(x, t)?));
        let (r1, _) = residual(&one, cfg.h, &grid, &cfg).unwrap();
        let (rs, _) = residual(&many, cfg.h, &grid, &cfg).unwrap();
        prop_assert!((rs - scale.abs() * r1).abs() <= 1e-9 * (1.0 + r1), "{} vs {}", rs, scale.abs() * r1);
    }
}
