//! Truncated Taylor series for forward-mode differentiation to any order.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// `Σ_k c_k h^k`, the expansion of a function about a point, truncated at a
/// fixed order. `c_k = f^{(k)}(s₀)/k!`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = value;
        Jet { c }
    }

    /// The independent variable at `s0`.
    pub fn variable(s0: f64, order: usize) -> Self {
        let mut j = Jet::constant(s0, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    /// `[f, f', f'', ...]`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut factorial = 1.0;
        self.c
            .iter()
            .enumerate()
            .map(|(k, &ck)| {
                if k > 0 {
                    factorial *= k as f64;
                }
                ck * factorial
            })
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.c[1..].iter().all(|&v| v == 0.0)
    }

    fn map_like(&self, c: Vec<f64>) -> Jet {
        debug_assert_eq!(c.len(), self.c.len());
        Jet { c }
    }

    pub fn exp(&self) -> Jet {
        // e' = a' e  ⇒  k e_k = Σ_{j=1}^k j a_j e_{k−j}
        let n = self.c.len();
        let mut e = vec![0.0; n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        self.map_like(e)
    }

    /// `(sin a, cos a)`.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let n = self.c.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..n {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * self.c[j];
                ss += w * c[k - j];
                cc -= w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (self.map_like(s), self.map_like(c))
    }

    pub fn ln(&self) -> Jet {
        // a l' = a'  ⇒  k a_0 l_k = k a_k − Σ_{j=1}^{k−1} j l_j a_{k−j}
        let n = self.c.len();
        let mut l = vec![0.0; n];
        l[0] = self.c[0].ln();
        for k in 1..n {
            let mut s = k as f64 * self.c[k];
            for j in 1..k {
                s -= j as f64 * l[j] * self.c[k - j];
            }
            l[k] = s / (k as f64 * self.c[0]);
        }
        self.map_like(l)
    }

    pub fn powi(&self, p: i32) -> Jet {
        if p < 0 {
            return Jet::constant(1.0, self.order()) / self.powi(-p);
        }
        let mut result = Jet::constant(1.0, self.order());
        let mut base = self.clone();
        let mut e = p as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// `a^b` for a non-integer constant or variable exponent, via `exp(b ln a)`.
    pub fn pow(&self, b: &Jet) -> Jet {
        if b.is_constant() && b.value().fract() == 0.0 && b.value().abs() <= 64.0 {
            return self.powi(b.value() as i32);
        }
        (b * &self.ln()).exp()
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        self.map_like(self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        self.map_like(self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect())
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.c.len();
        let mut r = vec![0.0; n];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in o.c[..n - i].iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        self.map_like(r)
    }
}

impl<'a> Div<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn div(self, o: &Jet) -> Jet {
        let n = self.c.len();
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= o.c[j] * q[k - j];
            }
            q[k] = s / o.c[0];
        }
        self.map_like(q)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        &self / &o
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map_like(self.c.iter().map(|v| -v).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol * (1.0 + y.abs()), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn exp_of_linear() {
        let x = Jet::variable(0.0, 4);
        let e = (&(-&x)).exp();
        close(&e.derivatives(), &[1.0, -1.0, 1.0, -1.0, 1.0], 1e-15);
    }

    #[test]
    fn sin_cos_derivatives() {
        let x = Jet::variable(0.3, 5);
        let (s, c) = x.sin_cos();
        let v = 0.3f64;
        close(&s.derivatives(), &[v.sin(), v.cos(), -v.sin(), -v.cos(), v.sin(), v.cos()], 1e-14);
        close(&c.derivatives(), &[v.cos(), -v.sin(), -v.cos(), v.sin(), v.cos(), -v.sin()], 1e-14);
    }

    #[test]
    fn quotient_and_log() {
        let x = Jet::variable(2.0, 3);
        let one = Jet::constant(1.0, 3);
        let r = &one / &x;
        close(&r.derivatives(), &[0.5, -0.25, 0.25, -0.375], 1e-15);
        let l = x.ln();
        close(&l.derivatives(), &[2f64.ln(), 0.5, -0.25, 0.25], 1e-15);
    }

    #[test]
    fn integer_and_real_powers() {
        let x = Jet::variable(1.5, 3);
        let cube = x.powi(3);
        close(&cube.derivatives(), &[3.375, 6.75, 9.0, 6.0], 1e-14);
        let half = x.pow(&Jet::constant(0.5, 3));
        let s = 1.5f64.sqrt();
        close(&half.derivatives(), &[s, 0.5 / s, -0.25 / (1.5 * s), 0.375 / (1.5 * 1.5 * s)], 1e-14);
    }
}
