//! Truncated Taylor arithmetic for forward-mode differentiation.
//!
//! A [`Jet<N>`] stores the normalized Taylor coefficients `f^(k)(s0) / k!` for
//! `k < N` of a function of one variable `s`. Every closed form in this crate
//! is written generically over [`Scalar`], so evaluating it on a jet seeded
//! with [`Jet::variable`] yields exact derivatives up to order `N - 1`.
//! Partial derivatives along a direction of a two-parameter family come from
//! seeding each coordinate with [`Jet::along`].

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar types the closed forms can be evaluated on.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    #[inline]
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<const N: usize> {
    c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self { c }
    }

    /// The identity function `s ↦ s0 + s`, expanded at `s0 = v`.
    pub fn variable(v: f64) -> Self {
        Self::along(v, 1.0)
    }

    /// The affine function `s ↦ v + slope·s`.
    pub fn along(v: f64, slope: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        if N > 1 {
            c[1] = slope;
        }
        Self { c }
    }

    pub fn coeffs(&self) -> &[f64; N] {
        &self.c
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.c[k] * fact
    }

    // sin/cos (or sinh/cosh when `hyperbolic`) share one recurrence:
    // s_k = 1/k Σ j u_j c_{k-j},  c_k = ∓1/k Σ j u_j s_{k-j}.
    fn sin_cos(self, hyperbolic: bool) -> (Self, Self) {
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        if hyperbolic {
            s[0] = self.c[0].sinh();
            c[0] = self.c[0].cosh();
        } else {
            s[0] = self.c[0].sin();
            c[0] = self.c[0].cos();
        }
        let sign = if hyperbolic { 1.0 } else { -1.0 };
        for k in 1..N {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let ju = j as f64 * self.c[j];
                ds += ju * c[k - j];
                dc += ju * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = sign * dc / k as f64;
        }
        (Self { c: s }, Self { c })
    }
}

impl<const N: usize> Scalar for Jet<N> {
    fn cst(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(&self) -> f64 {
        self.c[0]
    }
    fn sin(self) -> Self {
        self.sin_cos(false).0
    }
    fn cos(self) -> Self {
        self.sin_cos(false).1
    }
    fn sinh(self) -> Self {
        self.sin_cos(true).0
    }
    fn cosh(self) -> Self {
        self.sin_cos(true).1
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.c.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [0.0; N];
        for k in 0..N {
            c[k] = (0..=k).map(|i| self.c[i] * rhs.c[k - i]).sum();
        }
        Self { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let mut c = [0.0; N];
        for k in 0..N {
            let acc: f64 = (1..=k).map(|i| rhs.c[i] * c[k - i]).sum();
            c[k] = (self.c[k] - acc) / rhs.c[0];
        }
        Self { c }
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.c[0] += rhs;
        self
    }
}

impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: f64) -> Self {
        self.c[0] -= rhs;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(mut self, rhs: f64) -> Self {
        for a in self.c.iter_mut() {
            *a *= rhs;
        }
        self
    }
}

impl<const N: usize> Div<f64> for Jet<N> {
    type Output = Self;
    fn div(mut self, rhs: f64) -> Self {
        for a in self.c.iter_mut() {
            *a /= rhs;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type J4 = Jet<4>;

    #[test]
    fn polynomial_derivatives_are_exact() {
        // p(s) = s^3 - 2 s at s = 1.5
        let s = J4::variable(1.5);
        let p = s * s * s - s * 2.0;
        assert_relative_eq!(p.derivative(0), 1.5f64.powi(3) - 3.0);
        assert_relative_eq!(p.derivative(1), 3.0 * 1.5 * 1.5 - 2.0);
        assert_relative_eq!(p.derivative(2), 6.0 * 1.5);
        assert_relative_eq!(p.derivative(3), 6.0);
    }

    #[test]
    fn trig_and_hyperbolic_derivatives() {
        let x = 0.7;
        let s = J4::variable(x);
        let sin = s.sin();
        let cosh = s.cosh();
        for (k, expect) in [x.sin(), x.cos(), -x.sin(), -x.cos()].iter().enumerate() {
            assert_relative_eq!(sin.derivative(k), *expect, epsilon = 1e-14);
        }
        for (k, expect) in [x.cosh(), x.sinh(), x.cosh(), x.sinh()].iter().enumerate() {
            assert_relative_eq!(cosh.derivative(k), *expect, epsilon = 1e-14);
        }
    }

    #[test]
    fn chain_rule_through_scaled_argument() {
        // d^3/ds^3 sin(2s) = -8 cos(2s)
        let s = J4::variable(0.3);
        let y = (s * 2.0).sin();
        assert_relative_eq!(y.derivative(3), -8.0 * (0.6f64).cos(), epsilon = 1e-13);
    }

    #[test]
    fn quotient_matches_closed_form() {
        // 1/(1+s^2): derivative -2s/(1+s^2)^2, second (6s^2-2)/(1+s^2)^3
        let x = 0.4;
        let s = J4::variable(x);
        let q = J4::constant(1.0) / (s * s + 1.0);
        let d = 1.0 + x * x;
        assert_relative_eq!(q.derivative(1), -2.0 * x / (d * d), epsilon = 1e-14);
        assert_relative_eq!(q.derivative(2), (6.0 * x * x - 2.0) / d.powi(3), epsilon = 1e-14);
    }

    #[test]
    fn directional_seed_scales_derivatives() {
        let s = Jet::<3>::along(1.0, -2.0);
        let y = s * s;
        assert_relative_eq!(y.derivative(1), -4.0);
        assert_relative_eq!(y.derivative(2), 8.0);
    }
}
