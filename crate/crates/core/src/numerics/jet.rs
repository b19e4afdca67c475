//! Truncated Taylor jets.
//!
//! A [`Jet`] of order `K` stores the Taylor coefficients `c_k = f⁽ᵏ⁾(x₀)/k!`
//! for `k = 0..=K`. Jets are generic over their coefficient type, so a jet
//! of jets carries mixed partial derivatives in two variables.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest jet order accepted by the constructors that validate it.
pub const MAX_JET_ORDER: usize = 32;

/// The arithmetic needed to push a smooth expression through forward-mode
/// Taylor propagation. Implemented for `f64` and for `Jet<T>`.
pub trait Scalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// A constant with the same shape (jet orders) as `self`.
    fn constant_like(&self, value: f64) -> Self;
    /// The innermost value term.
    fn real(&self) -> f64;
    fn scale(&self, factor: f64) -> Self;
    fn shift(&self, offset: f64) -> Self;
    fn exp(&self) -> Self;
    fn recip(&self) -> Self;
}

impl Scalar for f64 {
    fn constant_like(&self, value: f64) -> Self {
        value
    }
    fn real(&self) -> f64 {
        *self
    }
    fn scale(&self, factor: f64) -> Self {
        self * factor
    }
    fn shift(&self, offset: f64) -> Self {
        self + offset
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet<T = f64> {
    coeffs: Vec<T>,
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order > MAX_JET_ORDER {
        Err(Error::JetOrder { requested: order, max: MAX_JET_ORDER })
    } else {
        Ok(())
    }
}

impl<T: Scalar> Jet<T> {
    /// The independent variable at `x`: coefficients `[x, 1, 0, …]`.
    pub fn variable(x: T, order: usize) -> Self {
        let mut coeffs = vec![x.constant_like(0.0); order + 1];
        if order >= 1 {
            coeffs[1] = x.constant_like(1.0);
        }
        coeffs[0] = x;
        Jet { coeffs }
    }

    pub fn constant(x: T, order: usize) -> Self {
        let mut coeffs = vec![x.constant_like(0.0); order + 1];
        coeffs[0] = x;
        Jet { coeffs }
    }

    pub fn from_taylor(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least its value term");
        Jet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn taylor(&self) -> &[T] {
        &self.coeffs
    }

    /// The `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> T {
        self.coeffs[k].scale(factorial(k))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(self.order(), other.order(), "jet orders must match");
        Jet { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() }
    }

    fn zero_like(&self) -> T {
        self.coeffs[0].constant_like(0.0)
    }
}

impl Jet<f64> {
    /// All derivatives `f⁽ᵏ⁾(x₀)`, `k = 0..=K`.
    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order()).map(|k| self.derivative(k)).collect()
    }

    /// Composition `f ∘ self`, where `tower[n] = f⁽ⁿ⁾(self.value())`.
    pub fn compose(&self, tower: &[f64]) -> Jet<f64> {
        let order = self.order();
        assert!(tower.len() > order, "derivative tower shorter than the jet order");
        let mut delta = self.clone();
        delta.coeffs[0] = 0.0;
        let mut acc = Jet::constant(tower[order] / factorial(order), order);
        for n in (0..order).rev() {
            acc = acc * delta.clone();
            acc.coeffs[0] += tower[n] / factorial(n);
        }
        acc
    }
}

impl<T: Scalar> Add for Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: Scalar> Sub for Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: Scalar> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Self {
        Jet { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Scalar> Mul for Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "jet orders must match");
        let order = self.order();
        let coeffs = (0..=order)
            .map(|k| (0..=k).fold(self.zero_like(), |acc, j| acc + self.coeffs[j].clone() * rhs.coeffs[k - j].clone()))
            .collect();
        Jet { coeffs }
    }
}

impl<T: Scalar> Scalar for Jet<T> {
    fn constant_like(&self, value: f64) -> Self {
        Jet::constant(self.coeffs[0].constant_like(value), self.order())
    }

    fn real(&self) -> f64 {
        self.coeffs[0].real()
    }

    fn scale(&self, factor: f64) -> Self {
        Jet { coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect() }
    }

    fn shift(&self, offset: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].shift(offset);
        out
    }

    // b = exp(a): b₀ = exp(a₀), k·b_k = Σ_{j=1..k} j·a_j·b_{k−j}
    fn exp(&self) -> Self {
        let order = self.order();
        let mut out = Vec::with_capacity(order + 1);
        out.push(self.coeffs[0].exp());
        for k in 1..=order {
            let sum = (1..=k)
                .fold(self.zero_like(), |acc, j| acc + (self.coeffs[j].clone() * out[k - j].clone()).scale(j as f64));
            out.push(sum.scale(1.0 / k as f64));
        }
        Jet { coeffs: out }
    }

    // r = 1/a: r₀ = 1/a₀, r_k = −r₀ Σ_{j=1..k} a_j r_{k−j}
    fn recip(&self) -> Self {
        let order = self.order();
        let r0 = self.coeffs[0].recip();
        let mut out = Vec::with_capacity(order + 1);
        out.push(r0.clone());
        for k in 1..=order {
            let sum = (1..=k).fold(self.zero_like(), |acc, j| acc + self.coeffs[j].clone() * out[k - j].clone());
            out.push(-(r0.clone() * sum));
        }
        Jet { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn central_difference(f: &dyn Fn(f64) -> f64, x: f64, k: usize, h: f64) -> f64 {
        // k-th central difference of step h
        let mut sum = 0.0;
        for i in 0..=k {
            let binom = factorial(k) / (factorial(i) * factorial(k - i));
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binom * f(x + (k as f64 / 2.0 - i as f64) * h);
        }
        sum / h.powi(k as i32)
    }

    #[test]
    fn exp_series_at_zero() {
        let x = Jet::variable(0.0, 5);
        let e = x.exp();
        for k in 0..=5 {
            assert_relative_eq!(e.taylor()[k], 1.0 / factorial(k), epsilon = 1e-15);
        }
    }

    #[test]
    fn recip_series() {
        // 1/(1 - x) = Σ xᵏ
        let x = Jet::variable(0.0, 6);
        let r = (-x).shift(1.0).recip();
        for c in r.taylor() {
            assert_relative_eq!(*c, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn compose_matches_direct_propagation() {
        let x = Jet::variable(0.3, 8);
        let inner = x.clone() * x.clone() + x.scale(0.5);
        let u0 = *inner.value();
        let tower: Vec<f64> = (0..=8).map(|n| if n % 2 == 0 { (-u0).exp() } else { -(-u0).exp() }).collect();
        let composed = inner.compose(&tower);
        let direct = (-inner).exp();
        for k in 0..=8 {
            assert_relative_eq!(composed.taylor()[k], direct.taylor()[k], max_relative = 1e-12);
        }
    }

    #[test]
    fn nested_jets_give_mixed_partials() {
        // g(p, q) = exp(p q) ; ∂p ∂q g = (1 + pq) exp(pq)
        let (p0, q0) = (0.4, -0.7);
        let p = Jet::variable(Jet::constant(p0, 3), 3);
        let q = Jet::constant(Jet::variable(q0, 3), 3);
        let g = (p * q).exp();
        let mixed = g.derivative(1).derivative(1);
        assert_relative_eq!(mixed, (1.0 + p0 * q0) * (p0 * q0).exp(), max_relative = 1e-14);
        let d2q = g.derivative(0).derivative(2);
        assert_relative_eq!(d2q, p0 * p0 * (p0 * q0).exp(), max_relative = 1e-14);
    }

    #[test]
    fn order_cap() {
        assert!(check_order(MAX_JET_ORDER).is_ok());
        assert!(matches!(check_order(MAX_JET_ORDER + 1), Err(Error::JetOrder { .. })));
    }

    // h(x) = exp(a x² + b x) / (2 + x²)
    fn sample(a: f64, b: f64, x: f64) -> f64 {
        (a * x * x + b * x).exp() / (2.0 + x * x)
    }

    fn sample_jet(a: f64, b: f64, x: f64, order: usize) -> Jet {
        let j = Jet::variable(x, order);
        (j.clone() * j.clone().scale(a) + j.scale(b)).exp() * (j.clone() * j).shift(2.0).recip()
    }

    proptest! {
        #[test]
        fn derivatives_match_central_differences(
            a in -0.5f64..0.5, b in -1.0f64..1.0, x in -1.0f64..1.0, k in 1usize..=5
        ) {
            let h = move |x: f64| sample(a, b, x);
            let step = if k <= 4 { 0.05 } else { 0.1 };
            // Richardson table on the even-power error expansion
            let mut table: Vec<f64> = (0..3).map(|i| central_difference(&h, x, k, step / f64::powi(2.0, i))).collect();
            for level in 1..3 {
                let factor = f64::powi(4.0, level);
                table = table.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
            }
            let exact = sample_jet(a, b, x, 6).derivative(k);
            let scale = exact.abs().max(1.0);
            prop_assert!((table[0] - exact).abs() / scale <= 1e-5, "k={} jet={} fd={}", k, exact, table[0]);
        }

        // Sixth real differences lose too many digits in f64, so the
        // full range k ≤ 6 is checked with differences on complex nodes
        // x + r·e^{2πij/n}.
        #[test]
        fn derivatives_match_contour_differences(
            a in -0.5f64..0.5, b in -1.0f64..1.0, x in -1.0f64..1.0, k in 1usize..=6
        ) {
            let h = |z: Complex64| (z * z * a + z * b).exp() / (z * z + 2.0);
            let (r, n) = (0.5, 64);
            let sum: Complex64 = (0..n)
                .map(|j| {
                    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
                    h(w * r + x) * w.powi(-(k as i32))
                })
                .sum();
            let fd = sum.re * factorial(k) / (n as f64 * r.powi(k as i32));
            let exact = sample_jet(a, b, x, 6).derivative(k);
            let scale = exact.abs().max(1.0);
            prop_assert!((fd - exact).abs() / scale <= 1e-9, "k={} jet={} fd={}", k, exact, fd);
        }
    }
}
