use std::fmt;
use std::str::FromStr;

use super::jet::{Jet, Scalar};
use crate::error::{Error, Result};

/// Beyond this exponent the logistic form is within `e^{−700}` of 0 or 1.
const SATURATION: f64 = 700.0;

/// Cutoff function `f` in `Tr f(D²/Λ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// `f(u) = e^{−u}`.
    ExpDecay,
    /// `f = 1` on `(−∞, a]`, `f = 0` on `[b, ∞)`, with the smooth step
    /// `φ(s)/(φ(s) + φ(1−s))`, `φ(s) = e^{−1/s}`, `s = (b−u)/(b−a)` between.
    Plateau { a: f64, b: f64 },
}

impl TestFunction {
    pub fn plateau(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("plateau needs 0 < a < b, got a={a}, b={b}")));
        }
        Ok(TestFunction::Plateau { a, b })
    }

    /// Evaluates `f` on any [`Scalar`], so jets come out as derivative
    /// towers.
    pub fn apply<T: Scalar>(&self, u: &T) -> T {
        match *self {
            TestFunction::ExpDecay => (-u.clone()).exp(),
            TestFunction::Plateau { a, b } => {
                let v = u.real();
                if v <= a {
                    return u.constant_like(1.0);
                }
                if v >= b {
                    return u.constant_like(0.0);
                }
                let width = b - a;
                let s = u.scale(-1.0 / width).shift(b / width);
                // φ(s)/(φ(s) + φ(1−s)) = 1/(1 + e^w), w = 1/s − 1/(1−s)
                let w = s.recip() - (-s).shift(1.0).recip();
                if w.real() > SATURATION {
                    u.constant_like(0.0)
                } else if w.real() < -SATURATION {
                    u.constant_like(1.0)
                } else if w.real() > 0.0 {
                    // e^{−w}/(1 + e^{−w}) keeps every intermediate below 1
                    let decay = (-w).exp();
                    decay.clone() * decay.shift(1.0).recip()
                } else {
                    w.exp().shift(1.0).recip()
                }
            }
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        self.apply(&u)
    }

    /// `[f(u), f'(u), …, f⁽ᴷ⁾(u)]`.
    pub fn tower(&self, u: f64, order: usize) -> Vec<f64> {
        self.apply(&Jet::variable(u, order)).derivatives()
    }

    /// Right end of the support, if compact.
    pub fn support_end(&self) -> Option<f64> {
        match *self {
            TestFunction::ExpDecay => None,
            TestFunction::Plateau { b, .. } => Some(b),
        }
    }

    pub(crate) fn cache_key(&self) -> (u8, u64, u64) {
        match *self {
            TestFunction::ExpDecay => (0, 0, 0),
            TestFunction::Plateau { a, b } => (1, a.to_bits(), b.to_bits()),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::ExpDecay => write!(f, "exp"),
            TestFunction::Plateau { a, b } => write!(f, "plateau:{a},{b}"),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// `exp` or `plateau:a,b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "exp" {
            return Ok(TestFunction::ExpDecay);
        }
        let bad = || Error::InvalidArgument(format!("unknown test function `{s}` (expected exp or plateau:a,b)"));
        let params = s.strip_prefix("plateau:").ok_or_else(bad)?;
        let (a, b) = params.split_once(',').ok_or_else(bad)?;
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        TestFunction::plateau(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_tower() {
        let tower = TestFunction::ExpDecay.tower(0.7, 10);
        for (n, d) in tower.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_relative_eq!(*d, sign * (-0.7f64).exp(), max_relative = 1e-13);
        }
    }

    #[test]
    fn plateau_shape() {
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        assert_eq!(f.value(0.0), 1.0);
        assert_eq!(f.value(1.0), 1.0);
        assert_eq!(f.value(2.0), 0.0);
        assert_eq!(f.value(5.0), 0.0);
        assert_relative_eq!(f.value(1.5), 0.5, max_relative = 1e-15);
        let mut prev = 1.0;
        for i in 1..1000 {
            let v = f.value(1.0 + i as f64 / 1000.0);
            assert!(v <= prev && (0.0..=1.0).contains(&v), "i={i} v={v} prev={prev}");
            prev = v;
        }
    }

    #[test]
    fn plateau_is_flat_at_origin_and_support_end() {
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        for u in [0.0, 2.0, 3.5] {
            let tower = f.tower(u, 24);
            for d in &tower[1..] {
                assert!(d.abs() <= 1e-300, "u={u} d={d}");
            }
        }
        // approaching the ends, derivatives die off
        let near = f.tower(2.0 - 1e-3, 6);
        for d in &near {
            assert!(d.abs() < 1e-100);
        }
    }

    #[test]
    fn plateau_derivatives_match_finite_differences() {
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        for u in [1.2, 1.5, 1.8] {
            let tower = f.tower(u, 2);
            let h = 1e-5;
            let fd1 = (f.value(u + h) - f.value(u - h)) / (2.0 * h);
            let fd2 = (f.value(u + h) - 2.0 * f.value(u) + f.value(u - h)) / (h * h);
            assert_relative_eq!(tower[1], fd1, max_relative = 1e-7);
            assert_relative_eq!(tower[2], fd2, max_relative = 1e-3, epsilon = 1e-4);
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("exp".parse::<TestFunction>().unwrap(), TestFunction::ExpDecay);
        let p: TestFunction = "plateau:1,2".parse().unwrap();
        assert_eq!(p, TestFunction::Plateau { a: 1.0, b: 2.0 });
        assert_eq!(p.to_string(), "plateau:1,2");
        assert!("plateau:2,1".parse::<TestFunction>().is_err());
        assert!("gauss".parse::<TestFunction>().is_err());
    }
}
