//! Highest weights of SU(3), the invariant pairing on weights, Casimir
//! scalars, Weyl dimensions, and the decomposition of `V_ρ ⊗ V_(p,q)`.
//!
//! Weights are written in the fundamental-weight basis `λ₁ = (1,0)`,
//! `λ₂ = (0,1)`. The pairing is normalized so that `(λ₁,λ₁) = (λ₂,λ₂) = 1`,
//! `(λ₁,λ₂) = 1/2`, which gives `(ρ,ρ) = 3` for the Weyl vector `ρ = (1,1)`.
//! Everything here is exact.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = Ratio<i128>;

/// Parses `"n"` or `"n/d"` into a [`Rational`]. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("`{s}` is not an integer or a fraction n/d"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = i128::from_str(n.trim()).map_err(|_| bad())?;
            let d = i128::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::InvalidArgument(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
        None => i128::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Formats a rational as `num/den` (denominator always present).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// An integral weight `p·λ₁ + q·λ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub p: i64,
    pub q: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { p: 0, q: 0 };
    pub const RHO: Weight = Weight { p: 1, q: 1 };

    pub const fn new(p: i64, q: i64) -> Self {
        Weight { p, q }
    }

    pub fn is_dominant(&self) -> bool {
        self.p >= 0 && self.q >= 0
    }

    /// Swaps the two coordinates (highest weight of the dual representation).
    pub fn conjugate(&self) -> Self {
        Weight::new(self.q, self.p)
    }

    fn require_dominant(self) -> Result<Self> {
        if self.is_dominant() {
            Ok(self)
        } else {
            Err(Error::NonDominant(self))
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// `(a, b)` under the Gram matrix `[[1, 1/2], [1/2, 1]]`.
pub fn weight_pairing(a: Weight, b: Weight) -> Rational {
    let twice = 2 * (a.p * b.p + a.q * b.q) + a.p * b.q + a.q * b.p;
    Rational::new(twice as i128, 2)
}

/// `u² + v² + uv`, the pairing extended to rational coordinates.
pub fn quadratic_form(u: Rational, v: Rational) -> Rational {
    u * u + v * v + u * v
}

/// `dim V_(p,q) = (p+1)(q+1)(p+q+2)/2`.
pub fn weyl_dim(w: Weight) -> Result<u128> {
    let w = w.require_dominant()?;
    Ok(weyl_dim_unchecked(w.p as u128, w.q as u128))
}

pub(crate) fn weyl_dim_unchecked(p: u128, q: u128) -> u128 {
    (p + 1) * (q + 1) * (p + q + 2) / 2
}

/// Casimir eigenvalue on `V_(p,q)`: `p² + q² + 3p + 3q + pq`.
pub fn casimir_scalar(w: Weight) -> Result<Rational> {
    let Weight { p, q } = w.require_dominant()?;
    Ok(Rational::from_integer((p * p + q * q + 3 * p + 3 * q + p * q) as i128))
}

/// The same Casimir eigenvalue computed as `(w+ρ, w+ρ) − (ρ, ρ)`.
pub fn casimir_via_pairing(w: Weight) -> Result<Rational> {
    let w = w.require_dominant()?;
    let shifted = w + Weight::RHO;
    Ok(weight_pairing(shifted, shifted) - weight_pairing(Weight::RHO, Weight::RHO))
}

/// One row of the `V_ρ ⊗ V_(p,q)` decomposition table: the summand offset
/// and the minimum `(p, q)` for which the row contributes.
#[derive(Debug, Clone, Copy)]
struct CgRow {
    offset: Weight,
    p_min: i64,
    q_min: i64,
    exclude_origin: bool,
}

const CG_ROWS: [CgRow; 8] = [
    CgRow { offset: Weight::new(1, 1), p_min: 0, q_min: 0, exclude_origin: false },
    CgRow { offset: Weight::new(-1, 2), p_min: 1, q_min: 0, exclude_origin: false },
    CgRow { offset: Weight::new(0, 0), p_min: 0, q_min: 0, exclude_origin: true },
    CgRow { offset: Weight::new(-2, 1), p_min: 2, q_min: 0, exclude_origin: false },
    CgRow { offset: Weight::new(2, -1), p_min: 0, q_min: 1, exclude_origin: false },
    CgRow { offset: Weight::new(0, 0), p_min: 1, q_min: 1, exclude_origin: false },
    CgRow { offset: Weight::new(1, -2), p_min: 0, q_min: 2, exclude_origin: false },
    CgRow { offset: Weight::new(-1, -1), p_min: 1, q_min: 1, exclude_origin: false },
];

/// Highest weights of the irreducible summands of `V_ρ ⊗ V_w`, with
/// repetition. `w` itself appears twice when both labels are nonzero.
pub fn clebsch_gordan_rho(w: Weight) -> Result<Vec<Weight>> {
    let w = w.require_dominant()?;
    Ok(CG_ROWS
        .iter()
        .filter(|row| w.p >= row.p_min && w.q >= row.q_min && !(row.exclude_origin && w == Weight::ZERO))
        .map(|row| w + row.offset)
        .collect())
}

/// `true` iff `r` is nonnegative.
pub(crate) fn nonnegative(r: &Rational) -> bool {
    !r.is_negative() || r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn pairing_normalization() {
        assert_eq!(weight_pairing(Weight::RHO, Weight::RHO), r(3, 1));
        assert_eq!(weight_pairing(Weight::new(1, 0), Weight::new(1, 0)), r(1, 1));
        assert_eq!(weight_pairing(Weight::new(1, 0), Weight::new(0, 1)), r(1, 2));
        // (λ₁,λ₁) = (λ₂,λ₂) = 2(λ₁,λ₂)
        let l1 = Weight::new(1, 0);
        let l2 = Weight::new(0, 1);
        assert_eq!(weight_pairing(l1, l1), weight_pairing(l2, l2));
        assert_eq!(weight_pairing(l1, l1), weight_pairing(l1, l2) * 2);
    }

    #[test]
    fn quadratic_form_examples() {
        let z = Rational::zero();
        assert_eq!(quadratic_form(z, z), z);
        assert_eq!(quadratic_form(r(1, 1), r(1, 1)), r(3, 1));
        assert_eq!(quadratic_form(r(2, 1), r(1, 1)), r(7, 1));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(Weight::new(0, 0)).unwrap(), 1);
        assert_eq!(weyl_dim(Weight::new(1, 1)).unwrap(), 8);
        assert_eq!(weyl_dim(Weight::new(2, 1)).unwrap(), 15);
        assert_eq!(weyl_dim(Weight::new(1, 0)).unwrap(), 3);
        assert!(matches!(weyl_dim(Weight::new(-1, 0)), Err(Error::NonDominant(_))));
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_scalar(Weight::new(0, 0)).unwrap(), r(0, 1));
        assert_eq!(casimir_scalar(Weight::new(1, 1)).unwrap(), r(9, 1));
        assert_eq!(casimir_scalar(Weight::new(1, 0)).unwrap(), r(4, 1));
        assert_eq!(casimir_via_pairing(Weight::new(1, 0)).unwrap(), r(4, 1));
        assert!(casimir_scalar(Weight::new(0, -2)).is_err());
    }

    #[test]
    fn casimir_routes_agree() {
        for p in 0..=100 {
            for q in 0..=100 {
                let w = Weight::new(p, q);
                assert_eq!(casimir_scalar(w).unwrap(), casimir_via_pairing(w).unwrap(), "{w}");
            }
        }
    }

    fn sorted(mut v: Vec<Weight>) -> Vec<Weight> {
        v.sort();
        v
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan_rho(Weight::ZERO).unwrap(), vec![Weight::new(1, 1)]);
        assert_eq!(
            sorted(clebsch_gordan_rho(Weight::new(1, 1)).unwrap()),
            sorted(vec![
                Weight::new(2, 2),
                Weight::new(0, 3),
                Weight::new(1, 1),
                Weight::new(1, 1),
                Weight::new(3, 0),
                Weight::new(0, 0),
            ])
        );
        assert_eq!(
            sorted(clebsch_gordan_rho(Weight::new(2, 0)).unwrap()),
            sorted(vec![Weight::new(3, 1), Weight::new(1, 2), Weight::new(2, 0), Weight::new(0, 1),])
        );
        assert!(clebsch_gordan_rho(Weight::new(-1, 3)).is_err());
    }

    #[test]
    fn dimension_identity_small_weights() {
        for p in 0..=40 {
            for q in 0..=40 {
                let w = Weight::new(p, q);
                let total: u128 = clebsch_gordan_rho(w).unwrap().into_iter().map(|mu| weyl_dim(mu).unwrap()).sum();
                assert_eq!(total, 8 * weyl_dim(w).unwrap(), "{w}");
            }
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/3").unwrap(), r(1, 3));
        assert_eq!(parse_rational(" -7/5 ").unwrap(), r(-7, 5));
        assert_eq!(parse_rational("2/4").unwrap(), r(1, 2));
        assert_eq!(parse_rational("4").unwrap(), r(4, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&r(6, -4)), "-3/2");
    }

    proptest! {
        #[test]
        fn weyl_dim_conjugation_symmetric(p in 0i64..500, q in 0i64..500) {
            prop_assert_eq!(weyl_dim(Weight::new(p, q)).unwrap(), weyl_dim(Weight::new(q, p)).unwrap());
        }

        #[test]
        fn quadratic_form_positive_definite(
            a in -1000i128..1000, b in 1i128..50, c in -1000i128..1000, d in 1i128..50
        ) {
            let u = r(a, b);
            let v = r(c, d);
            let f = quadratic_form(u, v);
            prop_assert_eq!(f, quadratic_form(v, u));
            prop_assert!(nonnegative(&f));
            prop_assert_eq!(f.is_zero(), u.is_zero() && v.is_zero());
        }

        #[test]
        fn summands_are_dominant(p in 0i64..200, q in 0i64..200) {
            for mu in clebsch_gordan_rho(Weight::new(p, q)).unwrap() {
                prop_assert!(mu.is_dominant());
            }
        }
    }
}
