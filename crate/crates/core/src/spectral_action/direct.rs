//! The spectral action `Tr f(D_t²/Λ²)` summed over the exact spectrum.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numerics::{NeumaierSum, TestFunction};
use crate::rep_theory::rational_to_f64;
use crate::spectrum::{build_spectrum, rational_ceiling, table_rows, FamilyParam, Route, TableRow, LAMBDA_MAX_LIMIT};

/// The result of [`direct_action_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectAction {
    pub value: f64,
    /// Eigenvalue cutoff used for the truncation.
    pub cutoff: f64,
    /// Certified bound on the neglected part (0 for compactly supported `f`).
    pub tail_bound: f64,
    /// Distinct eigenvalues summed.
    pub lines: usize,
}

pub(crate) fn validate_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda must be positive and finite, got {lambda}")));
    }
    Ok(())
}

/// `Σ mult · f(E/Λ²)` over the spectrum, truncated so that the neglected
/// tail is at most `tail_tol`.
pub fn direct_action(param: &FamilyParam, lambda: f64, f: &TestFunction, tail_tol: f64) -> Result<f64> {
    direct_action_detailed(param, lambda, f, tail_tol).map(|d| d.value)
}

pub fn direct_action_detailed(
    param: &FamilyParam,
    lambda: f64,
    f: &TestFunction,
    tail_tol: f64,
) -> Result<DirectAction> {
    validate_lambda(lambda)?;
    if !(tail_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tail tolerance must be positive, got {tail_tol}")));
    }
    let lambda_sq = lambda * lambda;
    let (cutoff, tail_bound) = match f.support_end() {
        Some(b) => (b * lambda_sq, 0.0),
        None => exp_cutoff(param, lambda_sq, tail_tol)?,
    };
    if cutoff > LAMBDA_MAX_LIMIT as f64 {
        return Err(Error::NonConvergence {
            what: "spectral-action truncation",
            error: cutoff,
            requested: LAMBDA_MAX_LIMIT as f64,
        });
    }
    let spectrum = build_spectrum(param, rational_ceiling(cutoff)?, Route::Table)?;
    let mut sum = NeumaierSum::new();
    for line in spectrum.iter() {
        let weight = f.value(rational_to_f64(&line.eigenvalue) / lambda_sq);
        if weight != 0.0 {
            let multiplicity = line.multiplicity.to_f64().expect("u128 converts to f64");
            sum.add(multiplicity * weight);
        }
    }
    Ok(DirectAction { value: sum.value(), cutoff, tail_bound, lines: spectrum.len() })
}

/// Eigenvalue cutoff `X` for `f(u) = e^{−u}` with a certified tail bound.
///
/// For `E > X`, `e^{−E/Λ²} ≤ e^{−X/(2Λ²)} e^{−E/(2Λ²)}`, so the tail is at
/// most `e^{−X/(2Λ²)} B` with `B = Σ_all mult · e^{−E/(2Λ²)}`. The lattice
/// points with `p + q = n` carry at most `(n+1)(n+2)⁶/8` states, all with
/// `E ≥ ¾(n − 2A)₊² − ¾`, which bounds `B` by a convergent series.
fn exp_cutoff(param: &FamilyParam, lambda_sq: f64, tail_tol: f64) -> Result<(f64, f64)> {
    // the larger shift of t and 1 − t keeps the truncation mirror-symmetric
    let shift = |p: &FamilyParam| table_rows(p).iter().map(TableRow::max_shift).fold(0.0, f64::max);
    let a = shift(param).max(shift(&param.mirrored()));
    let mut b = NeumaierSum::new();
    let mut n = 0u64;
    loop {
        let nf = n as f64;
        let states = (nf + 1.0) * (nf + 2.0).powi(6) / 8.0;
        let gap = (nf - 2.0 * a).max(0.0);
        let e_min = 0.75 * gap * gap - 0.75;
        let term = states * (-e_min / (2.0 * lambda_sq)).exp();
        b.add(term);
        // terms decrease once past the peak of n⁷e^{−3n²/(8Λ²)}
        if gap * gap > 28.0 * lambda_sq / 3.0 && term <= 1e-20 * b.value() {
            break;
        }
        n += 1;
        if n > 100_000_000 {
            return Err(Error::NonConvergence {
                what: "spectral-action tail bound",
                error: b.value(),
                requested: tail_tol,
            });
        }
    }
    let b = b.value();
    // slack for the series cut above
    let b = b * (1.0 + 1e-12);
    // whole-number cutoff, rounded up, as used for the enumeration
    let cutoff = (2.0 * lambda_sq * (b / tail_tol).ln()).max(0.0).ceil();
    Ok((cutoff, (b * (-cutoff / (2.0 * lambda_sq)).exp()).min(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn third() -> FamilyParam {
        FamilyParam::from_ratio(1, 3)
    }

    #[test]
    fn unit_scale_value() {
        let v = direct_action(&third(), 1.0, &TestFunction::ExpDecay, 1e-12).unwrap();
        assert_relative_eq!(v, 0.534_076_737_183_219_4, max_relative = 1e-13);
        let leading = 8.0 * (-3.0f64).exp() + 144.0 * (-7.0f64).exp() + 512.0 * (-12.0f64).exp();
        assert!((v - 0.5340767).abs() <= 1e-6 && v > leading);
    }

    #[test]
    fn tail_bound_is_rigorous() {
        // compare against a much longer truncation
        for (n, d) in [(1, 3), (1, 2), (0, 1)] {
            let t = FamilyParam::from_ratio(n, d);
            for lambda in [1.0, 3.0] {
                let d = direct_action_detailed(&t, lambda, &TestFunction::ExpDecay, 1e-3).unwrap();
                let reference = direct_action(&t, lambda, &TestFunction::ExpDecay, 1e-14).unwrap();
                assert!(d.tail_bound <= 1e-3);
                assert!(reference - d.value >= -1e-9 * reference);
                assert!(reference - d.value <= 1e-3 + 1e-12 * reference, "t={t:?} {d:?} {reference}");
            }
        }
    }

    #[test]
    fn small_lambda_with_plateau_is_empty() {
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        // smallest eigenvalue at t = 1/3 is 3
        assert_eq!(direct_action(&third(), 1.2, &f, 1e-9).unwrap(), 0.0);
        assert_eq!(direct_action(&third(), 0.01, &f, 1e-9).unwrap(), 0.0);
        assert!(direct_action(&third(), 1.3, &f, 1e-9).unwrap() > 0.0);
    }

    #[test]
    fn plateau_sandwich() {
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        let lambda = 6.0;
        let spectrum =
            build_spectrum(&third(), rational_ceiling(2.0 * lambda * lambda).unwrap(), Route::Table).unwrap();
        let below = |cut: f64| -> f64 {
            spectrum.iter().filter(|l| rational_to_f64(&l.eigenvalue) <= cut).map(|l| l.multiplicity as f64).sum()
        };
        let v = direct_action(&third(), lambda, &f, 1e-9).unwrap();
        assert!(v >= below(lambda * lambda) && v <= below(2.0 * lambda * lambda));
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = TestFunction::ExpDecay;
        assert!(direct_action(&third(), 0.0, &f, 1e-9).is_err());
        assert!(direct_action(&third(), -1.0, &f, 1e-9).is_err());
        assert!(direct_action(&third(), f64::NAN, &f, 1e-9).is_err());
        assert!(direct_action(&third(), 1.0, &f, 0.0).is_err());
    }

    #[test]
    fn mirror_symmetry_is_exact() {
        for (n, d) in [(0, 1), (1, 4), (1, 5)] {
            let t = FamilyParam::from_ratio(n, d);
            for f in [TestFunction::ExpDecay, TestFunction::plateau(1.0, 2.0).unwrap()] {
                let a = direct_action(&t, 4.0, &f, 1e-6).unwrap();
                let b = direct_action(&t.mirrored(), 4.0, &f, 1e-6).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn monotone_in_lambda_and_positive() {
        for (n, d) in [(0, 1), (1, 2), (1, 3), (7, 5)] {
            let t = FamilyParam::from_ratio(n, d);
            for f in [TestFunction::ExpDecay, TestFunction::plateau(1.0, 2.0).unwrap()] {
                let mut last = 0.0;
                for lambda in [0.5, 1.0, 1.5, 2.0, 3.0, 4.5] {
                    let v = direct_action(&t, lambda, &f, 1e-9).unwrap();
                    assert!(v >= last);
                    last = v;
                }
            }
        }
    }

    #[test]
    fn third_matches_extended_lattice_sum() {
        // sixfold cover: overlaps carry zero multiplicity
        let lambda = 3.0f64;
        let mut sum = NeumaierSum::new();
        for p in -60i64..=60 {
            for q in -60i64..=60 {
                let s = p + q;
                let m = 2.0 * (p * p * q * q * s * s) as f64;
                sum.add(m * (-((p * p + q * q + p * q) as f64) / (lambda * lambda)).exp());
            }
        }
        let v = direct_action(&third(), lambda, &TestFunction::ExpDecay, 1e-9).unwrap();
        assert_relative_eq!(v, sum.value() / 6.0, max_relative = 1e-12);
    }
}
