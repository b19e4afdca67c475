//! Spectrum of the Dirac Laplacian `D_t²` on SU(3).
//!
//! Two independent generators are provided. The *table* route evaluates the
//! closed-form eight-row table of eigenvalues `λ(p+α, q+β) + κ` with
//! multiplicities `m(a, b)`. The *principles* route decomposes
//! `V_ρ ⊗ V_(p,q)` and applies the Casimir formula
//! `(1−3t)(Cas(p,q) + Cas(ρ) − Cas(μ)) + Cas(p,q) + 9t²(ρ,ρ)` to each summand
//! `μ`, with multiplicity `dim V_(p,q) · dim V_μ`. Both are exact.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rep_theory::{
    casimir_scalar, clebsch_gordan_rho, nonnegative, quadratic_form, rational_to_f64, weyl_dim, weyl_dim_unchecked,
    Rational, Weight,
};

/// Cutoffs above this are rejected before enumeration; multiplicities would
/// approach the range of `u128` and the enumeration would not finish anyway.
pub const LAMBDA_MAX_LIMIT: i128 = 1_000_000_000_000;

/// The deformation parameter `t` of the connection family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyParam(Rational);

impl FamilyParam {
    pub fn new(t: Rational) -> Self {
        FamilyParam(t)
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        FamilyParam(Rational::new(num, den))
    }

    pub fn t(&self) -> Rational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }

    /// `(3t − 1)(3t − 2)`, the factor that controls every correction term.
    pub fn deformation(&self) -> Rational {
        let three_t = self.0 * 3;
        (three_t - 1) * (three_t - 2)
    }

    /// The parameter `1 − t`.
    pub fn mirrored(&self) -> Self {
        FamilyParam(Rational::one() - self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpectralLine {
    pub eigenvalue: Rational,
    pub multiplicity: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    /// Strictly increasing eigenvalues, all `≤ cutoff`.
    pub lines: Vec<SpectralLine>,
    pub cutoff: Rational,
    pub param: FamilyParam,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SpectralLine> {
        self.lines.iter()
    }

    pub fn total_multiplicity(&self) -> u128 {
        self.lines.iter().map(|l| l.multiplicity).sum()
    }
}

/// Which generator [`build_spectrum`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Table,
    Principles,
}

/// Parameter range of a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    pub p_min: i64,
    pub q_min: i64,
    pub exclude_origin: bool,
}

impl Gate {
    const ALL: Gate = Gate { p_min: 0, q_min: 0, exclude_origin: false };

    pub fn admits(&self, p: i64, q: i64) -> bool {
        p >= self.p_min && q >= self.q_min && !(self.exclude_origin && p == 0 && q == 0)
    }
}

/// One generator row: eigenvalue `λ(p+α, q+β) + κ` with multiplicity
/// `m(a, b)` on the parameter range `gate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    /// 1-based row number.
    pub index: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub kappa: Rational,
    pub a: i64,
    pub b: i64,
    pub gate: Gate,
}

impl TableRow {
    pub fn eigenvalue(&self, p: i64, q: i64) -> Rational {
        quadratic_form(Rational::from(p as i128) + self.alpha, Rational::from(q as i128) + self.beta) + self.kappa
    }

    pub fn multiplicity(&self, p: i64, q: i64) -> u128 {
        multiplicity_m(p, q, self.a, self.b)
    }

    /// Largest `|α|`, `|β|`.
    pub(crate) fn max_shift(&self) -> f64 {
        rational_to_f64(&self.alpha).abs().max(rational_to_f64(&self.beta).abs())
    }
}

/// The eight rows of the closed-form table for parameter `t`.
///
/// Rows 1–7 follow the published table verbatim. Row 8 is the
/// `V_(p−1,q−1)` summand written in the same indexing: eigenvalue
/// `λ(p+2−3t, q+2−3t)` with multiplicity `m(−1,−1)` for `p, q ≥ 1`, which is
/// what the Casimir formula yields for that summand.
pub fn table_rows(param: &FamilyParam) -> [TableRow; 8] {
    let t = param.t();
    let one = Rational::one();
    let zero = Rational::zero();
    let three_t = t * 3;
    let six_t = t * 6;
    let kappa = param.deformation() * 3;
    let row = |index, alpha, beta, kappa, a, b, gate| TableRow { index, alpha, beta, kappa, a, b, gate };
    let two = Rational::from(2);
    let three = Rational::from(3);
    [
        row(1, three_t, three_t, zero, 1, 1, Gate::ALL),
        row(2, two - three_t, six_t - one, zero, -1, 2, Gate::ALL),
        row(3, one, one, kappa, 0, 0, Gate { p_min: 0, q_min: 0, exclude_origin: true }),
        row(4, three - six_t, three_t, zero, -2, 1, Gate { p_min: 1, q_min: 0, exclude_origin: false }),
        row(5, six_t - one, two - three_t, zero, 2, -1, Gate::ALL),
        row(6, one, one, kappa, 0, 0, Gate { p_min: 1, q_min: 1, exclude_origin: false }),
        row(7, three_t, three - six_t, zero, 1, -2, Gate { p_min: 0, q_min: 1, exclude_origin: false }),
        row(8, two - three_t, two - three_t, zero, -1, -1, Gate { p_min: 1, q_min: 1, exclude_origin: false }),
    ]
}

/// `(p+1)(q+1)(p+q+2)(p+1+a)(q+1+b)(p+q+2+a+b)/4`.
///
/// Panics if the product is negative, which cannot happen on the table's
/// parameter ranges.
pub fn multiplicity_m(p: i64, q: i64, a: i64, b: i64) -> u128 {
    let (p, q, a, b) = (p as i128, q as i128, a as i128, b as i128);
    let product = (p + 1) * (q + 1) * (p + q + 2) * (p + 1 + a) * (q + 1 + b) * (p + q + 2 + a + b);
    assert!(product >= 0, "negative multiplicity at (p,q,a,b) = ({p},{q},{a},{b})");
    debug_assert_eq!(product % 4, 0);
    (product / 4) as u128
}

/// Table-route lines for one `(p, q)`; rows outside their gate and rows of
/// zero multiplicity are omitted.
pub fn lines_from_table(param: &FamilyParam, p: i64, q: i64) -> Vec<SpectralLine> {
    lines_from_rows(&table_rows(param), p, q)
}

fn lines_from_rows(rows: &[TableRow; 8], p: i64, q: i64) -> Vec<SpectralLine> {
    rows.iter()
        .filter(|row| row.gate.admits(p, q))
        .filter_map(|row| {
            let multiplicity = row.multiplicity(p, q);
            (multiplicity > 0).then(|| SpectralLine { eigenvalue: row.eigenvalue(p, q), multiplicity })
        })
        .collect()
}

/// Principles-route lines for one `(p, q)`, one per Clebsch–Gordan summand.
pub fn lines_from_principles(param: &FamilyParam, p: i64, q: i64) -> Vec<SpectralLine> {
    let w = Weight::new(p, q);
    let t = param.t();
    let cas_w = casimir_scalar(w).expect("dominant weight");
    let cas_rho = casimir_scalar(Weight::RHO).expect("dominant weight");
    let dim_w = weyl_dim(w).expect("dominant weight");
    let rho_norm = crate::rep_theory::weight_pairing(Weight::RHO, Weight::RHO);
    let constant = t * t * 9 * rho_norm;
    let coupling = Rational::one() - t * 3;
    clebsch_gordan_rho(w)
        .expect("dominant weight")
        .into_iter()
        .map(|mu| {
            let cas_mu = casimir_scalar(mu).expect("summands are dominant");
            SpectralLine {
                eigenvalue: coupling * (cas_w + cas_rho - cas_mu) + cas_w + constant,
                multiplicity: dim_w * weyl_dim(mu).expect("summands are dominant"),
            }
        })
        .collect()
}

/// Integer sort key `E · den(t)²` (every eigenvalue has a denominator
/// dividing `den(t)²`).
fn eigen_key(e: &Rational, den_sq: i128) -> i128 {
    let scaled = e * den_sq;
    debug_assert!(scaled.is_integer());
    scaled.to_integer()
}

/// Upper bounds for enumerating `(p, q)`; every line with eigenvalue
/// `≤ lambda_max` comes from a point inside them.
///
/// Each eigenvalue is `λ(u, v) + κ` with `u = p + α`, `v = q + β`,
/// `|α|, |β| ≤ A` and `κ ≥ −3/4`. Using `λ(u, v) ≥ ¾u²` bounds `p`, and for
/// fixed `u` the admissible `v` is at most `(−u + √(4L − 3u²))/2`, which
/// decreases in `u ≥ 0`.
pub(crate) struct EnumerationBound {
    shift: f64,
    level: f64,
}

impl EnumerationBound {
    pub(crate) fn new(param: &FamilyParam, lambda_max: f64) -> Self {
        let shift = table_rows(param).iter().map(TableRow::max_shift).fold(0.0, f64::max);
        let level = lambda_max + 0.75 + 1e-9 * lambda_max.abs() + 1.0;
        EnumerationBound { shift, level }
    }

    pub(crate) fn p_max(&self) -> i64 {
        ((4.0 * self.level / 3.0).sqrt() + self.shift).floor() as i64 + 1
    }

    /// `None` when no line at this `p` can fall below the cutoff.
    pub(crate) fn q_max(&self, p: i64) -> Option<i64> {
        let a = self.shift;
        let p = p as f64;
        let v_max = if p >= a {
            let u = p - a;
            let disc = 4.0 * self.level - 3.0 * u * u;
            if disc < 0.0 {
                return None;
            }
            (-u + disc.sqrt()) / 2.0
        } else {
            (a + (4.0 * self.level).sqrt()) / 2.0
        };
        Some((v_max + a).floor() as i64 + 1)
    }
}

fn validate_cutoff(lambda_max: &Rational) -> Result<()> {
    if !nonnegative(lambda_max) {
        return Err(Error::InvalidCutoff(format!("lambda_max must be nonnegative, got {lambda_max}")));
    }
    if lambda_max.to_integer() > LAMBDA_MAX_LIMIT {
        return Err(Error::Overflow("enumerating a spectrum above the supported cutoff"));
    }
    Ok(())
}

/// Merges lines with equal keys (sorted ascending) by summing multiplicities.
fn merge_sorted(mut keyed: Vec<(i128, SpectralLine)>) -> Result<Vec<SpectralLine>> {
    keyed.sort_by_key(|(key, _)| *key);
    let mut merged: Vec<SpectralLine> = Vec::new();
    let mut last_key = None;
    for (key, line) in keyed {
        if last_key == Some(key) {
            let tail = merged.last_mut().expect("non-empty after first key");
            tail.multiplicity =
                tail.multiplicity.checked_add(line.multiplicity).ok_or(Error::Overflow("merging multiplicities"))?;
        } else {
            merged.push(line);
            last_key = Some(key);
        }
    }
    Ok(merged)
}

/// All lines of `D_t²` with eigenvalue `≤ lambda_max`, merged and sorted.
pub fn build_spectrum(param: &FamilyParam, lambda_max: Rational, route: Route) -> Result<Spectrum> {
    validate_cutoff(&lambda_max)?;
    let bound = EnumerationBound::new(param, rational_to_f64(&lambda_max));
    let rows = table_rows(param);
    let den = *param.t().denom();
    let den_sq = den.checked_mul(den).ok_or(Error::Overflow("squaring the denominator of t"))?;

    let keyed: Vec<(i128, SpectralLine)> = (0..=bound.p_max())
        .into_par_iter()
        .flat_map_iter(|p| {
            let q_top = bound.q_max(p).unwrap_or(-1);
            let rows = &rows;
            (0..=q_top).flat_map(move |q| match route {
                Route::Table => lines_from_rows(rows, p, q),
                Route::Principles => lines_from_principles(param, p, q),
            })
        })
        .filter(|line| line.eigenvalue <= lambda_max)
        .map(|line| (eigen_key(&line.eigenvalue, den_sq), line))
        .collect();

    Ok(Spectrum { lines: merge_sorted(keyed)?, cutoff: lambda_max, param: *param })
}

/// Spectrum at `t = 1/3` from `p² + q² + pq` with multiplicity
/// `2p²q²(p+q)²`, merged and sorted.
pub fn spectrum_third(lambda_max: Rational) -> Result<Spectrum> {
    validate_cutoff(&lambda_max)?;
    let top = lambda_max.to_integer().max(0);
    let p_max = ((top as f64).sqrt() as i64) + 1;
    let mut keyed = Vec::new();
    for p in 1..=p_max {
        for q in 1..=p_max {
            let e = (p * p + q * q + p * q) as i128;
            if Rational::from(e) > lambda_max {
                continue;
            }
            let (pu, qu) = (p as u128, q as u128);
            let s = pu + qu;
            keyed
                .push((e, SpectralLine { eigenvalue: Rational::from(e), multiplicity: 2 * pu * pu * qu * qu * s * s }));
        }
    }
    Ok(Spectrum { lines: merge_sorted(keyed)?, cutoff: lambda_max, param: FamilyParam::from_ratio(1, 3) })
}

/// Number of states (with multiplicity) contributed by `(p, q)`: `8 · dim(p,q)²`.
pub fn states_at(p: i64, q: i64) -> u128 {
    let d = weyl_dim_unchecked(p as u128, q as u128);
    8 * d * d
}

pub(crate) fn rational_ceiling(x: f64) -> Result<Rational> {
    let c = x.ceil();
    c.to_i128().map(Rational::from_integer).ok_or(Error::Overflow("converting a cutoff to an exact rational"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn multiset(lines: &[SpectralLine]) -> BTreeMap<(Rational, u128), usize> {
        let mut m = BTreeMap::new();
        for l in lines {
            *m.entry((l.eigenvalue, l.multiplicity)).or_insert(0) += 1;
        }
        m
    }

    const TS: [(i128, i128); 7] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1), (7, 5)];

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity_m(1, 1, 1, 1), 216);
        assert_eq!(multiplicity_m(1, 1, 0, 0), 64);
        assert_eq!(multiplicity_m(0, 0, 1, 1), 8);
    }

    #[test]
    fn multiplicity_factorizes_through_weyl_dims() {
        for p in 0..30i64 {
            for q in 0..30i64 {
                for (a, b) in [(1, 1), (-1, 2), (0, 0), (-2, 1), (2, -1), (1, -2), (-1, -1)] {
                    let mu = Weight::new(p + a, q + b);
                    if mu.is_dominant() {
                        assert_eq!(
                            multiplicity_m(p, q, a, b),
                            weyl_dim(Weight::new(p, q)).unwrap() * weyl_dim(mu).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn origin_has_a_single_line() {
        for (n, d) in TS {
            let t = FamilyParam::from_ratio(n, d);
            let lines = lines_from_table(&t, 0, 0);
            assert_eq!(lines, vec![SpectralLine { eigenvalue: t.t() * t.t() * 27, multiplicity: 8 }]);
            let principled = lines_from_principles(&t, 0, 0);
            assert_eq!(principled, lines);
        }
        let third = FamilyParam::from_ratio(1, 3);
        assert_eq!(lines_from_table(&third, 0, 0)[0].eigenvalue, r(3, 1));
    }

    #[test]
    fn levi_civita_row_three() {
        let t = FamilyParam::from_ratio(1, 2);
        let rows = table_rows(&t);
        assert_eq!(rows[2].eigenvalue(1, 1), r(45, 4));
        assert_eq!(rows[2].multiplicity(1, 1), 64);
        let mu_self = lines_from_principles(&t, 1, 1).into_iter().filter(|l| l.eigenvalue == r(45, 4)).count();
        assert_eq!(mu_self, 2);
    }

    #[test]
    fn cubic_collapse_per_point() {
        let t = FamilyParam::from_ratio(1, 3);
        for p in 0..25 {
            for q in 0..25 {
                let expected = casimir_scalar(Weight::new(p, q)).unwrap() + 3;
                for line in lines_from_principles(&t, p, q) {
                    assert_eq!(line.eigenvalue, expected);
                }
            }
        }
    }

    #[test]
    fn routes_agree_pointwise() {
        for (n, d) in TS {
            let t = FamilyParam::from_ratio(n, d);
            for p in 0..=15 {
                for q in 0..=15 {
                    assert_eq!(
                        multiset(&lines_from_table(&t, p, q)),
                        multiset(&lines_from_principles(&t, p, q)),
                        "t={} (p,q)=({p},{q})",
                        t.t()
                    );
                }
            }
        }
    }

    #[test]
    fn states_per_point() {
        for (n, d) in TS {
            let t = FamilyParam::from_ratio(n, d);
            for p in 0..12 {
                for q in 0..12 {
                    let total: u128 = lines_from_table(&t, p, q).iter().map(|l| l.multiplicity).sum();
                    assert_eq!(total, states_at(p, q));
                }
            }
        }
    }

    #[test]
    fn build_spectrum_examples() {
        let third = FamilyParam::from_ratio(1, 3);
        let s = build_spectrum(&third, r(7, 1), Route::Table).unwrap();
        assert_eq!(
            s.lines,
            vec![
                SpectralLine { eigenvalue: r(3, 1), multiplicity: 8 },
                SpectralLine { eigenvalue: r(7, 1), multiplicity: 144 },
            ]
        );
        assert!(build_spectrum(&third, r(2, 1), Route::Table).unwrap().is_empty());

        let trivial = FamilyParam::from_ratio(0, 1);
        assert_eq!(
            build_spectrum(&trivial, r(0, 1), Route::Table).unwrap().lines,
            vec![SpectralLine { eigenvalue: r(0, 1), multiplicity: 8 }]
        );
        for (n, d) in [(1, 4), (1, 3), (1, 2), (3, 4)] {
            let t = FamilyParam::from_ratio(n, d);
            assert!(build_spectrum(&t, r(0, 1), Route::Table).unwrap().is_empty());
        }
        assert!(matches!(build_spectrum(&third, r(-1, 1), Route::Table), Err(Error::InvalidCutoff(_))));
        assert!(matches!(
            build_spectrum(&third, Rational::from(LAMBDA_MAX_LIMIT + 1), Route::Table),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn spectrum_third_examples() {
        assert_eq!(spectrum_third(r(3, 1)).unwrap().lines, vec![SpectralLine { eigenvalue: r(3, 1), multiplicity: 8 }]);
        assert_eq!(
            spectrum_third(r(12, 1)).unwrap().lines,
            vec![
                SpectralLine { eigenvalue: r(3, 1), multiplicity: 8 },
                SpectralLine { eigenvalue: r(7, 1), multiplicity: 144 },
                SpectralLine { eigenvalue: r(12, 1), multiplicity: 512 },
            ]
        );
        assert!(spectrum_third(r(29, 10)).unwrap().is_empty());
    }

    #[test]
    fn coincident_eigenvalues_merge() {
        // 49 = λ(3,5) = λ(5,3) = λ(7,0), the last with zero multiplicity.
        let s = spectrum_third(r(49, 1)).unwrap();
        let line = s.lines.iter().find(|l| l.eigenvalue == r(49, 1)).unwrap();
        assert_eq!(line.multiplicity, 2 * (2 * 9 * 25 * 64));
        for w in s.lines.windows(2) {
            assert!(w[0].eigenvalue < w[1].eigenvalue);
        }
    }

    #[test]
    fn enlarging_the_bound_adds_nothing() {
        for (n, d) in TS.iter().copied().chain([(-1, 2), (3, 1)]) {
            let t = FamilyParam::from_ratio(n, d);
            for cutoff in [0i128, 5, 40, 300] {
                let lm = Rational::from(cutoff);
                let s = build_spectrum(&t, lm, Route::Table).unwrap();
                let mut keyed = Vec::new();
                let den = *t.t().denom();
                for p in 0..80 {
                    for q in 0..80 {
                        for line in lines_from_table(&t, p, q) {
                            if line.eigenvalue <= lm {
                                keyed.push((eigen_key(&line.eigenvalue, den * den), line));
                            }
                        }
                    }
                }
                assert_eq!(s.lines, merge_sorted(keyed).unwrap(), "t={} cutoff={cutoff}", t.t());
            }
        }
    }

    #[test]
    fn positivity_on_unit_interval() {
        for (n, d) in [(0, 1), (1, 10), (1, 4), (1, 3), (1, 2), (2, 3), (9, 10), (1, 1)] {
            let t = FamilyParam::from_ratio(n, d);
            let s = build_spectrum(&t, r(400, 1), Route::Table).unwrap();
            for l in &s.lines {
                assert!(nonnegative(&l.eigenvalue));
                // the kernel appears only at t = 0 and its mirror t = 1
                if n > 0 && n < d {
                    assert!(l.eigenvalue > Rational::zero());
                }
            }
        }
    }

    #[test]
    fn mirror_symmetry_of_spectrum() {
        for (n, d) in [(0, 1), (1, 4), (1, 3), (1, 5)] {
            let t = FamilyParam::from_ratio(n, d);
            let a = build_spectrum(&t, r(300, 1), Route::Table).unwrap();
            let b = build_spectrum(&t.mirrored(), r(300, 1), Route::Table).unwrap();
            assert_eq!(a.lines, b.lines);
        }
    }

    #[test]
    fn table_symmetric_under_conjugation() {
        for (n, d) in TS {
            let t = FamilyParam::from_ratio(n, d);
            for p in 0..15 {
                for q in 0..15 {
                    assert_eq!(multiset(&lines_from_table(&t, p, q)), multiset(&lines_from_table(&t, q, p)));
                }
            }
        }
    }

    #[test]
    fn deformation_zeros() {
        assert!(FamilyParam::from_ratio(1, 3).deformation().is_zero());
        assert!(FamilyParam::from_ratio(2, 3).deformation().is_zero());
        assert_eq!(FamilyParam::from_ratio(1, 2).deformation(), r(-1, 4));
    }
}
