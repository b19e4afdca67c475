//! The spectral action through Euler–Maclaurin applied to each table row.

use super::direct::validate_lambda;
use crate::error::Result;
use crate::euler_maclaurin::{em_sum_1d, nn_sum_via_em, EmConfig, Summand1d, Summand2d};
use crate::numerics::{HalfLine, NeumaierSum, Scalar, TestFunction};
use crate::rep_theory::rational_to_f64;
use crate::spectrum::{table_rows, FamilyParam, TableRow};

/// `g(p, q) = f(λ(p+α, q+β) + κ)/Λ²) · m(a, b)(p, q)` at real `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowSummand {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    pub a: f64,
    pub b: f64,
    pub f: TestFunction,
    pub lambda: f64,
}

impl RowSummand {
    pub fn new(row: &TableRow, f: TestFunction, lambda: f64) -> Self {
        RowSummand {
            alpha: rational_to_f64(&row.alpha),
            beta: rational_to_f64(&row.beta),
            kappa: rational_to_f64(&row.kappa),
            a: row.a as f64,
            b: row.b as f64,
            f,
            lambda,
        }
    }

    /// `m(a, b)` as a polynomial in real `(p, q)`.
    pub fn multiplicity<T: Scalar>(&self, p: T, q: T) -> T {
        let s = p.clone() + q.clone();
        let m = p.shift(1.0)
            * q.shift(1.0)
            * s.shift(2.0)
            * p.shift(1.0 + self.a)
            * q.shift(1.0 + self.b)
            * s.shift(2.0 + self.a + self.b);
        m.scale(0.25)
    }

    fn extent(&self, shift: f64) -> HalfLine {
        match self.f.support_end() {
            // λ(u, v) ≥ ¾u², so f vanishes once ¾(p+α)² + κ ≥ bΛ²
            Some(end) => {
                let level = (end * self.lambda * self.lambda - self.kappa).max(0.0);
                HalfLine::UpTo(((4.0 * level / 3.0).sqrt() - shift).max(0.0) + 1e-9)
            }
            None => HalfLine::Unbounded { scale: self.lambda },
        }
    }
}

impl Summand2d for RowSummand {
    fn eval<T: Scalar>(&self, p: T, q: T) -> T {
        let u = p.shift(self.alpha);
        let v = q.shift(self.beta);
        let form = u.clone() * u.clone() + v.clone() * v.clone() + u * v;
        let weight = self.f.apply(&form.shift(self.kappa).scale(1.0 / (self.lambda * self.lambda)));
        weight * self.multiplicity(p, q)
    }

    fn ranges(&self) -> (HalfLine, HalfLine) {
        (self.extent(self.alpha), self.extent(self.beta))
    }
}

struct Line<'a> {
    row: &'a RowSummand,
    along_p: bool,
}

impl Summand1d for Line<'_> {
    fn eval<T: Scalar>(&self, x: T) -> T {
        let zero = x.constant_like(0.0);
        if self.along_p {
            self.row.eval(x, zero)
        } else {
            self.row.eval(zero, x)
        }
    }
    fn range(&self) -> HalfLine {
        let (p, q) = self.row.ranges();
        if self.along_p {
            p
        } else {
            q
        }
    }
}

/// Euler–Maclaurin estimate of one row's contribution over its gate.
///
/// The full ℕ² sum is corrected for the lines and points the gate excludes;
/// rows whose multiplicity vanishes on the excluded set need no correction.
pub fn em_row(row: &TableRow, f: &TestFunction, lambda: f64, cfg: &EmConfig) -> Result<f64> {
    let g = RowSummand::new(row, *f, lambda);
    let mut total = NeumaierSum::new();
    total.add(nn_sum_via_em(&g, cfg)?.total);
    let gate = row.gate;
    let drop_p0 = gate.p_min >= 1;
    let drop_q0 = gate.q_min >= 1;
    if drop_p0 {
        total.add(-em_sum_1d(&Line { row: &g, along_p: false }, cfg)?.total());
    }
    if drop_q0 {
        total.add(-em_sum_1d(&Line { row: &g, along_p: true }, cfg)?.total());
    }
    if drop_p0 && drop_q0 {
        total.add(g.eval(0.0, 0.0));
    }
    if gate.exclude_origin && !drop_p0 && !drop_q0 {
        total.add(-g.eval(0.0, 0.0));
    }
    Ok(total.value())
}

/// Σ over the eight rows of [`em_row`].
pub fn em_action(param: &FamilyParam, lambda: f64, f: &TestFunction, cfg: &EmConfig) -> Result<f64> {
    validate_lambda(lambda)?;
    let mut total = NeumaierSum::new();
    for row in table_rows(param).iter() {
        total.add(em_row(row, f, lambda, cfg)?);
    }
    Ok(total.value())
}
