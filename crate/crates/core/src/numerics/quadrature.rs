//! Adaptive Gauss–Kronrod quadrature on finite intervals, the half line and
//! the closed quadrant.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::summation::NeumaierSum;
use crate::error::{Error, Result};

/// Default relative tolerance for one-dimensional integrals.
pub const DEFAULT_TOL_1D: f64 = 1e-10;
/// Default relative tolerance for quadrant integrals.
pub const DEFAULT_TOL_2D: f64 = 1e-9;

const DEFAULT_MAX_INTERVALS: usize = 4000;

/// Integrand evaluations allowed in one nested quadrant integral.
const QUADRANT_EVALUATION_BUDGET: usize = 50_000_000;

// 15-point Kronrod abscissae on [−1, 1] (non-negative half) and weights;
// odd indices are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl QuadConfig {
    pub fn new(rel_tol: f64) -> Self {
        QuadConfig { rel_tol, abs_tol: 0.0, max_intervals: DEFAULT_MAX_INTERVALS }
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        QuadConfig { abs_tol, ..self }
    }

    pub fn with_max_intervals(self, max_intervals: usize) -> Self {
        QuadConfig { max_intervals, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 || self.abs_tol > 0.0) || self.rel_tol < 0.0 || self.abs_tol < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must be positive (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        Ok(())
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig::new(DEFAULT_TOL_1D)
    }
}

/// An integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // largest error first; ties broken by position for determinism
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Panel { a, b, value, error, abs_value }
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// error is below `max(rel_tol·|I|, abs_tol)`, or below the rounding floor
/// `100ε·∫|f|` (and never below the smallest normal float).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Estimate> {
    cfg.validate()?;
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    let mut heap = BinaryHeap::new();
    heap.push(gauss_kronrod(f, a, b));
    loop {
        let (value, error, abs_value) = totals(&heap);
        let target =
            (cfg.rel_tol * value.abs()).max(cfg.abs_tol).max(100.0 * f64::EPSILON * abs_value).max(f64::MIN_POSITIVE);
        if error <= target {
            return Ok(Estimate { value, error });
        }
        let worst = *heap.peek().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if heap.len() >= cfg.max_intervals || mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            return Err(Error::NonConvergence { what: "adaptive quadrature", error, requested: target });
        }
        heap.pop();
        heap.push(gauss_kronrod(f, worst.a, mid));
        heap.push(gauss_kronrod(f, mid, worst.b));
    }
}

// Sums in left-to-right panel order so the result does not depend on the
// refinement history.
fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: NeumaierSum = panels.iter().map(|p| p.value).collect();
    let error: NeumaierSum = panels.iter().map(|p| p.error).collect();
    let abs_value: NeumaierSum = panels.iter().map(|p| p.abs_value).collect();
    (value.value(), error.value(), abs_value.value())
}

/// Integration range along one half-line coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HalfLine {
    /// `[0, ∞)`, mapped by `x = s·τ/(1−τ)` with `s` the decay scale.
    Unbounded { scale: f64 },
    /// `[0, b]`, for integrands vanishing beyond `b`.
    UpTo(f64),
}

impl HalfLine {
    pub const UNIT: HalfLine = HalfLine::Unbounded { scale: 1.0 };

    /// `[0, b]` when `support_end` is known, otherwise the unbounded map.
    pub fn from_support(support_end: Option<f64>, scale: f64) -> Self {
        match support_end {
            Some(b) => HalfLine::UpTo(b),
            None => HalfLine::Unbounded { scale },
        }
    }
}

/// `∫ f` over a half-line range.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: &F, range: HalfLine, cfg: &QuadConfig) -> Result<Estimate> {
    match range {
        HalfLine::UpTo(b) => integrate(f, 0.0, b, cfg),
        HalfLine::Unbounded { scale } => {
            let mapped = |tau: f64| {
                let one_minus = 1.0 - tau;
                let x = scale * tau / one_minus;
                if !x.is_finite() {
                    return 0.0;
                }
                let v = f(x) * scale / (one_minus * one_minus);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            };
            integrate(&mapped, 0.0, 1.0, cfg)
        }
    }
}

/// `∫₀^∞ f(x) dx` to relative tolerance `tol`.
pub fn quad_semi_infinite_1d<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    integrate_half_line(&f, HalfLine::UNIT, &QuadConfig::new(tol)).map(|e| e.value)
}

/// `∫∫ f(x, y)` over a product of half-line ranges, as nested 1D integrals
/// with the inner tolerance a tenth of the outer one.
pub fn integrate_quadrant<F: Fn(f64, f64) -> f64>(
    f: &F,
    x_range: HalfLine,
    y_range: HalfLine,
    cfg: &QuadConfig,
) -> Result<Estimate> {
    let inner_cfg = QuadConfig { rel_tol: cfg.rel_tol / 10.0, abs_tol: cfg.abs_tol / 10.0, ..*cfg };
    let failure: Cell<Option<Error>> = Cell::new(None);
    let failed = Cell::new(false);
    let evaluations = Cell::new(0usize);
    let counted = |x: f64, y: f64| {
        evaluations.set(evaluations.get() + 1);
        f(x, y)
    };
    let outer = |x: f64| {
        if failed.get() {
            return 0.0;
        }
        match integrate_half_line(&|y| counted(x, y), y_range, &inner_cfg) {
            Ok(e) if evaluations.get() <= QUADRANT_EVALUATION_BUDGET => e.value,
            Ok(e) => {
                failed.set(true);
                failure.set(Some(Error::NonConvergence {
                    what: "quadrant quadrature (evaluation budget)",
                    error: e.error,
                    requested: inner_cfg.rel_tol,
                }));
                0.0
            }
            Err(err) => {
                failed.set(true);
                failure.set(Some(err));
                0.0
            }
        }
    };
    let result = integrate_half_line(&outer, x_range, cfg);
    if let Some(err) = failure.take() {
        return Err(err);
    }
    result
}

/// `∫∫_{[0,∞)²} f(x, y) dx dy` to relative tolerance `tol`.
pub fn quad_quadrant_2d<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    integrate_quadrant(&f, HalfLine::UNIT, HalfLine::UNIT, &QuadConfig::new(tol)).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::TestFunction;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn finite_interval_polynomials_are_exact() {
        let e = integrate(&|x: f64| x.powi(10) - 3.0 * x, 0.0, 2.0, &QuadConfig::default()).unwrap();
        assert_relative_eq!(e.value, 2f64.powi(11) / 11.0 - 6.0, max_relative = 1e-14);
    }

    #[test]
    fn semi_infinite_examples() {
        assert_relative_eq!(quad_semi_infinite_1d(|x: f64| (-x).exp(), 1e-10).unwrap(), 1.0, max_relative = 1e-10);
        assert_relative_eq!(
            quad_semi_infinite_1d(|x: f64| (-x * x).exp(), 1e-10).unwrap(),
            0.886226925452758,
            max_relative = 1e-10
        );
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        let v = quad_semi_infinite_1d(|x| f.value(x), 1e-10).unwrap();
        assert!(v > 1.0 && v < 2.0);
        // the transition is odd about its midpoint
        assert_relative_eq!(v, 1.5, max_relative = 1e-10);
    }

    #[test]
    fn quadrant_examples() {
        let gauss = quad_quadrant_2d(|x, y| (-(x * x + y * y + x * y)).exp(), 1e-9).unwrap();
        assert_relative_eq!(gauss, PI / (3.0 * 3f64.sqrt()), max_relative = 1e-9);
        let product = quad_quadrant_2d(|x, y| (-x - y).exp(), 1e-9).unwrap();
        assert_relative_eq!(product, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn plateau_quadrant_is_sandwiched() {
        // area of {Q ≤ r} in the quadrant is r·π/(3√3)
        let k = PI / (3.0 * 3f64.sqrt());
        let f = TestFunction::plateau(1.0, 2.0).unwrap();
        let v = quad_quadrant_2d(|x, y| f.value(x * x + y * y + x * y), 1e-9).unwrap();
        assert!(v > k && v < 2.0 * k, "{v}");
        let boxed = integrate_quadrant(
            &|x, y| f.value(x * x + y * y + x * y),
            HalfLine::UpTo(2f64.sqrt()),
            HalfLine::UpTo(2f64.sqrt()),
            &QuadConfig::new(1e-9),
        )
        .unwrap();
        assert_relative_eq!(boxed.value, v, max_relative = 1e-8);
        // odd transition profile again gives the midpoint radius
        assert_relative_eq!(v, 1.5 * k, max_relative = 1e-8);
    }

    #[test]
    fn refinement_is_monotone() {
        let integrands: [&dyn Fn(f64) -> f64; 3] =
            [&|x: f64| (-x * x).exp() * (3.0 * x).cos(), &|x: f64| x.powi(3) * (-x).exp(), &|x: f64| {
                1.0 / (1.0 + x * x).powi(2)
            }];
        for f in integrands {
            let mut tol = 1e-4;
            let mut prev = integrate_half_line(&f, HalfLine::UNIT, &QuadConfig::new(tol)).unwrap();
            while tol > 1e-12 {
                tol /= 2.0;
                let next = integrate_half_line(&f, HalfLine::UNIT, &QuadConfig::new(tol)).unwrap();
                assert!((next.value - prev.value).abs() <= prev.error.max(f64::EPSILON * prev.value.abs()));
                prev = next;
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = QuadConfig::new(1e-14).with_max_intervals(3);
        let r = integrate(&|x: f64| (1.0 / x).sin(), 1e-3, 1.0, &cfg);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
        assert!(integrate(&|x| x, 0.0, 1.0, &QuadConfig::new(0.0)).is_err());
    }
}
