//! Euler–Maclaurin summation over ℕ and ℕ².
//!
//! One variable:
//!
//! ```text
//! Σ_{p≥0} h(p) = ∫₀^∞ h + ½h(0) − Σ_{j=1}^{k} b_{2j}/(2j)! · h^{(2j−1)}(0) + R_m(h),
//! R_m(h) = (−1)^{m+1} ∫₀^∞ P_m(x) h^{(m)}(x) dx,   P_m(x) = B_m({x})/m!,   k = ⌊m/2⌋.
//! ```
//!
//! Two variables: the main term of the primed sum (boundary points weighted
//! ½, the origin ¼) is `L(∂₁) L(∂₂) ∫_{h₁}^∞ ∫_{h₂}^∞ g |_{h=0}` with
//! `L(S) = 1 + Σ_{j=1}^{k} b_{2j}/(2j)! S^{2j}`. Derivatives in the lower
//! limits reduce to axis integrals of derivatives of `g` and to mixed
//! derivatives of `g` at the origin, all taken from jets.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::numerics::bernoulli::{bernoulli, periodized_bernoulli};
use crate::numerics::jet::{check_order, factorial, Jet, Scalar};
use crate::numerics::quadrature::{integrate, integrate_half_line, integrate_quadrant, HalfLine, QuadConfig};
use crate::numerics::summation::NeumaierSum;
use crate::numerics::{TestFunction, DEFAULT_TOL_1D, DEFAULT_TOL_2D};
use crate::rep_theory::rational_to_f64;

/// Default derivative order.
pub const DEFAULT_EM_ORDER: usize = 8;

/// Smallest order whose remainder decays in the spectral-action sums.
pub const MIN_ACTION_ORDER: usize = 5;

// Pieces of the remainder integral past the decay scale that contribute
// below this fraction of the running absolute total are treated as the end
// of the support.
const REMAINDER_NEGLIGIBLE: f64 = 1e-18;
const REMAINDER_QUIET_PIECES: usize = 8;
const REMAINDER_MAX_PIECES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    m: usize,
    k: usize,
    pub quad_1d: QuadConfig,
    pub quad_2d: QuadConfig,
}

impl EmConfig {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("Euler-Maclaurin order m must be positive".into()));
        }
        check_order(m)?;
        Ok(EmConfig { m, k: m / 2, quad_1d: QuadConfig::new(DEFAULT_TOL_1D), quad_2d: QuadConfig::new(DEFAULT_TOL_2D) })
    }

    /// As [`EmConfig::new`], additionally requiring `m ≥ 5`.
    pub fn for_action(m: usize) -> Result<Self> {
        if m < MIN_ACTION_ORDER {
            return Err(Error::InvalidArgument(format!("spectral-action sums need m >= {MIN_ACTION_ORDER}, got {m}")));
        }
        Self::new(m)
    }

    pub fn with_tolerances(self, tol_1d: f64, tol_2d: f64) -> Self {
        EmConfig {
            quad_1d: QuadConfig { rel_tol: tol_1d, ..self.quad_1d },
            quad_2d: QuadConfig { rel_tol: tol_2d, ..self.quad_2d },
            ..self
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `b_{2j}/(2j)!`.
    fn coefficient(j: usize) -> f64 {
        rational_to_f64(&bernoulli(2 * j)) / factorial(2 * j)
    }
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig::new(DEFAULT_EM_ORDER).expect("default order is valid")
    }
}

/// A smooth function on `[0, ∞)` that can be evaluated on jets.
pub trait Summand1d: Sync {
    fn eval<T: Scalar>(&self, x: T) -> T;
    /// Where the function lives: its support, or its decay scale.
    fn range(&self) -> HalfLine;
}

/// A smooth function on `[0, ∞)²` that can be evaluated on nested jets.
pub trait Summand2d: Sync {
    fn eval<T: Scalar>(&self, p: T, q: T) -> T;
    /// Ranges in `p` and in `q`.
    fn ranges(&self) -> (HalfLine, HalfLine);
}

fn derivative_1d<H: Summand1d>(h: &H, x: f64, n: usize) -> f64 {
    h.eval(Jet::variable(x, n)).derivative(n)
}

/// Euler–Maclaurin main part and remainder of `Σ_{p≥0} h(p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmSum1d {
    pub value: f64,
    pub remainder: f64,
}

impl EmSum1d {
    pub fn total(&self) -> f64 {
        self.value + self.remainder
    }
}

pub fn em_sum_1d<H: Summand1d>(h: &H, cfg: &EmConfig) -> Result<EmSum1d> {
    let range = h.range();
    let integral = integrate_half_line(&|x| h.eval(x), range, &cfg.quad_1d)?.value;
    let mut value = NeumaierSum::new();
    value.add(integral);
    value.add(0.5 * h.eval(0.0));
    if cfg.k > 0 {
        let tower = h.eval(Jet::variable(0.0, 2 * cfg.k - 1));
        for j in 1..=cfg.k {
            value.add(-EmConfig::coefficient(j) * tower.derivative(2 * j - 1));
        }
    }
    Ok(EmSum1d { value: value.value(), remainder: remainder_1d(h, cfg)? })
}

// (−1)^{m+1} ∫ P_m h^{(m)}
fn remainder_1d<H: Summand1d>(h: &H, cfg: &EmConfig) -> Result<f64> {
    let m = cfg.m;
    bernoulli_weighted_integral(m, &|x| Ok(derivative_1d(h, x, m)), h.range(), cfg)
}

// (−1)^{m+1} ∫₀^∞ P_m(x) d(x) dx over `range`, one unit interval at a time
// so that P_m is smooth on every piece.
fn bernoulli_weighted_integral(
    m: usize,
    d: &dyn Fn(f64) -> Result<f64>,
    range: HalfLine,
    cfg: &EmConfig,
) -> Result<f64> {
    let failure: Cell<Option<Error>> = Cell::new(None);
    let integrand = |x: f64| match d(x) {
        Ok(v) => periodized_bernoulli(m, x) * v,
        Err(e) => {
            failure.set(Some(e));
            0.0
        }
    };
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let mut total = NeumaierSum::new();
    let mut abs_total = 0.0f64;
    let (end, scale) = match range {
        HalfLine::UpTo(b) => (Some(b), b),
        HalfLine::Unbounded { scale } => (None, scale),
    };
    let mut quiet = 0;
    for n in 0..REMAINDER_MAX_PIECES {
        let a = n as f64;
        let b = match end {
            Some(e) if a >= e => break,
            Some(e) => (a + 1.0).min(e),
            None => a + 1.0,
        };
        let piece = integrate(&integrand, a, b, &cfg.quad_1d)?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        total.add(piece.value);
        let size = piece.value.abs() + piece.error;
        abs_total += size;
        if end.is_none() {
            quiet = if size <= REMAINDER_NEGLIGIBLE * abs_total { quiet + 1 } else { 0 };
            if a > 8.0 * scale && quiet >= REMAINDER_QUIET_PIECES {
                return Ok(sign * total.value());
            }
        }
    }
    if end.is_none() {
        return Err(Error::NonConvergence {
            what: "Euler-Maclaurin remainder integral",
            error: abs_total,
            requested: REMAINDER_NEGLIGIBLE,
        });
    }
    Ok(sign * total.value())
}

/// The Euler–Maclaurin main term of the primed sum `Σ′ g` over ℕ².
///
/// Evaluates all `(k+1)²` terms: the double integral, `2k` axis integrals
/// of odd derivatives, and `k²` mixed derivatives at the origin.
pub fn em_main_2d<G: Summand2d>(g: &G, cfg: &EmConfig) -> Result<f64> {
    let (p_range, q_range) = g.ranges();
    let k = cfg.k;
    let mut total = NeumaierSum::new();
    total.add(integrate_quadrant(&|p, q| g.eval(p, q), p_range, q_range, &cfg.quad_2d)?.value);
    if k == 0 {
        return Ok(total.value());
    }
    let order = 2 * k - 1;
    for j in 1..=k {
        let n = 2 * j - 1;
        let c = EmConfig::coefficient(j);
        let along_q = integrate_half_line(
            &|q| g.eval(Jet::variable(0.0, n), Jet::constant(q, n)).derivative(n),
            q_range,
            &cfg.quad_1d,
        )?;
        let along_p = integrate_half_line(
            &|p| g.eval(Jet::constant(p, n), Jet::variable(0.0, n)).derivative(n),
            p_range,
            &cfg.quad_1d,
        )?;
        total.add(-c * along_q.value);
        total.add(-c * along_p.value);
    }
    let p = Jet::variable(Jet::constant(0.0, order), order);
    let q = Jet::constant(Jet::variable(0.0, order), order);
    let corner = g.eval(p, q);
    for j1 in 1..=k {
        for j2 in 1..=k {
            let mixed = corner.derivative(2 * j1 - 1).derivative(2 * j2 - 1);
            total.add(EmConfig::coefficient(j1) * EmConfig::coefficient(j2) * mixed);
        }
    }
    Ok(total.value())
}

struct QSlice<'a, G> {
    g: &'a G,
    p: f64,
}

impl<G: Summand2d> Summand1d for QSlice<'_, G> {
    fn eval<T: Scalar>(&self, x: T) -> T {
        let p = x.constant_like(self.p);
        self.g.eval(p, x)
    }
    fn range(&self) -> HalfLine {
        self.g.ranges().1
    }
}

/// The two-variable remainder `Σ′ g − em_main_2d(g)`, evaluated without
/// forming the difference.
///
/// Summing in `q` first, `Σ′_q g(p, ·) = A(p) + R_q(p)` with
/// `A(p) = ∫ g(p, q) dq − Σ_j c_{2j} ∂_q^{2j−1} g(p, 0)`, and summing `A` in
/// `p` returns the main term plus `R_p(A)`. Hence
/// `R = Σ′_p R_q(p) + R_p(A)`, where every piece is a one-variable remainder
/// integral of jet derivatives.
pub fn em_remainder_2d<G: Summand2d>(g: &G, cfg: &EmConfig) -> Result<f64> {
    let m = cfg.m;
    let k = cfg.k;
    let (p_range, q_range) = g.ranges();

    // Σ′_p R_q(p)
    let mut slices = NeumaierSum::new();
    let mut abs_total = 0.0f64;
    let (end, scale) = match p_range {
        HalfLine::UpTo(b) => (Some(b), b),
        HalfLine::Unbounded { scale } => (None, scale),
    };
    let mut quiet = 0;
    let mut p = 0usize;
    loop {
        let pf = p as f64;
        if matches!(end, Some(e) if pf > e) {
            break;
        }
        let r = remainder_1d(&QSlice { g, p: pf }, cfg)?;
        let weight = if p == 0 { 0.5 } else { 1.0 };
        slices.add(weight * r);
        abs_total += r.abs();
        if end.is_none() {
            quiet = if r.abs() <= REMAINDER_NEGLIGIBLE * abs_total { quiet + 1 } else { 0 };
            if pf > 8.0 * scale && quiet >= REMAINDER_QUIET_PIECES {
                break;
            }
        }
        p += 1;
        if p >= REMAINDER_MAX_PIECES {
            return Err(Error::NonConvergence {
                what: "two-variable remainder",
                error: abs_total,
                requested: REMAINDER_NEGLIGIBLE,
            });
        }
    }

    // R_p(A) with A^{(m)}(p) = ∫ ∂_p^m g(p, q) dq − Σ_j c_{2j} ∂_p^m ∂_q^{2j−1} g(p, 0)
    let a_m = |p: f64| -> Result<f64> {
        let bulk = integrate_half_line(
            &|q| g.eval(Jet::variable(p, m), Jet::constant(q, m)).derivative(m),
            q_range,
            &cfg.quad_1d,
        )?;
        let mut value = NeumaierSum::new();
        value.add(bulk.value);
        if k > 0 {
            let order = 2 * k - 1;
            let edge = g.eval(Jet::variable(Jet::constant(p, order), m), Jet::constant(Jet::variable(0.0, order), m));
            let d = edge.derivative(m);
            for j in 1..=k {
                value.add(-EmConfig::coefficient(j) * d.derivative(2 * j - 1));
            }
        }
        Ok(value.value())
    };
    let edge = bernoulli_weighted_integral(m, &a_m, p_range, cfg)?;
    slices.add(edge);
    Ok(slices.value())
}

struct AlongP<'a, G>(&'a G);
struct AlongQ<'a, G>(&'a G);

impl<G: Summand2d> Summand1d for AlongP<'_, G> {
    fn eval<T: Scalar>(&self, x: T) -> T {
        let zero = x.constant_like(0.0);
        self.0.eval(x, zero)
    }
    fn range(&self) -> HalfLine {
        self.0.ranges().0
    }
}

impl<G: Summand2d> Summand1d for AlongQ<'_, G> {
    fn eval<T: Scalar>(&self, x: T) -> T {
        let zero = x.constant_like(0.0);
        self.0.eval(zero, x)
    }
    fn range(&self) -> HalfLine {
        self.0.ranges().1
    }
}

/// The pieces of `Σ_{ℕ²} g = main + ½Σ_{p≥1} g(p,0) + ½Σ_{q≥1} g(0,q) + ¾g(0,0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NnSum {
    /// Main term of the primed sum.
    pub main: f64,
    /// `Σ_{p≥0} g(p, 0)` by [`em_sum_1d`], remainder included.
    pub p_axis: f64,
    /// `Σ_{q≥0} g(0, q)` likewise.
    pub q_axis: f64,
    pub origin: f64,
    pub total: f64,
}

/// Full ℕ² sum from the 2D main term plus boundary compensation.
pub fn nn_sum_via_em<G: Summand2d>(g: &G, cfg: &EmConfig) -> Result<NnSum> {
    let main = em_main_2d(g, cfg)?;
    let p_axis = em_sum_1d(&AlongP(g), cfg)?.total();
    let q_axis = em_sum_1d(&AlongQ(g), cfg)?.total();
    let origin = g.eval(0.0, 0.0);
    // ½(A_p − g₀₀) + ½(A_q − g₀₀) + ¾g₀₀
    let total: NeumaierSum = [main, 0.5 * p_axis, 0.5 * q_axis, -0.25 * origin].into_iter().collect();
    Ok(NnSum { main, p_axis, q_axis, origin, total: total.value() })
}

/// `h(x) = f((c₂x² + c₁x + c₀)/s)` with non-negative coefficients and
/// `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffOfQuadratic1d {
    pub f: TestFunction,
    pub coeffs: [f64; 3],
    pub scale: f64,
}

impl CutoffOfQuadratic1d {
    /// `coeffs = [c₂, c₁, c₀]`.
    pub fn new(f: TestFunction, coeffs: [f64; 3], scale: f64) -> Result<Self> {
        if coeffs.iter().any(|c| !(*c >= 0.0)) || coeffs[0] + coeffs[1] == 0.0 || !(scale > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "need non-negative coefficients with c2 + c1 > 0 and scale > 0, got {coeffs:?}, {scale}"
            )));
        }
        Ok(CutoffOfQuadratic1d { f, coeffs, scale })
    }
}

// Largest x ≥ 0 with c₂x² + c₁x + c₀ ≤ level, or the decay length of the
// quadratic when f has no compact support.
fn quadratic_range(f: &TestFunction, c2: f64, c1: f64, c0: f64, scale: f64) -> HalfLine {
    match f.support_end() {
        Some(b) => {
            let level = b * scale - c0;
            if level <= 0.0 {
                return HalfLine::UpTo(0.0);
            }
            let x = if c2 > 0.0 { (-c1 + (c1 * c1 + 4.0 * c2 * level).sqrt()) / (2.0 * c2) } else { level / c1 };
            HalfLine::UpTo(x)
        }
        None => {
            let length = if c2 > 0.0 { (scale / c2).sqrt() } else { scale / c1 };
            HalfLine::Unbounded { scale: length }
        }
    }
}

impl Summand1d for CutoffOfQuadratic1d {
    fn eval<T: Scalar>(&self, x: T) -> T {
        let [c2, c1, c0] = self.coeffs;
        let u = (x.clone() * x.scale(c2) + x.scale(c1)).shift(c0).scale(1.0 / self.scale);
        self.f.apply(&u)
    }
    fn range(&self) -> HalfLine {
        let [c2, c1, c0] = self.coeffs;
        quadratic_range(&self.f, c2, c1, c0, self.scale)
    }
}

/// `g(p, q) = f(Q(p, q)/s)` for a quadratic
/// `Q = c_pp p² + c_qq q² + c_pq pq + c_p p + c_q q + c₀` with non-negative
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffOfQuadratic2d {
    pub f: TestFunction,
    /// `[c_pp, c_qq, c_pq, c_p, c_q, c₀]`.
    pub coeffs: [f64; 6],
    pub scale: f64,
}

impl CutoffOfQuadratic2d {
    pub fn new(f: TestFunction, coeffs: [f64; 6], scale: f64) -> Result<Self> {
        let [pp, qq, _, p, q, _] = coeffs;
        if coeffs.iter().any(|c| !(*c >= 0.0)) || pp + p == 0.0 || qq + q == 0.0 || !(scale > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "need non-negative coefficients growing in both variables and scale > 0, got {coeffs:?}, {scale}"
            )));
        }
        Ok(CutoffOfQuadratic2d { f, coeffs, scale })
    }

    /// `f(p² + q² + pq)`.
    pub fn of_form(f: TestFunction, scale: f64) -> Self {
        CutoffOfQuadratic2d { f, coeffs: [1.0, 1.0, 1.0, 0.0, 0.0, 0.0], scale }
    }
}

impl Summand2d for CutoffOfQuadratic2d {
    fn eval<T: Scalar>(&self, p: T, q: T) -> T {
        let [pp, qq, pq, cp, cq, c0] = self.coeffs;
        let u = p.clone() * p.scale(pp) + q.clone() * q.scale(qq) + p.clone() * q.scale(pq) + p.scale(cp) + q.scale(cq);
        self.f.apply(&u.shift(c0).scale(1.0 / self.scale))
    }
    fn ranges(&self) -> (HalfLine, HalfLine) {
        // the cross term only raises Q on the quadrant, so the axis
        // quadratics bound the support
        let [pp, qq, _, cp, cq, c0] = self.coeffs;
        (quadratic_range(&self.f, pp, cp, c0, self.scale), quadratic_range(&self.f, qq, cq, c0, self.scale))
    }
}
