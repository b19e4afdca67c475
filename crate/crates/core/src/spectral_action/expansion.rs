//! The four-term large-Λ expansion and the Poisson leading term.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::direct::validate_lambda;
use crate::error::Result;
use crate::numerics::{integrate_quadrant, HalfLine, QuadConfig, TestFunction};
use crate::rep_theory::rational_to_f64;
use crate::spectrum::FamilyParam;

/// Quadrant integrals `∫∫_{[0,∞)²} f(Q) w` of the expansion, where
/// `Q = x² + y² + xy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientIntegrals {
    /// `w = x²y²(x+y)²`.
    pub sextic: f64,
    /// `w = x⁴ + 2x³y + 3x²y² + 2xy³ + y⁴ = Q²`.
    pub quartic: f64,
    /// `w = Q`.
    pub quadratic: f64,
    /// `w = 1`.
    pub constant: f64,
}

type CacheKey = ((u8, u64, u64), u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, CoefficientIntegrals>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, CoefficientIntegrals>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CoefficientIntegrals {
    /// Computes (or fetches from the per-`(f, tol)` cache) the four integrals.
    pub fn for_function(f: &TestFunction, tol: f64) -> Result<Self> {
        let key = (f.cache_key(), tol.to_bits());
        if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
            return Ok(*hit);
        }
        let computed = Self::compute(f, tol)?;
        cache().lock().expect("cache lock").insert(key, computed);
        Ok(computed)
    }

    fn compute(f: &TestFunction, tol: f64) -> Result<Self> {
        // Q ≥ x², so the support lies in [0, √b]²
        let range = HalfLine::from_support(f.support_end().map(f64::sqrt), 1.0);
        let cfg = QuadConfig::new(tol);
        let integral = |w: &dyn Fn(f64, f64) -> f64| {
            integrate_quadrant(&|x, y| f.value(x * x + y * y + x * y) * w(x, y), range, range, &cfg).map(|e| e.value)
        };
        Ok(CoefficientIntegrals {
            sextic: integral(&|x, y| {
                let s = x * y * (x + y);
                s * s
            })?,
            quartic: integral(&|x, y| {
                let q = x * x + y * y + x * y;
                q * q
            })?,
            quadratic: integral(&|x, y| x * x + y * y + x * y)?,
            constant: integral(&|_, _| 1.0)?,
        })
    }
}

/// The expansion `c₈Λ⁸ + c₆Λ⁶ + c₄Λ⁴ + c₂Λ²` at one `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionBreakdown {
    pub c8: f64,
    pub c6: f64,
    pub c4: f64,
    pub c2: f64,
    pub lambda: f64,
    /// `[c₈Λ⁸, c₆Λ⁶, c₄Λ⁴, c₂Λ²]`.
    pub term_values: [f64; 4],
    pub total: f64,
}

/// Coefficients with `d = (3t−1)(3t−2)`: `c₈ = 2I(x²y²(x+y)²)`,
/// `c₆ = 3d·I(Q²)`, `c₄ = 9d²·I(Q)`, `c₂ = 6d³·I(1)`.
pub fn expansion_action(param: &FamilyParam, lambda: f64, f: &TestFunction, tol: f64) -> Result<ExpansionBreakdown> {
    validate_lambda(lambda)?;
    let ints = CoefficientIntegrals::for_function(f, tol)?;
    let d = rational_to_f64(&param.deformation());
    let c8 = 2.0 * ints.sextic;
    let c6 = 3.0 * d * ints.quartic;
    let c4 = 9.0 * d * d * ints.quadratic;
    let c2 = 6.0 * d * d * d * ints.constant;
    let l2 = lambda * lambda;
    let term_values = [c8 * l2.powi(4), c6 * l2.powi(3), c4 * l2 * l2, c2 * l2];
    // smallest terms first
    let total = term_values.iter().rev().sum();
    Ok(ExpansionBreakdown { c8, c6, c4, c2, lambda, term_values, total })
}

/// `(1/3)∫∫_{ℝ²} x²y²(x+y)² f(Q) Λ⁸`, computed as `2·I_quadrant·Λ⁸` through
/// the sixfold unimodular cover of the plane.
pub fn poisson_leading(lambda: f64, f: &TestFunction, tol: f64) -> Result<f64> {
    validate_lambda(lambda)?;
    let ints = CoefficientIntegrals::for_function(f, tol)?;
    Ok(2.0 * ints.sextic * lambda.powi(8))
}
