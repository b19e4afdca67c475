use std::sync::OnceLock;

use num_traits::Zero;

use crate::rep_theory::{rational_to_f64, Rational};

/// Highest index served by [`bernoulli`]; beyond it the i128 recurrence
/// would overflow.
pub const MAX_BERNOULLI_INDEX: usize = 40;

/// Bernoulli numbers `b₀ … b_n` with `b₁ = −1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

fn binomial(n: usize, k: usize) -> i128 {
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

impl BernoulliTable {
    /// Builds `b₀ … b_n` from `Σ_{j=0}^{n} C(n+1, j) b_j = 0`.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_BERNOULLI_INDEX, "Bernoulli index {n} exceeds {MAX_BERNOULLI_INDEX}");
        let mut values = vec![Rational::from(1)];
        for m in 1..=n {
            let sum = (0..m).fold(Rational::zero(), |acc, j| acc + values[j] * binomial(m + 1, j));
            values.push(-sum / (m as i128 + 1));
        }
        BernoulliTable { values }
    }

    pub fn get(&self, n: usize) -> Rational {
        self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(MAX_BERNOULLI_INDEX))
}

/// The Bernoulli number `b_n` (`b₁ = −1/2`).
pub fn bernoulli(n: usize) -> Rational {
    table().get(n)
}

/// `B_m(x) = Σ_k C(m, k) b_k x^{m−k}`.
pub fn bernoulli_polynomial(m: usize, x: f64) -> f64 {
    // Horner over descending powers of x
    (0..=m).fold(0.0, |acc, k| acc * x + binomial(m, k) as f64 * rational_to_f64(&bernoulli(k)))
}

/// `P_m(x) = B_m({x}) / m!`, period 1.
pub fn periodized_bernoulli(m: usize, x: f64) -> f64 {
    assert!(m >= 1, "periodized Bernoulli functions start at m = 1");
    let frac = x - x.floor();
    bernoulli_polynomial(m, frac) / super::jet::factorial(m)
}
