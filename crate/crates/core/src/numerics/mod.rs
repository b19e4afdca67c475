//! Numerical building blocks: Bernoulli numbers, Taylor jets, cutoff
//! functions, compensated sums and adaptive quadrature.

pub mod bernoulli;
pub mod jet;
pub mod quadrature;
pub mod summation;
pub mod test_function;

pub use bernoulli::{bernoulli, bernoulli_polynomial, periodized_bernoulli, BernoulliTable};
pub use jet::{Jet, Scalar, MAX_JET_ORDER};
pub use quadrature::{
    integrate, integrate_half_line, integrate_quadrant, quad_quadrant_2d, quad_semi_infinite_1d, Estimate, HalfLine,
    QuadConfig, DEFAULT_TOL_1D, DEFAULT_TOL_2D,
};
pub use summation::{neumaier_sum, NeumaierSum};
pub use test_function::TestFunction;
