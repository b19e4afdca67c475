//! Spectra of the Dirac Laplacians `D_t²` on SU(3) and their spectral action
//! `Tr f(D_t²/Λ²)`.
//!
//! - [`rep_theory`]: SU(3) weights, Weyl dimension, Casimir, and the
//!   decomposition of `V_ρ ⊗ V_(p,q)`, in exact rational arithmetic.
//! - [`spectrum`]: merged spectra of `D_t²` from the eight-row table or
//!   from the representation theory directly.
//! - [`numerics`]: Taylor jets, Bernoulli numbers, test functions, adaptive
//!   quadrature and compensated summation.
//! - [`euler_maclaurin`]: one- and two-variable Euler–Maclaurin summation
//!   with remainders.
//! - [`spectral_action`]: direct summation, the Euler–Maclaurin route, the
//!   four-term expansion, the `t = 1/3` leading term, lattice-cover checks
//!   and residual analysis.
//! - [`cli`]: the `dirac-su3` command line.
//!
//! ```
//! use dirac_su3::numerics::TestFunction;
//! use dirac_su3::spectral_action::direct_action;
//! use dirac_su3::spectrum::FamilyParam;
//!
//! let t = FamilyParam::from_ratio(1, 3);
//! let action = direct_action(&t, 1.0, &TestFunction::ExpDecay, 1e-12).unwrap();
//! assert!((action - 0.5340767).abs() < 1e-6);
//! ```

// `!(x > 0.0)` is the idiom for rejecting NaN along with non-positive input
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod euler_maclaurin;
pub mod numerics;
pub mod rep_theory;
pub mod spectral_action;
pub mod spectrum;
