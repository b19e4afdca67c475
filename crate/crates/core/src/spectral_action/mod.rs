//! The spectral action `Tr f(D_t²/Λ²)` by direct summation, by
//! Euler–Maclaurin, and through its large-Λ expansion.

pub mod cover;
pub mod direct;
pub mod em;
pub mod expansion;
pub mod residual;

pub use cover::{verify_cover, CoverCheck, CoverReport, CoverTransform, COVER_TRANSFORMS};
pub use direct::{direct_action, direct_action_detailed, DirectAction};
pub use em::{em_action, em_row, RowSummand};
pub use expansion::{expansion_action, poisson_leading, CoefficientIntegrals, ExpansionBreakdown};
pub use residual::{loglog_slope, residual_report, ResidualReport, ResidualRow};
