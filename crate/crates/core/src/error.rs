use thiserror::Error;

use crate::rep_theory::Weight;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight ({}, {}) is not dominant", .0.p, .0.q)]
    NonDominant(Weight),

    #[error("invalid cutoff: {0}")]
    InvalidCutoff(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("{what} did not converge (estimated error {error:e}, requested {requested:e})")]
    NonConvergence { what: &'static str, error: f64, requested: f64 },

    #[error("jet order {requested} exceeds the supported maximum {max}")]
    JetOrder { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
