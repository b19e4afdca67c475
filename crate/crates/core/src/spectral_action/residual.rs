//! Residuals of the expansion against direct summation.

use serde::{Deserialize, Serialize};

use super::direct::direct_action;
use super::expansion::expansion_action;
use crate::error::{Error, Result};
use crate::numerics::TestFunction;
use crate::spectrum::FamilyParam;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub lambda: f64,
    pub direct: f64,
    pub expansion: f64,
    /// `direct − expansion`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub rows: Vec<ResidualRow>,
    /// Least-squares slope of `ln|residual|` against `ln Λ`; NaN when a
    /// residual is exactly zero.
    pub slope: f64,
}

/// Least-squares slope of `ln|y|` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Direct action, four-term expansion and their difference at each `Λ`.
///
/// `tail_tol` bounds the truncation of each direct sum and `tol` is the
/// quadrature tolerance of the coefficient integrals.
pub fn residual_report(
    param: &FamilyParam,
    f: &TestFunction,
    lambdas: &[f64],
    tail_tol: f64,
    tol: f64,
) -> Result<ResidualReport> {
    if lambdas.len() < 2 {
        return Err(Error::InvalidArgument("residual report needs at least two lambdas".into()));
    }
    if lambdas.windows(2).any(|w| !(w[0] < w[1])) || !(lambdas[0] > 0.0) {
        return Err(Error::InvalidArgument(format!("lambdas must be positive and ascending, got {lambdas:?}")));
    }
    let rows = lambdas
        .iter()
        .map(|&lambda| {
            let direct = direct_action(param, lambda, f, tail_tol)?;
            let expansion = expansion_action(param, lambda, f, tol)?.total;
            Ok(ResidualRow { lambda, direct, expansion, residual: direct - expansion })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.lambda).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.residual).collect();
    Ok(ResidualReport { slope: loglog_slope(&xs, &ys), rows })
}
