use serde::{Deserialize, Serialize};

use super::verify::Check;
use super::Format;
use crate::numerics::TestFunction;
use crate::rep_theory::{format_rational, rational_to_f64};
use crate::spectral_action::{ExpansionBreakdown, ResidualReport, ResidualRow};
use crate::spectrum::{FamilyParam, Spectrum};

// Shortest representation that parses back to the same f64.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn csv(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("records serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLineRecord {
    pub eigenvalue_exact: String,
    pub eigenvalue: f64,
    pub multiplicity: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub t: String,
    pub lambda_max: String,
    pub lines: Vec<SpectrumLineRecord>,
}

impl SpectrumRecord {
    pub fn from_spectrum(spectrum: &Spectrum) -> Self {
        let lines = spectrum
            .iter()
            .map(|l| SpectrumLineRecord {
                eigenvalue_exact: format_rational(&l.eigenvalue),
                eigenvalue: rational_to_f64(&l.eigenvalue),
                multiplicity: l.multiplicity,
            })
            .collect();
        SpectrumRecord { t: format_rational(&spectrum.param.t()), lambda_max: format_rational(&spectrum.cutoff), lines }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv(
                "eigenvalue_exact,eigenvalue,multiplicity",
                self.lines
                    .iter()
                    .map(|l| vec![l.eigenvalue_exact.clone(), num(l.eigenvalue), l.multiplicity.to_string()]),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionRow {
    pub lambda: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub t: String,
    #[serde(rename = "fn")]
    pub function: String,
    pub method: String,
    pub rows: Vec<ActionRow>,
}

impl ActionRecord {
    pub fn new(param: &FamilyParam, f: &TestFunction, method: &str, rows: Vec<ActionRow>) -> Self {
        ActionRecord { t: format_rational(&param.t()), function: f.to_string(), method: method.to_string(), rows }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv("lambda,value", self.rows.iter().map(|r| vec![num(r.lambda), num(r.value)])),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub t: String,
    #[serde(rename = "fn")]
    pub function: String,
    pub rows: Vec<ExpansionBreakdown>,
}

impl ExpansionRecord {
    pub fn new(param: &FamilyParam, f: &TestFunction, rows: Vec<ExpansionBreakdown>) -> Self {
        ExpansionRecord { t: format_rational(&param.t()), function: f.to_string(), rows }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv(
                "lambda,c8,c6,c4,c2,term8,term6,term4,term2,total",
                self.rows.iter().map(|b| {
                    let mut row = vec![num(b.lambda), num(b.c8), num(b.c6), num(b.c4), num(b.c2)];
                    row.extend(b.term_values.iter().map(|&v| num(v)));
                    row.push(num(b.total));
                    row
                }),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub t: String,
    #[serde(rename = "fn")]
    pub function: String,
    pub rows: Vec<ResidualRow>,
    pub slope: f64,
}

impl ResidualRecord {
    pub fn new(param: &FamilyParam, f: &TestFunction, report: ResidualReport) -> Self {
        ResidualRecord {
            t: format_rational(&param.t()),
            function: f.to_string(),
            rows: report.rows,
            slope: report.slope,
        }
    }

    /// CSV repeats the slope on every row.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv(
                "lambda,direct,expansion,residual,slope",
                self.rows
                    .iter()
                    .map(|r| vec![num(r.lambda), num(r.direct), num(r.expansion), num(r.residual), num(self.slope)]),
            ),
        }
    }
}

pub(super) fn checks_json(checks: &[Check]) -> String {
    json(&checks)
}
