use std::collections::BTreeMap;
use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::Result;
use crate::euler_maclaurin::{
    em_sum_1d, nn_sum_via_em, CutoffOfQuadratic1d, CutoffOfQuadratic2d, EmConfig, Summand1d, Summand2d,
};
use crate::numerics::{HalfLine, NeumaierSum, TestFunction, DEFAULT_TOL_2D};
use crate::rep_theory::{casimir_scalar, casimir_via_pairing, clebsch_gordan_rho, weyl_dim, Rational, Weight};
use crate::spectral_action::{
    direct_action, em_action, expansion_action, poisson_leading, residual_report, verify_cover,
};
use crate::spectrum::{
    build_spectrum, lines_from_principles, lines_from_table, spectrum_third, FamilyParam, Route, SpectralLine,
};

const DEFAULT_MAX_WEIGHT: i64 = 40;
const DEFAULT_COVER_WINDOW: i64 = 50;
const TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Cg,
    Spectrum,
    Em,
    Poisson,
    Cover,
    Expansion,
}

/// Outcome of one verified property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} [{}] {}: {}", self.suite, self.name, self.detail)
    }
}

fn check(suite: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite, name: name.into(), passed, detail: detail.into() }
}

// A numerical error turns into a failed check carrying the message.
fn guarded(suite: &'static str, name: &str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((passed, detail)) => check(suite, name, passed, detail),
        Err(e) => check(suite, name, false, format!("error: {e}")),
    }
}

/// Runs `suite`. `max_weight` bounds the weights of the cg and spectrum
/// suites and is the window half-width for cover.
pub fn run_suite(suite: Suite, max_weight: Option<i64>) -> Vec<Check> {
    let n = max_weight.unwrap_or(DEFAULT_MAX_WEIGHT);
    match suite {
        Suite::All => [Suite::Cg, Suite::Spectrum, Suite::Em, Suite::Poisson, Suite::Cover, Suite::Expansion]
            .into_iter()
            .flat_map(|s| run_suite(s, max_weight))
            .collect(),
        Suite::Cg => cg_suite(n),
        Suite::Spectrum => spectrum_suite(n),
        Suite::Em => em_suite(),
        Suite::Poisson => poisson_suite(),
        Suite::Cover => cover_suite(max_weight.unwrap_or(DEFAULT_COVER_WINDOW)),
        Suite::Expansion => expansion_suite(),
    }
}

fn cg_suite(n: i64) -> Vec<Check> {
    let dims = guarded("cg", "dimension identity", || {
        let mut bad = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                let w = Weight::new(p, q);
                let total: u128 = clebsch_gordan_rho(w)?.into_iter().map(weyl_dim).sum::<Result<u128>>()?;
                if total != 8 * weyl_dim(w)? {
                    bad.push((p, q));
                }
            }
        }
        let count = (n + 1) * (n + 1);
        Ok((
            bad.is_empty(),
            format!("sum of summand dims = 8 dim(p,q) on {count} weights, p,q <= {n}; mismatches {bad:?}"),
        ))
    });
    let casimir = guarded("cg", "casimir closed form", || {
        let mut bad = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                let w = Weight::new(p, q);
                if casimir_scalar(w)? != casimir_via_pairing(w)? {
                    bad.push((p, q));
                }
            }
        }
        Ok((bad.is_empty(), format!("closed form = (w, w + 2rho) for p,q <= {n}; mismatches {bad:?}")))
    });
    vec![dims, casimir]
}

fn multiset(lines: &[SpectralLine]) -> BTreeMap<(Rational, u128), usize> {
    let mut m = BTreeMap::new();
    for l in lines {
        *m.entry((l.eigenvalue, l.multiplicity)).or_insert(0) += 1;
    }
    m
}

const ROUTE_TS: [(i128, i128); 7] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1), (7, 5)];

fn spectrum_suite(n: i64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (num, den) in ROUTE_TS {
        let t = FamilyParam::from_ratio(num, den);
        let mut bad = Vec::new();
        for p in 0..=n {
            for q in 0..=n {
                if multiset(&lines_from_table(&t, p, q)) != multiset(&lines_from_principles(&t, p, q)) {
                    bad.push((p, q));
                }
            }
        }
        checks.push(check(
            "spectrum",
            format!("route equivalence t={num}/{den}"),
            bad.is_empty(),
            format!("table = principles on p,q <= {n}; mismatches {bad:?}"),
        ));
    }
    checks.push(guarded("spectrum", "t=1/3 collapse", || {
        let cutoff = Rational::from(2000);
        let table = build_spectrum(&FamilyParam::from_ratio(1, 3), cutoff, Route::Table)?;
        let closed = spectrum_third(cutoff)?;
        Ok((table.lines == closed.lines, format!("{} lines up to 2000, table vs 2p²q²(p+q)²", closed.len())))
    }));
    for (num, den) in [(0, 1), (1, 4), (1, 3)] {
        let name = format!("mirror t={num}/{den}");
        checks.push(guarded("spectrum", &name, || {
            let t = FamilyParam::from_ratio(num, den);
            let cutoff = Rational::from(500);
            let a = build_spectrum(&t, cutoff, Route::Table)?;
            let b = build_spectrum(&t.mirrored(), cutoff, Route::Table)?;
            Ok((a.lines == b.lines, format!("spectra of t and 1-t up to 500 ({} lines)", a.len())))
        }));
    }
    checks
}

fn brute_1d<H: Summand1d>(h: &H) -> f64 {
    let top = match h.range() {
        HalfLine::UpTo(b) => b.floor() as usize,
        HalfLine::Unbounded { scale } => (80.0 * scale) as usize + 40,
    };
    (0..=top).map(|n| h.eval(n as f64)).collect::<NeumaierSum>().value()
}

fn brute_2d<G: Summand2d>(g: &G, top: usize) -> f64 {
    let mut sum = NeumaierSum::new();
    for p in 0..=top {
        for q in 0..=top {
            sum.add(g.eval(p as f64, q as f64));
        }
    }
    sum.value()
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn em_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let plateau = TestFunction::Plateau { a: 1.0, b: 2.0 };
    let one_d: [(&str, CutoffOfQuadratic1d); 3] = [
        ("exp(-x)", CutoffOfQuadratic1d { f: TestFunction::ExpDecay, coeffs: [0.0, 1.0, 0.0], scale: 1.0 }),
        ("exp(-x^2)", CutoffOfQuadratic1d { f: TestFunction::ExpDecay, coeffs: [1.0, 0.0, 0.0], scale: 1.0 }),
        ("plateau(x^2/30)", CutoffOfQuadratic1d { f: plateau, coeffs: [1.0, 0.0, 0.0], scale: 30.0 }),
    ];
    for (label, h) in one_d {
        checks.push(guarded("em", &format!("1D identity {label}"), || {
            let brute = brute_1d(&h);
            let mut worst: f64 = 0.0;
            for m in [4, 6, 8] {
                let sum = em_sum_1d(&h, &EmConfig::new(m)?)?;
                worst = worst.max(relative(sum.total(), brute));
            }
            Ok((worst <= 1e-9, format!("worst relative error over m=4,6,8: {worst:e} (bound 1e-9)")))
        }));
    }
    let two_d: [(&str, CutoffOfQuadratic2d); 2] = [
        (
            "exp(-p-q)",
            CutoffOfQuadratic2d { f: TestFunction::ExpDecay, coeffs: [0.0, 0.0, 0.0, 1.0, 1.0, 0.0], scale: 1.0 },
        ),
        ("exp(-(p²+q²+pq))", CutoffOfQuadratic2d::of_form(TestFunction::ExpDecay, 1.0)),
    ];
    for (label, g) in two_d {
        checks.push(guarded("em", &format!("2D compensated sum {label}"), || {
            let nn = nn_sum_via_em(&g, &EmConfig::new(8)?)?;
            let brute = brute_2d(&g, 120);
            let rel = relative(nn.total, brute);
            Ok((rel <= 1e-6, format!("relative error {rel:e} at m=8 (bound 1e-6)")))
        }));
    }
    for (num, den, bound) in [(1, 2, 1e-4), (1, 3, 1e-6)] {
        checks.push(guarded("em", &format!("em action vs direct t={num}/{den}"), || {
            let t = FamilyParam::from_ratio(num, den);
            let f = TestFunction::ExpDecay;
            let em = em_action(&t, 10.0, &f, &EmConfig::for_action(8)?)?;
            let direct = direct_action(&t, 10.0, &f, TAIL_TOL)?;
            let rel = relative(em, direct);
            Ok((rel <= bound, format!("relative error {rel:e} at Λ=10, exp, m=8 (bound {bound:e})")))
        }));
    }
    checks
}

fn poisson_suite() -> Vec<Check> {
    let third = FamilyParam::from_ratio(1, 3);
    let mut checks = vec![guarded("poisson", "leading term at Λ=20", || {
        let f = TestFunction::ExpDecay;
        let direct = direct_action(&third, 20.0, &f, TAIL_TOL)?;
        let leading = poisson_leading(20.0, &f, DEFAULT_TOL_2D)?;
        let rel = relative(leading, direct);
        Ok((rel <= 1e-6, format!("|direct - Poisson| / direct = {rel:e} at t=1/3, exp (bound 1e-6)")))
    })];
    for f in [TestFunction::ExpDecay, TestFunction::Plateau { a: 1.0, b: 2.0 }] {
        checks.push(guarded("poisson", &format!("sixfold cover identity {f}"), || {
            let leading = poisson_leading(7.0, &f, DEFAULT_TOL_2D)?;
            let expansion = expansion_action(&third, 7.0, &f, DEFAULT_TOL_2D)?.total;
            let rel = relative(leading, expansion);
            Ok((
                rel <= 1e-8 && leading > 0.0,
                format!("Poisson leading {leading:e} vs expansion at t=1/3, relative {rel:e}"),
            ))
        }));
    }
    checks
}

fn cover_suite(n: i64) -> Vec<Check> {
    verify_cover(n)
        .checks
        .into_iter()
        .map(|c| {
            let detail = if c.passed {
                format!("window [-{n},{n}]²")
            } else {
                format!("window [-{n},{n}]², counterexamples {:?}", c.counterexamples)
            };
            check("cover", c.name, c.passed, detail)
        })
        .collect()
}

fn expansion_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    for (num, den) in [(1, 3), (2, 3)] {
        checks.push(guarded("expansion", &format!("lower terms vanish at t={num}/{den}"), || {
            let t = FamilyParam::from_ratio(num, den);
            let mut zero = true;
            for f in [TestFunction::ExpDecay, TestFunction::Plateau { a: 1.0, b: 2.0 }] {
                let b = expansion_action(&t, 5.0, &f, DEFAULT_TOL_2D)?;
                zero &= b.term_values[1..].iter().all(|&v| v == 0.0) && [b.c6, b.c4, b.c2].iter().all(|&c| c == 0.0);
            }
            Ok((zero, "Λ⁶, Λ⁴, Λ² terms exactly 0 for exp and plateau:1,2".to_string()))
        }));
    }
    let lambdas = [10.0, 14.0, 20.0, 28.0, 40.0];
    let report = residual_report(
        &FamilyParam::from_ratio(1, 2),
        &TestFunction::Plateau { a: 1.0, b: 2.0 },
        &lambdas,
        TAIL_TOL,
        DEFAULT_TOL_2D,
    );
    match report {
        Ok(report) => {
            let residuals: Vec<String> = report.rows.iter().map(|r| format!("{:.3e}", r.residual)).collect();
            let detail = format!("slope {:.3} over Λ {lambdas:?}, residuals [{}]", report.slope, residuals.join(", "));
            checks.push(check(
                "expansion",
                "residual order t=1/2 plateau:1,2 (slope <= -0.9)",
                report.slope <= -0.9,
                detail.clone(),
            ));
            checks.push(check(
                "expansion",
                "flat-at-origin order t=1/2 plateau:1,2 (slope <= -3)",
                report.slope <= -3.0,
                detail,
            ));
        }
        Err(e) => checks.push(check("expansion", "residual order t=1/2 plateau:1,2", false, format!("error: {e}"))),
    }
    checks
}
