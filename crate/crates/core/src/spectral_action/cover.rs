//! The six unimodular maps whose images of ℕ² cover ℤ².

use std::fmt;

use serde::Serialize;

/// An integer linear map `(p, q) ↦ (m₀₀p + m₀₁q, m₁₀p + m₁₁q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverTransform {
    pub matrix: [[i64; 2]; 2],
}

/// `T₁ … T₆`.
pub const COVER_TRANSFORMS: [CoverTransform; 6] = [
    CoverTransform { matrix: [[1, 0], [0, 1]] },
    CoverTransform { matrix: [[-1, 0], [1, 1]] },
    CoverTransform { matrix: [[-1, -1], [1, 0]] },
    CoverTransform { matrix: [[-1, 0], [0, -1]] },
    CoverTransform { matrix: [[1, 0], [-1, -1]] },
    CoverTransform { matrix: [[1, 1], [-1, 0]] },
];

impl CoverTransform {
    pub fn apply(&self, p: i64, q: i64) -> (i64, i64) {
        let [[a, b], [c, d]] = self.matrix;
        (a * p + b * q, c * p + d * q)
    }

    pub fn determinant(&self) -> i64 {
        let [[a, b], [c, d]] = self.matrix;
        a * d - b * c
    }

    /// Integer inverse; `None` unless `|det| = 1`.
    pub fn inverse(&self) -> Option<CoverTransform> {
        let det = self.determinant();
        if det.abs() != 1 {
            return None;
        }
        let [[a, b], [c, d]] = self.matrix;
        Some(CoverTransform { matrix: [[d * det, -b * det], [-c * det, a * det]] })
    }
}

fn form(p: i64, q: i64) -> i64 {
    p * p + q * q + p * q
}

fn third_multiplicity(p: i64, q: i64) -> i64 {
    let s = p + q;
    2 * p * p * q * q * s * s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Up to a few offending lattice points or transform indices.
    pub counterexamples: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverReport {
    pub window: i64,
    pub checks: Vec<CoverCheck>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if !c.passed {
                write!(f, " {:?}", c.counterexamples)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

const MAX_COUNTEREXAMPLES: usize = 8;

struct Collector {
    name: &'static str,
    bad: Vec<(i64, i64)>,
    count: usize,
}

impl Collector {
    fn new(name: &'static str) -> Self {
        Collector { name, bad: Vec::new(), count: 0 }
    }
    fn fail(&mut self, point: (i64, i64)) {
        self.count += 1;
        if self.bad.len() < MAX_COUNTEREXAMPLES {
            self.bad.push(point);
        }
    }
    fn finish(self) -> CoverCheck {
        CoverCheck { name: self.name, passed: self.count == 0, counterexamples: self.bad }
    }
}

/// Brute-force check of the cover on the window `[−N, N]²`.
///
/// Checks that each map is unimodular and injective on ℕ², that every window
/// point has a preimage in ℕ² under some map, that points reached more than
/// once come only from the axes (where `pq(p+q) = 0`), and that `Q` and
/// `2p²q²(p+q)²` are invariant.
pub fn verify_cover(n: i64) -> CoverReport {
    assert!(n >= 1, "window size must be positive");
    let mut unimodular = Collector::new("unimodular");
    let mut injective = Collector::new("injective on N^2");
    let mut covers = Collector::new("images cover the window");
    let mut overlaps = Collector::new("overlaps only on axis images");
    let mut form_invariant = Collector::new("quadratic form invariant");
    let mut mult_invariant = Collector::new("t=1/3 multiplicity invariant");

    for (i, t) in COVER_TRANSFORMS.iter().enumerate() {
        if t.determinant().abs() != 1 {
            unimodular.fail((i as i64 + 1, t.determinant()));
        }
    }
    let inverses: Vec<Option<CoverTransform>> = COVER_TRANSFORMS.iter().map(CoverTransform::inverse).collect();

    // injectivity on the preimage box reaching the window
    let reach = 2 * n;
    for (i, t) in COVER_TRANSFORMS.iter().enumerate() {
        let mut seen = std::collections::HashSet::new();
        for p in 0..=reach {
            for q in 0..=reach {
                if !seen.insert(t.apply(p, q)) {
                    injective.fail((i as i64 + 1, 0));
                }
                let (u, v) = t.apply(p, q);
                if form(u, v) != form(p, q) {
                    form_invariant.fail((p, q));
                }
                if third_multiplicity(u, v) != third_multiplicity(p, q) {
                    mult_invariant.fail((p, q));
                }
            }
        }
    }

    for x in -n..=n {
        for y in -n..=n {
            let preimages: Vec<(i64, i64)> =
                inverses.iter().flatten().map(|inv| inv.apply(x, y)).filter(|&(p, q)| p >= 0 && q >= 0).collect();
            if preimages.is_empty() {
                covers.fail((x, y));
            }
            if preimages.len() > 1 && preimages.iter().any(|&(p, q)| p * q * (p + q) != 0) {
                overlaps.fail((x, y));
            }
        }
    }

    CoverReport {
        window: n,
        checks: vec![
            unimodular.finish(),
            injective.finish(),
            covers.finish(),
            overlaps.finish(),
            form_invariant.finish(),
            mult_invariant.finish(),
        ],
    }
}
