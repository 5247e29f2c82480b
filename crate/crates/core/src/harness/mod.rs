//! Named, seeded property suites with machine-readable reports.

mod suites;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::stream_rng;
use crate::DEFAULT_TOL;

pub use suites::run_counterexamples;

/// Every registered suite, in execution order.
pub const SUITES: &[&str] = &[
    "lemma21_gram",
    "prop22_vs_oracle",
    "prop24_closure",
    "swap_involution",
    "lemma25_scaling",
    "thm29_projections",
    "prop210_slice",
    "prop211_slice",
    "cor213_closure_projections",
    "prop215_hn",
    "thm32_boundary_transport",
    "thm33_shilov_equivalences",
    "cor34_necessity",
    "cor35_double_cover",
    "mu_sandwich",
    "thm41_equivalence",
    "cor42_etheta",
    "final_classification",
];

const MU_SUITES: &[&str] = &["mu_sandwich", "thm41_equivalence", "cor42_etheta", "final_classification"];

/// The r values used when the counterexamples run without an explicit grid.
pub const DEFAULT_R_GRID: &[f64] = &[0.1, 0.25, 0.5, 0.75, 0.9];

pub fn default_samples(suite: &str) -> usize {
    if MU_SUITES.contains(&suite) {
        100
    } else {
        10_000
    }
}

pub fn default_tol(suite: &str) -> f64 {
    if MU_SUITES.contains(&suite) {
        1e-6
    } else {
        DEFAULT_TOL
    }
}

/// One counterexample to a suite property, with everything needed to
/// reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    pub inputs: String,
    pub observed: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n_samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub failures: Vec<Failure>,
    /// Samples skipped because a margin fell within `10·tol` of a boundary.
    pub excluded: usize,
    #[serde(with = "secs")]
    pub elapsed: Duration,
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

fn quote(v: &str) -> String {
    if v.is_empty() || v.contains(|c: char| c.is_whitespace() || c == '"' || c == '=') {
        format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        v.to_string()
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One `key=value` record for the summary, then one per failure.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite={} status={} n_samples={} seed={} tol={:e} failures={} excluded={} elapsed_s={:.3}",
            self.suite,
            if self.passed() { "pass" } else { "fail" },
            self.n_samples,
            self.seed,
            self.tol,
            self.failures.len(),
            self.excluded,
            self.elapsed.as_secs_f64()
        );
        for f in &self.failures {
            let _ = writeln!(
                out,
                "suite={} seed={} case={} check={} inputs={} observed={} expected={}",
                self.suite,
                self.seed,
                f.case,
                quote(&f.check),
                quote(&f.inputs),
                quote(&f.observed),
                quote(&f.expected)
            );
        }
        out
    }
}

/// Aggregate document over several suite runs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Aggregate {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl Aggregate {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        Self { passed: suites.iter().all(SuiteReport::passed), suites }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Result of one sample.
pub(crate) enum Case {
    Pass,
    Excluded,
    Fail(Vec<Failure>),
}

impl Case {
    pub(crate) fn fail(case: usize, check: &str, inputs: String, observed: impl ToString, expected: impl ToString) -> Self {
        Case::Fail(vec![Failure {
            case,
            check: check.to_string(),
            inputs,
            observed: observed.to_string(),
            expected: expected.to_string(),
        }])
    }
}

pub(crate) struct Ctx {
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Ctx {
    /// Band within which a margin is not trusted for strict comparisons.
    pub fn band(&self) -> f64 {
        10.0 * self.tol
    }

    /// Runs `f` on every sample index with its own generator stream and
    /// collects the outcome.
    pub fn sweep<F>(&self, f: F) -> (Vec<Failure>, usize)
    where
        F: Fn(usize, &mut ChaCha8Rng) -> Case + Sync,
    {
        let cases: Vec<Case> = (0..self.n)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(self.seed, i as u64);
                f(i, &mut rng)
            })
            .collect();
        let mut failures = Vec::new();
        let mut excluded = 0;
        for c in cases {
            match c {
                Case::Pass => {}
                Case::Excluded => excluded += 1,
                Case::Fail(fs) => failures.extend(fs),
            }
        }
        (failures, excluded)
    }
}

/// Runs one registered suite.
pub fn run_suite(name: &str, n_samples: usize, seed: u64, tol: f64) -> Result<SuiteReport> {
    if name == "counterexamples" {
        return run_counterexamples(DEFAULT_R_GRID);
    }
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let start = Instant::now();
    let ctx = Ctx { n: n_samples, seed, tol };
    let (mut failures, excluded) = suites::dispatch(name, &ctx)?;
    failures.sort_by(|a, b| a.case.cmp(&b.case).then_with(|| a.check.cmp(&b.check)));
    Ok(SuiteReport {
        suite: name.to_string(),
        n_samples,
        seed,
        tol,
        failures,
        excluded,
        elapsed: start.elapsed(),
    })
}

/// Runs every suite plus the counterexamples. `n` and `tol` override the
/// per-suite defaults when given.
pub fn run_all(n: Option<usize>, seed: u64, tol: Option<f64>) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::with_capacity(SUITES.len() + 1);
    for name in SUITES {
        let n = n.unwrap_or_else(|| default_samples(name));
        let tol = tol.unwrap_or_else(|| default_tol(name));
        out.push(run_suite(name, n, seed, tol)?);
    }
    out.push(run_counterexamples(DEFAULT_R_GRID)?);
    Ok(out)
}
