//! Seeded verification suites: each runs a family of generated cases
//! against the results relating the oracles, networks and relations, and
//! reports every counterexample.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

mod generate;
mod suites;

pub use generate::{case_seed, random_dag, random_order, random_proper_subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteName {
    Axioms,
    DsepSoundness,
    Components,
    Relations,
    Clean,
    PtBin,
    GaussianProps,
    Transitivity,
    SimnetEquiv,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::Axioms,
        SuiteName::DsepSoundness,
        SuiteName::Components,
        SuiteName::Relations,
        SuiteName::Clean,
        SuiteName::PtBin,
        SuiteName::GaussianProps,
        SuiteName::Transitivity,
        SuiteName::SimnetEquiv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Axioms => "axioms",
            SuiteName::DsepSoundness => "dsep-soundness",
            SuiteName::Components => "components",
            SuiteName::Relations => "relations",
            SuiteName::Clean => "clean",
            SuiteName::PtBin => "pt-bin",
            SuiteName::GaussianProps => "gaussian-props",
            SuiteName::Transitivity => "transitivity",
            SuiteName::SimnetEquiv => "simnet-equiv",
        }
    }

    /// Default `(n_vars, samples)`.
    pub fn defaults(self) -> (usize, usize) {
        match self {
            SuiteName::Axioms => (4, 200),
            SuiteName::DsepSoundness => (5, 200),
            SuiteName::Components => (4, 100),
            SuiteName::Relations => (4, 100),
            SuiteName::Clean => (5, 500),
            SuiteName::PtBin => (5, 200),
            SuiteName::GaussianProps => (5, 100),
            SuiteName::Transitivity => (5, 200),
            SuiteName::SimnetEquiv => (5, 50),
        }
    }

    /// Inclusive bounds on `n_vars`.
    pub fn n_vars_range(self) -> (usize, usize) {
        match self {
            SuiteName::Axioms => (2, 5),
            SuiteName::DsepSoundness => (2, 6),
            SuiteName::Components => (2, 5),
            SuiteName::Relations => (2, 5),
            SuiteName::Clean => (3, 6),
            SuiteName::PtBin => (3, 6),
            SuiteName::GaussianProps => (2, 6),
            SuiteName::Transitivity => (2, 6),
            SuiteName::SimnetEquiv => (2, 6),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SuiteName::ALL.iter().map(|n| n.as_str()).collect();
                Error::InvalidArgument(format!("unknown suite `{s}` (known: {})", known.join(", ")))
            })
    }
}

impl Serialize for SuiteName {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Scale and seed of a suite run; `None` takes the suite default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n_vars: Option<usize>,
    pub samples: Option<usize>,
}

/// One counterexample.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    /// Stable case identifier; failures are reported sorted by it.
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub n_vars: usize,
    pub samples: usize,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
    /// Left out of the JSON so identical runs give identical reports.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} cases, {} failures, seed {}, n_vars {}, samples {}, {:.2}s)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases_run,
            self.failures.len(),
            self.seed,
            self.n_vars,
            self.samples,
            self.wall_time.as_secs_f64()
        )
    }
}

/// Case and failure accumulator shared by the suites.
pub(crate) struct Tally {
    cases: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Counts one case; `failure` is only evaluated when `ok` is false.
    pub(crate) fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.cases += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

impl Failure {
    pub(crate) fn new(
        case: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        Self {
            case: case.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            actual: actual.into(),
            witness: None,
        }
    }

    pub(crate) fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

/// Runs a suite; deterministic for a fixed configuration apart from `wall_time`.
pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> Result<SuiteReport> {
    let (default_n, default_samples) = name.defaults();
    let n_vars = config.n_vars.unwrap_or(default_n);
    let samples = config.samples.unwrap_or(default_samples);
    let (lo, hi) = name.n_vars_range();
    if !(lo..=hi).contains(&n_vars) {
        return Err(Error::InvalidArgument(format!(
            "suite `{name}` needs {lo} <= n_vars <= {hi}, got {n_vars}"
        )));
    }
    let params = suites::Params {
        seed: config.seed,
        n_vars,
        samples,
    };
    let start = Instant::now();
    let mut tally = Tally::new();
    match name {
        SuiteName::Axioms => suites::axioms(&params, &mut tally)?,
        SuiteName::DsepSoundness => suites::dsep_soundness(&params, &mut tally)?,
        SuiteName::Components => suites::components(&params, &mut tally)?,
        SuiteName::Relations => suites::relations(&params, &mut tally)?,
        SuiteName::Clean => suites::clean(&params, &mut tally)?,
        SuiteName::PtBin => suites::pt_bin(&params, &mut tally)?,
        SuiteName::GaussianProps => suites::gaussian_props(&params, &mut tally)?,
        SuiteName::Transitivity => suites::transitivity(&params, &mut tally)?,
        SuiteName::SimnetEquiv => suites::simnet_equiv(&params, &mut tally)?,
    }
    let mut failures = tally.failures;
    failures.sort();
    Ok(SuiteReport {
        suite: name,
        seed: config.seed,
        n_vars,
        samples,
        cases_run: tally.cases,
        failures,
        wall_time: start.elapsed(),
    })
}
