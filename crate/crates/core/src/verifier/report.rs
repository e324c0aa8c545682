//! Report values and their JSON form.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "oddfact-report/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    ArithmeticOnly,
    Skipped(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails => write!(f, "fails"),
            Verdict::ArithmeticOnly => write!(f, "arithmetic-only"),
            Verdict::Skipped(r) => write!(f, "skipped({r})"),
        }
    }
}

/// What the registry expects of a case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    Fails,
    /// Recorded, never counted as a mismatch.
    Open,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Holds => write!(f, "holds"),
            Expectation::Fails => write!(f, "fails"),
            Expectation::Open => write!(f, "open"),
        }
    }
}

/// Wall-clock timings, reported only on request so that reports stay
/// byte-identical across runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Timings {
    pub build_ms: u64,
    pub bsgs_ms: u64,
    pub coset_ms: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
}

impl Timings {
    pub fn to_json(&self) -> Value {
        json!({
            "buildMs": self.build_ms,
            "bsgsMs": self.bsgs_ms,
            "cosetMs": self.coset_ms,
            "cacheHits": self.cache_hits,
            "cacheMisses": self.cache_misses,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub case_id: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub expectation: Expectation,
    /// Whether the verdict and the measured values agree with the registry.
    pub matches: bool,
    /// Set when a group could not be built or certified.
    pub construction_error: bool,
    pub measured: Map<String, Value>,
    pub expected: Map<String, Value>,
    pub notes: Vec<String>,
    pub timings: Timings,
    pub seed: u64,
}

impl Report {
    pub fn new(case_id: impl Into<String>, seed: u64) -> Report {
        Report {
            case_id: case_id.into(),
            params: BTreeMap::new(),
            verdict: Verdict::ArithmeticOnly,
            expectation: Expectation::Open,
            matches: true,
            construction_error: false,
            measured: Map::new(),
            expected: Map::new(),
            notes: Vec::new(),
            timings: Timings::default(),
            seed,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped(_))
    }

    pub fn to_json(&self, with_timings: bool) -> Value {
        let timings = if with_timings {
            self.timings.to_json()
        } else {
            Timings::default().to_json()
        };
        json!({
            "caseId": self.case_id,
            "params": self.params,
            "verdict": self.verdict.to_string(),
            "expectedVerdict": self.expectation.to_string(),
            "matchesExpectation": self.matches,
            "constructionError": self.construction_error,
            "measured": self.measured,
            "expected": self.expected,
            "notes": self.notes,
            "timings": timings,
            "seed": self.seed,
        })
    }
}

/// The whole report file: a schema version followed by the reports in
/// registry order.
pub fn render(reports: &[Report], with_timings: bool) -> String {
    let doc = json!({
        "schemaVersion": SCHEMA_VERSION,
        "reports": reports.iter().map(|r| r.to_json(with_timings)).collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
