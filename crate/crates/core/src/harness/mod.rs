//! Theorem-by-theorem verification jobs, reported as JSON with a witness
//! for every failure.

mod enumerate;
mod jobs;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::DEFAULT_COMPLETION_CAP;
use crate::polyring::Field;
use crate::scomplex::SearchBudget;

pub use enumerate::{
    canonical_code, enumerate_forests, enumerate_graphs, enumerate_graphs_where, random_complex, random_graph,
    GraphMode, LABELLED_CAP,
};
pub use jobs::corona_instances;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("{theorem} cannot run on source {origin}")]
    UnsupportedSource { theorem: TheoremId, origin: String },
    #[error("{n} vertices exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("budgets must be positive")]
    ZeroBudget,
}

/// The verifiable statements, named by kind and role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// All maximal minors of the generic matrix form a reduced Gröbner basis.
    ThmGb1,
    /// Closed complexes give a reduced Gröbner basis.
    ThmGb2,
    /// Unit interval complexes give a reduced Gröbner basis.
    ThmGb3,
    /// A Gröbner basis forces poor closedness.
    ThmGb4,
    /// For graphs at `d = 1` the basis is Gröbner exactly when closed.
    ThmGb5,
    /// The column-combination determinant identity.
    LemDet,
    /// A strong interval complex is global interval after sorting intervals.
    LemGlobal,
    /// Unit interval versus proper interval plus the gap conditions.
    LemEquiv,
    ThmProperUnit,
    ThmMonotone,
    CorSort,
    ThmInterval,
    PropCycle,
    PropClawpaw,
    CorCycleForest,
    CorCorona,
    /// The labelled characterisations of proper interval graphs.
    CorEquiv,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::ThmGb1,
        TheoremId::ThmGb2,
        TheoremId::ThmGb3,
        TheoremId::ThmGb4,
        TheoremId::ThmGb5,
        TheoremId::LemDet,
        TheoremId::LemGlobal,
        TheoremId::LemEquiv,
        TheoremId::ThmProperUnit,
        TheoremId::ThmMonotone,
        TheoremId::CorSort,
        TheoremId::ThmInterval,
        TheoremId::PropCycle,
        TheoremId::PropClawpaw,
        TheoremId::CorCycleForest,
        TheoremId::CorCorona,
        TheoremId::CorEquiv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ThmGb1 => "THM-GB-1",
            TheoremId::ThmGb2 => "THM-GB-2",
            TheoremId::ThmGb3 => "THM-GB-3",
            TheoremId::ThmGb4 => "THM-GB-4",
            TheoremId::ThmGb5 => "THM-GB-5",
            TheoremId::LemDet => "LEM-DET",
            TheoremId::LemGlobal => "LEM-GLOBAL",
            TheoremId::LemEquiv => "LEM-EQUIV",
            TheoremId::ThmProperUnit => "THM-PROPER-UNIT",
            TheoremId::ThmMonotone => "THM-MONOTONE",
            TheoremId::CorSort => "COR-SORT",
            TheoremId::ThmInterval => "THM-INTERVAL",
            TheoremId::PropCycle => "PROP-CYCLE",
            TheoremId::PropClawpaw => "PROP-CLAWPAW",
            TheoremId::CorCycleForest => "COR-CYCLEFOREST",
            TheoremId::CorCorona => "COR-CORONA",
            TheoremId::CorEquiv => "COR-EQUIV",
        }
    }

    /// The source used when none is given.
    pub fn default_source(self) -> Source {
        match self {
            TheoremId::ThmGb1 => Source::Sizes(vec![(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]),
            TheoremId::LemDet => Source::Exhaustive { n_max: 6, d: 1..=4 },
            TheoremId::ThmGb2 | TheoremId::ThmGb3 | TheoremId::ThmGb4 => Source::Exhaustive { n_max: 5, d: 1..=2 },
            TheoremId::ThmGb5 => Source::Exhaustive { n_max: 5, d: 1..=1 },
            TheoremId::LemGlobal => Source::Exhaustive { n_max: 5, d: 1..=2 },
            TheoremId::LemEquiv | TheoremId::ThmProperUnit | TheoremId::CorSort => {
                Source::Exhaustive { n_max: 5, d: 1..=2 }
            }
            TheoremId::ThmMonotone => Source::Exhaustive { n_max: 5, d: 1..=3 },
            TheoremId::ThmInterval => Source::Exhaustive { n_max: 6, d: 1..=1 },
            TheoremId::PropCycle | TheoremId::PropClawpaw => Source::Exhaustive { n_max: 6, d: 1..=2 },
            TheoremId::CorCycleForest | TheoremId::CorCorona => Source::Fixtures,
            TheoremId::CorEquiv => Source::Exhaustive { n_max: 5, d: 1..=1 },
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownTheorem(s.to_string()))
    }
}

/// Where the instances of a job come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Named instances built into the library.
    Fixtures,
    /// Every instance up to `n_max` vertices, for each `d` in the range.
    Exhaustive { n_max: usize, d: RangeInclusive<usize> },
    /// `count` seeded random instances with at most `n_max` vertices.
    Random { seed: u64, count: usize, n_max: usize, d: RangeInclusive<usize> },
    /// Generic matrix sizes `m x n`.
    Sizes(Vec<(usize, usize)>),
}

impl Source {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Source::Random { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Fixtures => write!(f, "fixtures"),
            Source::Exhaustive { n_max, d } => write!(f, "exhaustive(n<={}, d={}..{})", n_max, d.start(), d.end()),
            Source::Random { seed, count, n_max, d } => {
                write!(f, "random(seed={}, count={}, n<={}, d={}..{})", seed, count, n_max, d.start(), d.end())
            }
            Source::Sizes(s) => {
                let parts: Vec<String> = s.iter().map(|(m, n)| format!("{m}x{n}")).collect();
                write!(f, "sizes({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub search: SearchBudget,
    /// Bases with more generators than this are skipped and recorded.
    pub gb_cap: usize,
    /// Gröbner checks run over this field; failures found mod p are
    /// confirmed over Q before they are reported.
    pub field: Field,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { search: SearchBudget::default(), gb_cap: DEFAULT_COMPLETION_CAP, field: Field::Rationals }
    }
}

impl Budgets {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.search.max_nodes == 0 || self.gb_cap == 0 {
            return Err(HarnessError::ZeroBudget);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremJob {
    pub theorem: TheoremId,
    pub source: Source,
    pub budgets: Budgets,
}

impl TheoremJob {
    pub fn new(theorem: TheoremId) -> Self {
        TheoremJob { theorem, source: theorem.default_source(), budgets: Budgets::default() }
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn with_budgets(mut self, budgets: Budgets) -> Self {
        self.budgets = budgets;
        self
    }

    pub fn run(&self) -> Result<VerificationReport, HarnessError> {
        self.budgets.validate()?;
        let start = Instant::now();
        let mut report = jobs::dispatch(self)?;
        report.millis = start.elapsed().as_millis() as u64;
        Ok(report)
    }
}

/// One offending instance. Instances are written in the graph or complex
/// file format with `; ` in place of line breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub instance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labelling: Option<String>,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub source: String,
    pub seed: Option<u64>,
    pub checked: u64,
    pub failures: Vec<Finding>,
    /// Instances skipped because a budget ran out.
    #[serde(default)]
    pub inconclusive: Vec<Finding>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn new(theorem: TheoremId, source: &Source) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            source: source.to_string(),
            seed: source.seed(),
            checked: 0,
            failures: Vec::new(),
            inconclusive: Vec::new(),
            notes: Vec::new(),
            millis: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> Status {
        if !self.failures.is_empty() {
            Status::Fail
        } else if !self.inconclusive.is_empty() {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }

    /// Combines two runs of the same theorem; associative, with sources and
    /// notes concatenated in order.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        if self.source != other.source {
            self.source = format!("{} + {}", self.source, other.source);
        }
        self.seed = self.seed.or(other.seed);
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.inconclusive.extend(other.inconclusive);
        self.notes.extend(other.notes);
        self.millis += other.millis;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One line: theorem, verdict, counts.
    pub fn summary(&self) -> String {
        let verdict = match self.status() {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
        };
        format!(
            "{} {}: {} checked, {} failures, {} inconclusive, {} ms",
            self.theorem,
            verdict,
            self.checked,
            self.failures.len(),
            self.inconclusive.len(),
            self.millis
        )
    }
}
