//! Principle checkers, partition enumeration, randomized counterexample
//! search and the verdict-matrix runner.
//!
//! Verdicts are about instances: a checker can refute a principle on a graph
//! but can only fail to refute it, hence `SatisfiedOnInstance`.

mod checks;
mod matrix;
mod partitions;
mod search;
pub mod single;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use checks::{
    check, check_consistency, check_contribution_existence, check_counterfactuality, check_directionality,
    check_generalization, check_monotonicity, check_quantitative_contribution_existence, replay,
};
pub use matrix::{CellStatus, MatrixCell, MatrixReport, designated_fixture, expected_satisfied, run_matrix};
pub use partitions::{Partitions, enumerate_partitions};
pub use search::{random_corpus, random_qbag, search_counterexample};

use crate::error::Error;
use crate::graph::{ArgumentId, Qbag};

/// The principles the lab can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrincipleId {
    CtrbGeneralization,
    ContributionExistence,
    QuantitativeContributionExistence,
    WeakQuantitativeContributionExistence,
    Directionality,
    Counterfactuality,
    QuantitativeCounterfactuality,
    Consistency,
    Monotonicity,
    Stability,
}

impl PrincipleId {
    pub const ALL: [PrincipleId; 10] = [
        PrincipleId::CtrbGeneralization,
        PrincipleId::ContributionExistence,
        PrincipleId::QuantitativeContributionExistence,
        PrincipleId::WeakQuantitativeContributionExistence,
        PrincipleId::Directionality,
        PrincipleId::Counterfactuality,
        PrincipleId::QuantitativeCounterfactuality,
        PrincipleId::Consistency,
        PrincipleId::Monotonicity,
        PrincipleId::Stability,
    ];

    /// Rows of the two verdict tables, in table order.
    pub const TABLED: [PrincipleId; 8] = [
        PrincipleId::ContributionExistence,
        PrincipleId::QuantitativeContributionExistence,
        PrincipleId::Directionality,
        PrincipleId::Counterfactuality,
        PrincipleId::QuantitativeCounterfactuality,
        PrincipleId::WeakQuantitativeContributionExistence,
        PrincipleId::Consistency,
        PrincipleId::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PrincipleId::CtrbGeneralization => "generalization",
            PrincipleId::ContributionExistence => "contribution-existence",
            PrincipleId::QuantitativeContributionExistence => "quantitative-contribution-existence",
            PrincipleId::WeakQuantitativeContributionExistence => "weak-quantitative-contribution-existence",
            PrincipleId::Directionality => "directionality",
            PrincipleId::Counterfactuality => "counterfactuality",
            PrincipleId::QuantitativeCounterfactuality => "quantitative-counterfactuality",
            PrincipleId::Consistency => "consistency",
            PrincipleId::Monotonicity => "monotonicity",
            PrincipleId::Stability => "stability",
        }
    }
}

impl fmt::Display for PrincipleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrincipleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        PrincipleId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidConfig(alloc::format!("unknown principle `{s}`")))
    }
}

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    SatisfiedOnInstance,
    ViolatedOnInstance,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::SatisfiedOnInstance => "satisfied-on-instance",
            Status::ViolatedOnInstance => "violated-on-instance",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Everything needed to replay a violation from scratch.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub graph: Qbag,
    pub topic: Option<ArgumentId>,
    /// Contributor sets involved, e.g. `[X]` or `[X, Y]`.
    pub sets: Vec<Vec<ArgumentId>>,
    pub partition: Option<Vec<Vec<ArgumentId>>>,
    /// Named quantities on both sides of the violated relation.
    pub values: Vec<(String, f64)>,
    /// By how much the violated relation misses; exceeds the tolerance.
    pub margin: f64,
    pub note: String,
}

impl Witness {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// A checker's verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipleVerdict {
    pub principle: PrincipleId,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Sets, pairs or partitions examined.
    pub cases_examined: u64,
    pub violations_found: u64,
}

impl PrincipleVerdict {
    pub fn satisfied(principle: PrincipleId, cases_examined: u64) -> Self {
        Self { principle, status: Status::SatisfiedOnInstance, witness: None, cases_examined, violations_found: 0 }
    }

    pub fn inconclusive(principle: PrincipleId, cases_examined: u64) -> Self {
        Self { principle, status: Status::Inconclusive, witness: None, cases_examined, violations_found: 0 }
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::ViolatedOnInstance
    }
}

/// Bounds and tolerance for a single check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    pub tolerance: f64,
    /// Subsets are enumerated exhaustively up to this many candidates.
    pub subset_bound: usize,
    /// Partitions (Bell-number growth) up to this many elements.
    pub partition_bound: usize,
    /// Pairs of subsets up to this many candidates.
    pub pair_bound: usize,
    /// Random subsets / pairs drawn beyond the bounds.
    pub samples: u32,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            tolerance: crate::DEFAULT_TOLERANCE,
            subset_bound: 12,
            partition_bound: 10,
            pair_bound: 7,
            samples: 2_000,
            seed: 0,
        }
    }
}

/// Random search and matrix configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Largest random graph.
    pub max_arguments: usize,
    pub graphs: usize,
    /// Initial strengths are drawn from this grid.
    pub grid: Vec<f64>,
    pub seed: u64,
    /// Per-check budget for exact Shapley sums.
    pub budget: u64,
    pub check: CheckOptions,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_arguments: 6,
            graphs: 200,
            grid: (0..=10).map(|k| f64::from(k) / 10.0).collect(),
            seed: 0,
            budget: 1 << 20,
            check: CheckOptions::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        if self.max_arguments < 1 || self.max_arguments > 26 {
            return bad("max_arguments must be in 1..=26");
        }
        if self.grid.is_empty() || self.grid.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return bad("strength grid must be non-empty and inside [0,1]");
        }
        Ok(())
    }
}

pub(crate) fn ids_of(g: &Qbag, set: &fixedbitset::FixedBitSet) -> Vec<ArgumentId> {
    set.ones().map(|i| g.ids()[i].clone()).collect()
}

pub(crate) fn named(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(n, v)| (String::from(*n), *v)).collect()
}
