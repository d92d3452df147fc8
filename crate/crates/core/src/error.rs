use alloc::string::String;

use crate::graph::ValidationReport;

/// Everything that can go wrong in the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("initial strength {value} for `{id}` is outside [0,1]")]
    StrengthOutOfRange { id: String, value: f64 },
    #[error("aggregate {aggregate} is outside the linear influence domain [-{k}, {k}]")]
    LinearDomain { aggregate: f64, k: f64 },
    #[error("invalid semantics: {0}")]
    InvalidSemantics(String),
    #[error("length mismatch: {relations} relation entries vs {strengths} strengths")]
    LengthMismatch { relations: usize, strengths: usize },
    #[error("topic `{0}` is a member of the contributor set")]
    TopicInContributor(String),
    #[error("gradient aggregation over an empty contributor set is undefined")]
    EmptyContributor,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(
        "exact evaluation needs up to {required} strength evaluations but the budget is {budget}; \
         enable Monte-Carlo sampling or raise the budget"
    )]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("partition enumeration over {size} elements exceeds the bound of {bound}")]
    PartitionSpaceTooLarge { size: usize, bound: usize },
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = core::result::Result<T, Error>;
