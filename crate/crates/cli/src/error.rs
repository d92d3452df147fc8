use thiserror::Error;

/// Failures of a CLI invocation, each with a stable exit code.
///
/// | code | meaning |
/// |------|---------|
/// | 1 | usage, IO, bad sweep/config, claims not reproduced |
/// | 2 | graph parse or validation failure |
/// | 3 | semantics error |
/// | 4 | bad contribution request (unknown id, topic in set, empty set, bad partition) |
/// | 5 | evaluation budget or partition space exceeded |
/// | 6 | violation found under `--expect-satisfied` |
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qbag_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Expectation(String),
    #[error("{0}")]
    NotReproduced(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use qbag_core::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::InvalidGraph(_) | E::StrengthOutOfRange { .. } | E::LengthMismatch { .. } => 2,
                E::InvalidSemantics(_) | E::LinearDomain { .. } => 3,
                E::UnknownArgument(_) | E::TopicInContributor(_) | E::EmptyContributor | E::InvalidPartition(_) => 4,
                E::BudgetExceeded { .. } | E::PartitionSpaceTooLarge { .. } => 5,
                E::InvalidSweep(_) | E::InvalidConfig(_) => 1,
            },
            CliError::Parse { .. } => 2,
            CliError::Io { .. } | CliError::Usage(_) | CliError::NotReproduced(_) => 1,
            CliError::Expectation(_) => 6,
        }
    }

    /// Extra advice printed after the message.
    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(qbag_core::Error::BudgetExceeded { .. }) => {
                Some("hint: pass --monte-carlo N for a sampled estimate, or raise QBAG_EVAL_BUDGET")
            }
            _ => None,
        }
    }
}
