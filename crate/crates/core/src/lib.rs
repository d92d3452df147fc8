//! Quantitative bipolar argumentation graphs (QBAGs), modular gradual
//! semantics, single-argument and set contribution functions, and a lab for
//! checking contribution principles on concrete instances.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is a pure function of
//! immutable values; IO, file formats and the command line live in the
//! companion `qbag-cli` crate.
//!
//! ```
//! use qbag_core::{QbagDraft, SemanticsSpec, evaluate};
//!
//! let g = QbagDraft::new()
//!     .argument("a", 0.5)
//!     .argument("b", 1.0)
//!     .attack("b", "a")
//!     .build()
//!     .unwrap();
//! let sigma = evaluate(&g, &SemanticsSpec::dfquad()).unwrap();
//! assert_eq!(sigma.get("a"), Some(0.0));
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod graph;
pub mod semantics;
pub mod contribution;
pub mod lab;
pub mod review;
pub mod fixtures;
pub mod claims;

pub use error::{Error, Result};
pub use graph::{ArgumentId, Polarity, Qbag, QbagDraft, ValidationReport, Violation, validate};
pub use semantics::{
    AggregationKind, DualAssignment, InfluenceKind, Modular, Preset, SemanticsSpec,
    StrengthAssignment, aggregate, check_stability, evaluate, evaluate_dual, influence,
};
pub use contribution::{
    ContributionConfig, ContributionResult, FunctionId, GradientAggregator, MonteCarlo,
    Partition, Scenario, SetContribution, SetContributor, SetFunction, SingleKind,
    pctrb_shapley, sctrb_gradient, sctrb_intrinsic_removal, sctrb_removal, sctrb_shapley,
    sign_map, single_ctrb,
};
pub use lab::{PrincipleId, PrincipleVerdict, SearchConfig, Status, Witness};

/// Absolute tolerance used by "equals" and sign predicates unless a caller
/// overrides it.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
