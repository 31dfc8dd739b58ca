use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the toric pipeline.
///
/// Variants split into two families: malformed input (`Shape`, `Parse`,
/// `InvalidSpec`) and hypothesis rejections (`NotPointed`, `NotProjective`,
/// `HypothesisFailed`, `Infeasible`). The CLI maps the second family to exit
/// code 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("kernel is not pointed: nonnegative kernel vector {witness:?}")]
    NotPointed { witness: Vec<BigInt> },

    #[error("configuration is not projective: all-ones vector is not in the row span")]
    NotProjective,

    #[error("vector is not in the kernel of the bouquet matrix")]
    NotInKernel,

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("enumeration infeasible: {0}")]
    Infeasible(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl ToricError {
    /// True for errors that reject an input on mathematical grounds rather
    /// than because it is malformed.
    pub fn is_hypothesis_rejection(&self) -> bool {
        matches!(
            self,
            ToricError::NotPointed { .. }
                | ToricError::NotProjective
                | ToricError::NotInKernel
                | ToricError::HypothesisFailed(_)
                | ToricError::Infeasible(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, ToricError>;
