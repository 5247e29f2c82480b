use thiserror::Error;

/// Errors raised by the membership, boundary and μ computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two algebraically identical evaluations disagree. Indicates a bug.
    #[error("formula mismatch in {context}: {lhs} vs {rhs}")]
    FormulaMismatch {
        context: &'static str,
        lhs: f64,
        rhs: f64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// Two equivalent membership criteria gave opposite strict answers.
    #[error("criteria disagree for {domain}: {detail}")]
    CriteriaDisagree {
        domain: &'static str,
        detail: String,
    },

    #[error("optimizer did not converge: {0}")]
    OptimizerNoConverge(String),

    #[error("denominator {0:e} is too close to zero")]
    DenominatorNearZero(f64),

    #[error("no element of the structure satisfies the constraint")]
    InfeasibleConstraint,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown structure `{0}`")]
    UnknownStructure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionViolation(msg.into())
}
