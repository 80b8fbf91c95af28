use thiserror::Error;

use std::fmt;

use crate::certify::minimize::PartialMin1d;
use crate::certify::PartialCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("interval overflow: bound is not finite")]
    Overflow,

    #[error("invalid apex pair: {0}")]
    InvalidApexPair(String),

    #[error("polytope is not of octahedral type: {0}")]
    NotOctahedralType(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(Box<Partial>),

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

/// Progress of a search that ran out of budget.
#[derive(Clone, Debug)]
pub enum Partial {
    Search(PartialCertificate),
    Bisection(PartialMin1d),
}

impl fmt::Display for Partial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Partial::Search(p) => write!(
                f,
                "{} after {} boxes, {} unresolved, min unresolved lower bound {:?}",
                p.reason,
                p.certificate.stats.boxes,
                p.unresolved.len(),
                p.min_unresolved_bound
            ),
            Partial::Bisection(p) => write!(
                f,
                "{} evaluations, argmin in {}, min in [{}, {}]",
                p.evaluations, p.argmin, p.min_lower, p.min_upper
            ),
        }
    }
}
