use thiserror::Error;

use crate::frame::FrameError;
use crate::space::TopologyViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid frame: {0}")]
    Frame(#[from] FrameError),
    #[error("invalid L-topology: {0}")]
    Topology(#[from] TopologyViolation),
    #[error("{what} exceeds cap: needs {needed}, limit {limit}")]
    CapExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point label `{0}`")]
    DuplicatePoint(String),
    #[error("spaces are over different frames")]
    FrameMismatch,
    #[error("malformed point function: {0}")]
    MalformedMap(String),
    #[error("point function is not surjective: `{0}` has an empty fiber")]
    NotSurjective(String),
    #[error("space is not T0: `{0}` and `{1}` are not separated by any open")]
    NotT0(String, String),
    #[error("L-set is not open in the space")]
    NotOpen,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
