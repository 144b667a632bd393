use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// Variants fall into three families, which the command-line front end maps
/// onto distinct exit codes: bad input ([`Error::is_parameter_error`]),
/// exhausted search budgets ([`Error::is_resource_error`]), and failed
/// post-construction verification (anything else).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidVertex { vertex: usize, n: usize },
    RepeatedVertex { vertex: usize },
    PairCapExceeded { pair: (usize, usize), cap: usize },
    PointCountMismatch { left: usize, right: usize },
    NotABijection,
    /// Parameters outside an operation's domain; the message names the
    /// violated condition.
    InvalidParameter(String),
    /// A search ran out of its node or restart budget without an answer.
    BudgetExceeded { what: &'static str, budget: u64 },
    /// A degree-constrained subgraph could not be extracted.
    NoFactor { index: usize },
    /// A construction produced an object that failed its own checks.
    VerificationFailed(String),
}

impl Error {
    pub fn is_parameter_error(&self) -> bool {
        !matches!(
            self,
            Error::BudgetExceeded { .. } | Error::NoFactor { .. } | Error::VerificationFailed(_)
        )
    }

    pub fn is_resource_error(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn verify(msg: impl Into<String>) -> Self {
        Error::VerificationFailed(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidVertex { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            Error::RepeatedVertex { vertex } => write!(f, "vertex {vertex} repeated"),
            Error::PairCapExceeded { pair, cap } => {
                write!(f, "pair {{{}, {}}} covered more than {cap} times", pair.0, pair.1)
            }
            Error::PointCountMismatch { left, right } => {
                write!(f, "point counts differ: {left} vs {right}")
            }
            Error::NotABijection => f.write_str("mapping is not a bijection"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameters: {msg}"),
            Error::BudgetExceeded { what, budget } => {
                write!(f, "{what}: budget of {budget} exhausted")
            }
            Error::NoFactor { index } => write!(f, "no degree-exact factor for index {index}"),
            Error::VerificationFailed(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
