use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    Domain {
        op: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// The value lies outside the range covered by a scheme segment.
    SegmentRange { segment: usize, value: f64 },
    /// A scheme descriptor violates its structural invariants.
    InvalidScheme(&'static str),
    /// The operation is not defined for this input kind.
    Unsupported(&'static str),
    /// A vector does not have the required length.
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    /// Inconsistent code or decoder parameters.
    Config(&'static str),
    /// An iterative solver failed to bracket or converge.
    NoConvergence(&'static str),
}

impl Error {
    pub(crate) fn domain(op: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            op,
            value,
            expected,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                op,
                value,
                expected,
            } => write!(f, "{op}: argument {value} out of domain (expected {expected})"),
            Error::SegmentRange { segment, value } => write!(
                f,
                "value {value} is outside the range of approximation segment {segment}"
            ),
            Error::InvalidScheme(msg) => write!(f, "invalid approximation scheme: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Length {
                what,
                expected,
                actual,
            } => write!(f, "{what}: expected length {expected}, got {actual}"),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::NoConvergence(msg) => write!(f, "solver failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
