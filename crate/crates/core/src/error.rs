use std::fmt;

use thiserror::Error;

/// A single broken arrow-presentation invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// The label occurs on a number of arrows other than two.
    WrongMultiplicity { label: String, count: usize },
    /// The label occurs on arrows but is not in the edge set.
    UnknownLabel { label: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongMultiplicity { label, count } => match count {
                0 => write!(f, "{label} never occurs"),
                1 => write!(f, "{label} occurs once"),
                n => write!(f, "{label} occurs {n} times"),
            },
            Violation::UnknownLabel { label } => write!(f, "{label} is not in the edge set"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arrow presentation: {}", join_violations(.0))]
    InvalidPresentation(Vec<Violation>),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("{what} count {actual} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("ribbon graph is disconnected")]
    Disconnected,
    #[error("not a join decomposition of this graph")]
    InvalidJoin,
    #[error("graph is neither plane nor projective: {0}")]
    OutOfClass(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("net has Euler genus {genus} (orientable: {orientable}); not a diagram in projective space")]
    NotProjective { genus: usize, orientable: bool },
    #[error("operation does not support free loops")]
    FreeLoopsUnsupported,
    #[error("operation does not support split diagrams")]
    SplitDiagram,
    #[error("diagram is not checkerboard colourable")]
    NotColourable,
    #[error("invalid RII site: {0}")]
    InvalidSite(String),
    #[error("malformed Gauss diagram: {0}")]
    MalformedGauss(String),
    #[error("unknown chord {0}")]
    UnknownChord(String),
    #[error("rational expression does not reduce to a Laurent polynomial")]
    NonLaurentResult,
    #[error("parse error: {0}")]
    Parse(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::Disconnected => "Disconnected",
            Error::InvalidJoin => "InvalidJoin",
            Error::OutOfClass(_) => "OutOfClass",
            Error::MalformedDiagram(_) => "MalformedDiagram",
            Error::NotProjective { .. } => "NotProjective",
            Error::FreeLoopsUnsupported => "FreeLoopsUnsupported",
            Error::SplitDiagram => "SplitDiagram",
            Error::NotColourable => "NotColourable",
            Error::InvalidSite(_) => "InvalidSite",
            Error::MalformedGauss(_) => "MalformedGauss",
            Error::UnknownChord(_) => "UnknownChord",
            Error::NonLaurentResult => "NonLaurentResult",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::CapExceeded { what, limit, actual })
    } else {
        Ok(())
    }
}
