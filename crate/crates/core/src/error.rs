use alloc::string::String;

use thiserror::Error;

/// Errors raised across the crate.
///
/// Vertex numbers in messages are 1-based, matching the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence is not non-increasing at position {position}")]
    NotSorted { position: usize },
    #[error("degree {degree} exceeds n-1 for n = {n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("cannot subtract {k}: minimum degree is {min_degree}")]
    ReductionTooLarge { k: usize, min_degree: usize },
    #[error("sequence {0} is not graphic")]
    NotGraphic(String),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("color {color} out of range 1..={t}")]
    ColorOutOfRange { color: usize, t: usize },
    #[error("color classes overlap on edge {0} {1}")]
    ClassOverlap(usize, usize),
    #[error("edge {0} {1} is not covered by any class")]
    ClassMissing(usize, usize),
    #[error("parts disagree on vertex count")]
    VertexCountMismatch,
    #[error("invalid exchange: {0}")]
    InvalidExchange(&'static str),
    #[error("exchange hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("condition not met: {0}")]
    ConditionNotMet(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("internal defect: {0}")]
    InternalDefect(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
}

impl Error {
    /// Process exit status for this error class: 1 for unmet conditions,
    /// 3 for internal defects, 2 for everything caused by bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConditionNotMet(_) | Error::Infeasible(_) | Error::NotGraphic(_) => 1,
            Error::InternalDefect(_) => 3,
            _ => 2,
        }
    }
}
