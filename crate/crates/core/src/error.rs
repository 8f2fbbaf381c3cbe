use thiserror::Error;

use crate::partition::{GrassCtx, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: rows must be non-negative and weakly decreasing")]
    InvalidPartition(Vec<i64>),

    #[error("cannot parse partition from {0:?}")]
    PartitionParse(String),

    #[error("invalid Grassmannian Gr({m},{n}): need 0 < m < n")]
    InvalidContext { m: usize, n: usize },

    #[error("partition {partition} does not fit the {rows}x{cols} rectangle")]
    OutOfRectangle {
        partition: Partition,
        rows: usize,
        cols: usize,
    },

    #[error("operands live in different rings: {0} vs {1}")]
    ContextMismatch(GrassCtx, GrassCtx),

    #[error("special class index {index} outside 0..={max}")]
    SpecialIndex { index: i64, max: usize },

    #[error("{outer} does not contain {inner}")]
    NotContained { inner: Partition, outer: Partition },

    #[error("polynomial {0} is not divisible by 1 - q")]
    NotDivisible(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("grading violation: |nu| + n*d = {lhs} but |lambda| + |mu| = {rhs}")]
    Grading { lhs: usize, rhs: usize },

    #[error("input is not a finite combination of Grothendieck polynomials: {0}")]
    NonSymmetric(String),

    #[error("malformed element: {0}")]
    Malformed(String),
}

impl Error {
    /// True for failures that can only come from a defect in the engine
    /// itself rather than from bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NotDivisible(_) | Error::NonSymmetric(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
