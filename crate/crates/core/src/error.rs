use std::fmt;

use serde::Serialize;

/// A single failed group axiom, with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    NotSquare { row: usize, len: usize, expected: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    /// `e·g != g` or `g·e != g` with `e` the element at index 0.
    IdentityNotAtZero { g: usize, left: usize, right: usize },
    RowNotPermutation { row: usize, value: usize, first_col: usize, second_col: usize },
    ColumnNotPermutation { col: usize, value: usize, first_row: usize, second_row: usize },
    /// `(a·b)·c != a·(b·c)`.
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::NotSquare { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            AxiomViolation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            AxiomViolation::IdentityNotAtZero { g, left, right } => write!(
                f,
                "identity not at index 0: 0*{g} = {left}, {g}*0 = {right}"
            ),
            AxiomViolation::RowNotPermutation { row, value, first_col, second_col } => write!(
                f,
                "row {row} not a permutation: value {value} at columns {first_col} and {second_col}"
            ),
            AxiomViolation::ColumnNotPermutation { col, value, first_row, second_row } => write!(
                f,
                "column {col} not a permutation: value {value} at rows {first_row} and {second_row}"
            ),
            AxiomViolation::NotAssociative { a, b, c } => {
                write!(f, "not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    CapacityExceeded { what: &'static str, requested: usize, cap: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("table is not a group: {}", join_violations(.0))]
    Validation(Vec<AxiomViolation>),
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_violations(v: &[AxiomViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
