use thiserror::Error;

/// Violations of the face-gluing invariants shared by triangulations and cubulations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("self-glued slot {cell}:{slot}")]
    SelfGlued { cell: usize, slot: u8 },
    #[error("slot {cell}:{slot} targets cell {target}, but there are only {count} cells")]
    TargetOutOfRange {
        cell: usize,
        slot: u8,
        target: usize,
        count: usize,
    },
    #[error("slot {cell}:{slot} is glued to {target}:{target_slot}, which does not glue back by the inverse map")]
    NotInvolution {
        cell: usize,
        slot: u8,
        target: usize,
        target_slot: u8,
    },
    #[error(
        "bijection {perm} at slot {cell}:{slot} does not carry face {slot} onto face {target_slot}"
    )]
    FaceMismatch {
        cell: usize,
        slot: u8,
        target_slot: u8,
        perm: String,
    },
    #[error("slot {cell}:{slot} is unglued")]
    Unglued { cell: usize, slot: u8 },
    #[error("expected {expected} gluing rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// Text-format errors, with 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Gluing(#[from] GluingError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

/// An operation was called on a complex that does not meet its precondition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("precondition violated: {0}")]
pub struct PreconditionError(pub String);
