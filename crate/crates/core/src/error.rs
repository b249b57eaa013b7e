use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    /// A lattice point of multiplicity >= 4.
    #[error(
        "point of multiplicity {multiplicity} at {point}: the eigenspace formula requires at most triple points"
    )]
    HypothesisViolation { point: String, multiplicity: usize },

    #[error("not a reduced pencil: {0}")]
    NotAPencil(String),

    #[error("degenerate pencil: {0}")]
    DegeneratePencil(String),

    /// `line` is 1-based; 0 when the input is not a file.
    #[error("parse error{}: {msg}", at_line(*line))]
    Parse { line: usize, msg: String },

    #[error("parameter rejected ({check})")]
    ParameterRejected { check: String },
}

fn at_line(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" at line {line}")
    }
}
