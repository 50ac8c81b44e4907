//! Sparse multivariate polynomials over the rationals on weighted-graded rings.

mod map;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use map::{substitute, RingMap};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{GradedRing, Variable};

pub(crate) use monomial::grevlex_cmp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero denominator at offset {pos}")]
    ZeroDenominator { pos: usize },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` must have a positive degree")]
    InvalidDegree(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("division is not exact")]
    InexactDivision,
}
