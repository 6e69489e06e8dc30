//! Exact arithmetic: cyclotomic numbers, quadratic extensions, binary forms,
//! matrices and pencil minors, and numeric-to-exact root reconstruction.

pub mod cyclo;
pub mod form;
mod literal;
pub mod matrix;
pub mod point;
pub mod poly;
pub mod quadext;
pub mod recognize;
pub mod scalar;

pub use cyclo::{Cyclo, DEFAULT_CONDUCTOR_CAP};
pub use form::{form_multiplicity, BivariateForm};
pub use matrix::{pencil_minor, Matrix, SymMatrix};
pub use point::{ProjectivePoint, P1};
pub use poly::Poly;
pub use quadext::QuadExt;
pub use recognize::{recognize_algebraic, DEFAULT_DENOM_BOUND};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("arithmetic error: division by zero")]
    DivisionByZero,
    #[error("unsupported field: conductor {conductor} exceeds the cap {cap}")]
    UnsupportedField { conductor: u64, cap: u32 },
    #[error("conductor {from} does not divide {to}")]
    NotSubfield { from: u32, to: u32 },
    #[error("cannot parse {input:?} at byte {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("radicands differ: sqrt({left}) vs sqrt({right})")]
    RadicandMismatch { left: String, right: String },
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("projective point with all coordinates zero")]
    ZeroPoint,
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
}
