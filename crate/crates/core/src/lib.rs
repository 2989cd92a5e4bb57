//! Exact-arithmetic workbench for complexified supersymmetry algebras.
//!
//! Everything is computed over the Gaussian rationals — no floats, no
//! tolerances. The crate builds super-Lie algebras in dimensions 2, 4, 8
//! and 10 from explicit spinor models, classifies square-zero supercharges,
//! computes twisted cohomology, realizes residual algebras as super vector
//! fields, and tabulates linearized field content on twistor space. Each
//! construction carries its own verification routine (Jacobi sweeps,
//! equivariance checks, pairing identities) so results are certified by
//! brute-force exact linear algebra rather than trusted tables.

pub mod clifford;
pub mod matrix;
pub mod par;
pub mod scalar;
pub mod subspace;
pub mod superlie;
pub mod superspace;
pub mod twist;
pub mod twistor;

pub use matrix::ExactMatrix;
pub use scalar::{GaussianRational, Scalar};
pub use subspace::{QuotientSpace, Subspace};

/// Crate-wide error type. Mathematical precondition failures (degenerate
/// forms, vectors outside a span, non-square-zero supercharges) are errors;
/// programming mistakes (shape mismatches in internal code) are panics.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("matrix is singular")]
    Singular,
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("subset is not a subspace of the claimed total space")]
    NotASubspace,
    #[error("supercharge does not square to zero")]
    NotSquareZero,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure validation failed: {0}")]
    Structure(String),
}
