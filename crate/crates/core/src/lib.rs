//! Exact Frölicher spectral sequences of Lie algebras with invariant complex
//! structure.
//!
//! The input datum is the differential of each invariant (1,0)-form,
//! written in a small structure-equation language (see [`structfile`]).
//! From it the crate builds the bigraded double complex
//! `(Λ^{p,q}𝔤*, ∂, ∂̄)` over the Gaussian rationals and computes every page
//! `E_r^{p,q}` of the spectral sequence of its column filtration, the page
//! differentials `d_r`, zig-zag witnesses, Hodge and Betti numbers.
//!
//! ```
//! use frolicher::{model, spectral};
//!
//! let eq = model::builtin("iwasawa", None).unwrap();
//! let dc = spectral::DoubleComplex::build(&eq).unwrap();
//! let report = spectral::pages_until_degeneration(&dc);
//! assert_eq!(report.degeneration_page, Some(2));
//! ```

pub mod algebra;
pub mod cli;
pub mod exactla;
pub mod model;
pub mod spectral;
pub mod structfile;

pub use algebra::{Form, Monomial, Scalar};
pub use model::StructureEquations;
pub use structfile::{ParseError, ParseErrorKind, SourceSpan};

/// Errors raised by the in-process API. Parse failures have their own
/// [`ParseError`] with a source span.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("forms live on different generator counts ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotASubspace,
    #[error("generator count {0} is outside 1..=64")]
    GeneratorCount(usize),
    #[error("differential of f{index} must be a 2-form")]
    NotATwoForm { index: usize },
    #[error("form is not of a single bidegree")]
    NotHomogeneous,
    #[error("family X_n needs n >= 2, got {0}")]
    FamilyIndex(usize),
    #[error("unknown built-in example '{0}'")]
    UnknownBuiltin(String),
    #[error("structure equations fail validation: {0}")]
    Invalid(String),
    #[error("start form is not ∂̄-closed")]
    NotACocycle,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
