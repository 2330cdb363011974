//! Exact scalars and the bigraded exterior algebra Λ^{p,q} 𝔤*.

mod basis;
mod form;
mod monomial;
mod scalar;

pub use basis::FormBasis;
pub use form::Form;
pub use monomial::{monomials_of_bidegree, monomials_of_degree, Monomial, MAX_GENERATORS};
pub use scalar::Scalar;
