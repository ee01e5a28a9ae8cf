//! Exact-arithmetic toolkit for finite-dimensional unital algebras over Q
//! and F_p (p an odd prime): structure-constant algebras, the Osborn
//! decomposition of quadratic algebras, quadratic-form utilities, the
//! standard constructions (Cayley-Dickson tower, split Hurwitz algebras,
//! counterexample algebras, twisted-field division algebras), and decision
//! procedures for von-Neumann finiteness and reversibility.

pub mod algebra;
pub mod cli;
pub mod construct;
pub mod decide;
pub mod error;
pub mod forms;
pub mod json;
pub mod linalg;
pub mod osborn;
pub mod sample;
pub mod scalar;

pub use algebra::{Algebra, Element, Law, LawVerdict};
pub use error::AlgError;
pub use scalar::{parse_scalar, FieldDesc, Scalar};
