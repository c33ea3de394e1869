//! Bound quiver algebras over finite fields, their symmetric forms and the
//! generalized Reynolds ideals used to separate derived equivalence classes.

pub mod algebra;
pub mod error;
pub mod families;
pub mod field;
pub mod form;
pub mod kulshammer;
pub mod linalg;
pub mod normalform;
pub mod presentation;
pub mod report;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Scalar};
pub use linalg::{Direction, Matrix, Subspace};
pub use normalform::{build_algebra, complete, AlgebraTable, RewriteSystem};
pub use presentation::{parse_presentation, PathWord, Presentation};
