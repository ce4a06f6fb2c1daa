//! Exact-arithmetic workbench for small anti-dendriform and nilpotent
//! associative algebras over the Gaussian rationals.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod identities;
pub mod iso;
pub mod scalar;
pub mod verify;

pub use algebra::{
    AdAlgebra, Algebra, AssocAlgebra, LinearMap, ProductTensor, SubspaceBasis, Vector,
};
pub use error::{Error, Result};
pub use identities::{IdentityId, Violation};
pub use scalar::{Rational, Scalar};
