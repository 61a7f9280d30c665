//! Exact construction and verification of bipositive unitriangular bases
//! of `C[M(G)]` for small finite groups and based F2-spaces.

pub mod classical;
pub mod error;
pub mod exceptional;
pub mod groups;
pub mod mspace;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
pub use scalars::{Cyclo, Rational};
