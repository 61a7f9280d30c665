//! Concrete finite groups: symmetric groups of degree at most five, based
//! F2-spaces, direct products, subgroups, quotients and character tables.

pub mod chartab;
pub mod classes;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod recognize;

pub use chartab::CharTable;
pub use classes::Classes;
pub use group::{build_standard, standard, Descriptor, Elem, Group, Hom, Subgroup};
pub use perm::Perm;
