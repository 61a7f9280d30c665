//! Interval combinatorics in the symplectic F2-space `V` of dimension `D`
//! and the basis of `C[M(V_n)]` it produces.

pub mod basis;
pub mod bijections;
pub mod families;
pub mod interval;
pub mod space;
pub mod subspace;
pub mod zdecomp;

pub use basis::{basis_beta_classical, indicator, ClassicalBetaElement};
pub use bijections::{alpha, all_sweeps, interval_set_of, theta_217, tilde_ff_triples, FTriple, Sweep};
pub use families::{c_subspaces, interval_family, subspace_family, tilde_c_pairs, Caps, Family, LPair};
pub use interval::{xi_embed, Interval, IntervalSet};
pub use subspace::F2Subspace;
pub use zdecomp::{b_of_k, lambda_inverse, quotient_symplectic_basis, z_of, QuotientBasis, ZDecomposition};
