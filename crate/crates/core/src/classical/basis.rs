//! `beta(V_n)` as indicator functions of the members of `𝔽(V)`, `D = 2n`.

use std::sync::Arc;

use crate::classical::bijections::{theta_217, tilde_ff_triples, FTriple};
use crate::classical::families::{check_delta, Caps};
use crate::classical::space::to_pair;
use crate::classical::subspace::F2Subspace;
use crate::error::Result;
use crate::groups::Descriptor;
use crate::mspace::{MSpace, MVector};
use crate::scalars::Cyclo;

/// The function `V -> C` equal to `1` on `E`, as a vector of
/// `C[M(V_n)]` through the `delta` identification.
pub fn indicator(space: &Arc<MSpace>, e: &F2Subspace, d: usize, delta: u8) -> Result<MVector> {
    let mut v = MVector::zero(space);
    for w in e.members() {
        let (x, chi) = to_pair(w, d, delta)?;
        v.add_term(space.pair(space.classes.class_of(x), chi as usize), &Cyclo::one());
    }
    Ok(v)
}

/// A member of the classical basis with the triple it comes from.
#[derive(Clone, Debug)]
pub struct ClassicalBetaElement {
    pub triple: FTriple,
    pub subspace: F2Subspace,
    pub vector: MVector,
}

/// The images of `𝔽̃_delta(V)` under `theta_217`, as indicator vectors.
pub fn basis_beta_classical(n: usize, delta: u8, caps: &Caps) -> Result<Vec<ClassicalBetaElement>> {
    check_delta(delta)?;
    let d = 2 * n;
    caps.check_family(d)?;
    let space = MSpace::of(&Descriptor::Based(n))?;
    tilde_ff_triples(d, delta, caps)?
        .into_iter()
        .map(|triple| {
            let subspace = theta_217(&triple, d, caps)?;
            let vector = indicator(&space, &subspace, d, delta)?;
            Ok(ClassicalBetaElement { triple, subspace, vector })
        })
        .collect()
}
