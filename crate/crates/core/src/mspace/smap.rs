use std::sync::Arc;

use super::{MSpace, MVector};
use crate::error::{Error, Result};
use crate::groups::recognize::identify_quotient;
use crate::groups::{Hom, Subgroup};
use crate::scalars::Cyclo;

/// Subgroups `lower ⊆ upper` of a standard group with `lower` normal in
/// `upper`, and a projection of `upper` onto a standard model of the
/// quotient whose kernel is `lower`.
#[derive(Clone, Debug)]
pub struct SubgroupPair {
    pub ambient: Arc<MSpace>,
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub proj: Hom,
}

impl SubgroupPair {
    pub fn new(ambient: &Arc<MSpace>, lower: Subgroup, upper: Subgroup, proj: Hom) -> Result<SubgroupPair> {
        let g = &ambient.group;
        if !lower.is_subgroup_of(&upper) || !lower.is_normal_in(g, &upper) {
            return Err(Error::NotNormal { lower: lower.order(), upper: upper.order() });
        }
        if !proj.source.same_members(&upper) || !proj.kernel().same_members(&lower) {
            return Err(Error::BadHomomorphism(format!(
                "projection of {} does not have kernel {}",
                upper.name, lower.name
            )));
        }
        Ok(SubgroupPair { ambient: ambient.clone(), lower, upper, proj })
    }

    /// Builds the projection by identifying `upper / lower` with the
    /// standard group `model`.
    pub fn identify(ambient: &Arc<MSpace>, lower: Subgroup, upper: Subgroup, model: &str) -> Result<SubgroupPair> {
        let q = MSpace::parse(model)?;
        let proj = identify_quotient(&ambient.group, &upper, &lower, q.group.clone())?;
        SubgroupPair::new(ambient, lower, upper, proj)
    }

    pub fn quotient_space(&self) -> Result<Arc<MSpace>> {
        let d = self.proj.target.descriptor().ok_or_else(|| Error::QuotientType(self.proj.target.name().into()))?;
        MSpace::of(&d)
    }

    pub fn name(&self) -> String {
        format!("({} ⊆ {})", self.lower.name, self.upper.name)
    }
}

/// `s_{G',G''}`: inflate a class function on commuting pairs of
/// `G''/G'` to `G''` and induce it to the ambient group.
pub fn s_map(pair: &SubgroupPair, v: &MVector) -> Result<MVector> {
    let q = pair.quotient_space()?;
    if !Arc::ptr_eq(v.space(), &q) {
        return Err(Error::Unsupported(format!(
            "vector over M({}) given for a quotient of type {}",
            v.space().group.name(),
            q.group.name()
        )));
    }
    let fq = v.to_pair_function()?;
    let space = &pair.ambient;
    let g = &space.group;
    let up_order = pair.upper.order() as i128;
    let mut out = MVector::zero(space);
    for k in 0..space.classes.len() {
        let x = space.classes.reps[k];
        let cent = &space.classes.centralizers[k];
        let moved: Vec<(u32, u32)> = g
            .elements()
            .filter_map(|h| pair.proj.try_apply(g.conj(h, x)).map(|px| (h, px)))
            .collect();
        if moved.is_empty() {
            continue;
        }
        let values: Vec<Cyclo> = cent
            .members()
            .iter()
            .map(|&y| {
                moved
                    .iter()
                    .filter_map(|&(h, px)| pair.proj.try_apply(g.conj(h, y)).map(|py| fq.get(px, py).clone()))
                    .sum::<Cyclo>()
            })
            .collect();
        let table = space.table(k);
        let scale = Cyclo::ratio(1, up_order * cent.order() as i128);
        for chi in 0..table.len() {
            let s: Cyclo = cent
                .members()
                .iter()
                .zip(&values)
                .filter(|(_, f)| !f.is_zero())
                .map(|(&y, f)| f * &table.value(chi, y).conj())
                .sum();
            out.add_term(space.pair(k, chi), &(&s * &scale));
        }
    }
    Ok(out)
}
