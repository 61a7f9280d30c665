use std::sync::Arc;

use super::{MSpace, MVector};
use crate::error::{Error, Result};
use crate::groups::classes::generators;
use crate::groups::Elem;
use crate::scalars::Cyclo;

/// Largest group order for which dense pair functions are built.
pub const PAIR_FUNCTION_ORDER_CAP: usize = 1024;

/// A function on commuting pairs `(a, b)` of a group, stored densely.
/// Entries at non-commuting pairs are zero.
#[derive(Clone, Debug)]
pub struct PairFunction {
    pub space: Arc<MSpace>,
    values: Vec<Cyclo>,
}

impl PartialEq for PairFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.values == other.values
    }
}

impl PairFunction {
    pub fn zero(space: &Arc<MSpace>) -> Result<PairFunction> {
        let n = space.group.order();
        if n > PAIR_FUNCTION_ORDER_CAP {
            return Err(Error::Unsupported(format!("pair functions on a group of order {n}")));
        }
        Ok(PairFunction { space: space.clone(), values: vec![Cyclo::zero(); n * n] })
    }

    pub fn get(&self, a: Elem, b: Elem) -> &Cyclo {
        &self.values[a as usize * self.space.group.order() + b as usize]
    }

    pub fn set(&mut self, a: Elem, b: Elem, v: Cyclo) {
        let n = self.space.group.order();
        self.values[a as usize * n + b as usize] = v;
    }

    /// Checks `f(sas^-1, sbs^-1) = f(a, b)` for generators `s`.
    pub fn check_invariant(&self) -> Result<()> {
        let g = &self.space.group;
        let gens = generators(g);
        for a in g.elements() {
            for b in g.elements() {
                let v = self.get(a, b);
                for &s in &gens {
                    if self.get(g.conj(s, a), g.conj(s, b)) != v {
                        return Err(Error::NonInvariant(a as usize, b as usize));
                    }
                }
            }
        }
        Ok(())
    }
}

impl MVector {
    /// `f(a, b) = sum_rho v(x, rho) rho(h^-1 b h)` where `a = h x h^-1`.
    pub fn to_pair_function(&self) -> Result<PairFunction> {
        let space = self.space();
        let g = &space.group;
        let mut f = PairFunction::zero(space)?;
        let by_class: Vec<Vec<(usize, Cyclo)>> = (0..space.classes.len())
            .map(|k| {
                self.terms()
                    .filter(|(m, _)| space.class_of_pair(*m) == k)
                    .map(|(m, c)| (space.char_of_pair(m), c.clone()))
                    .collect()
            })
            .collect();
        for a in g.elements() {
            let k = space.classes.class_of(a);
            if by_class[k].is_empty() {
                continue;
            }
            let h = space.classes.conjugator(a);
            let hi = g.inv(h);
            let table = space.table(k);
            for b in g.elements() {
                if !g.commute(a, b) {
                    continue;
                }
                let b0 = g.conj(hi, b);
                let v: Cyclo = by_class[k].iter().map(|(chi, c)| c * &table.value(*chi, b0)).sum();
                f.set(a, b, v);
            }
        }
        Ok(f)
    }

    /// Inverse of [`MVector::to_pair_function`]; the function must be
    /// invariant under simultaneous conjugation.
    pub fn from_pair_function(f: &PairFunction) -> Result<MVector> {
        f.check_invariant()?;
        let space = &f.space;
        let mut v = MVector::zero(space);
        for k in 0..space.classes.len() {
            let x = space.classes.reps[k];
            let cent = &space.classes.centralizers[k];
            let table = space.table(k);
            let scale = Cyclo::ratio(1, cent.order() as i128);
            for chi in 0..table.len() {
                let s: Cyclo = cent.members().iter().map(|&y| f.get(x, y) * &table.value(chi, y).conj()).sum();
                v.add_term(space.pair(k, chi), &(&s * &scale));
            }
        }
        Ok(v)
    }
}
