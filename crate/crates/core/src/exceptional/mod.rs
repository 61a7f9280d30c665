//! The recursive subgroup collections attached to `S_1..S_5` and `V_n`,
//! their primitive elements, and the resulting basis `beta(G)`.

mod goldens;
mod prim;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::lattice::{restrict_to, Lattice};
use crate::groups::{standard, Descriptor, Elem, Group, Hom, Subgroup};
use crate::mspace::{s_map, MSpace, MVector, SubgroupPair};

pub use goldens::{golden_rows, golden_table, golden_text, parse_goldens, variant_basis, GoldenRow};
pub use prim::{f_k, lambda_by_name, prim_set, PrimElement};

/// Largest `n` for which the recursion is run on `V_n`.
pub const BASED_RECURSION_CAP: usize = 8;

/// Name of a subgroup of `V_n`: a reduced spanning set, or `0`.
pub fn span_name(members: &[Elem], dim: usize) -> String {
    let mut basis: Vec<u32> = Vec::new();
    for &m in members {
        let mut v = m;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    // reduce so each leading bit appears once
    for i in 0..basis.len() {
        let lead = 31 - basis[i].leading_zeros();
        for j in 0..basis.len() {
            if j != i && basis[j] >> lead & 1 == 1 {
                basis[j] ^= basis[i];
            }
        }
    }
    if basis.is_empty() {
        return "0".into();
    }
    basis.sort_unstable_by_key(|b| b.trailing_zeros());
    let parts: Vec<String> = basis.iter().map(|&b| crate::groups::group::based_label(b, dim, "x", "0")).collect();
    format!("<{}>", parts.join(","))
}

fn based_subgroup(g: &Group, dim: usize, members: Vec<Elem>) -> Subgroup {
    let name = span_name(&members, dim);
    Subgroup::from_members(g, &name, members).expect("span is a subgroup")
}

/// Names a pulled-back subgroup after the lattice member with the same
/// elements, when there is one.
fn rename(g: &Group, sub: Subgroup) -> Subgroup {
    match g.descriptor() {
        Some(Descriptor::Sym(n)) => {
            let lat = lattice(n);
            match lat.members.iter().find(|m| m.same_members(&sub)) {
                Some(m) => sub.renamed(&m.name),
                None => sub,
            }
        }
        Some(Descriptor::Based(dim)) => {
            let name = span_name(sub.members(), dim);
            sub.renamed(&name)
        }
        _ => sub,
    }
}

pub fn lattice(n: usize) -> Arc<Lattice> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Lattice>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    cache.lock().unwrap().entry(n).or_insert_with(|| Arc::new(Lattice::new(n))).clone()
}

fn check_supported(desc: &Descriptor) -> Result<()> {
    match desc {
        Descriptor::Sym(n) if *n <= 5 => Ok(()),
        Descriptor::Based(n) if *n <= BASED_RECURSION_CAP => Ok(()),
        Descriptor::Based(n) => Err(Error::DimensionCap { dim: *n, cap: BASED_RECURSION_CAP }),
        _ => Err(Error::UnsupportedGroup(desc.to_string())),
    }
}

/// The collection of surjective homomorphisms `G_2 -> G_1` with `G_2 ⊆ G`
/// and `G_1` a standard group. Empty for `S1`.
pub fn frak_c(desc: &Descriptor) -> Result<Vec<Hom>> {
    check_supported(desc)?;
    let g = standard(desc);
    let sym = |k| standard(&Descriptor::Sym(k));
    let to_trivial = |sub: &Subgroup| Hom::new(&g, sub.clone(), sym(1), |_| 0);
    match desc {
        Descriptor::Sym(1) => Ok(vec![]),
        Descriptor::Sym(2) | Descriptor::Based(1) => {
            let trivial = rename(&g, Subgroup::trivial("S1"));
            let whole = rename(&g, Subgroup::whole(&g, &g.name().to_string()));
            Ok(vec![to_trivial(&trivial)?, to_trivial(&whole)?])
        }
        Descriptor::Sym(n) => {
            let lat = lattice(*n);
            let get = |name: &str| lat.get(name).cloned();
            // does the element swap the blocks {1,2} and {3,4}?
            let swaps = |a: Elem| g.perm(a).unwrap().apply(0) >= 2;
            let s2 = sym(2);
            let flip = |a: Elem| if swaps(a) { 1 } else { 0 };
            match n {
                3 => Ok(vec![to_trivial(&get("S2")?)?, to_trivial(&get("S3")?)?]),
                4 => Ok(vec![
                    Hom::new(&g, get("S2S2")?, s2.clone(), |a| restrict_to(&g, a, &[3, 4]))?,
                    Hom::new(&g, get("D8")?, s2.clone(), flip)?,
                    to_trivial(&get("S3")?)?,
                    to_trivial(&get("S4")?)?,
                ]),
                _ => Ok(vec![
                    Hom::new(&g, get("S3S2")?, sym(3), |a| restrict_to(&g, a, &[3, 4, 5]))?,
                    Hom::new(&g, get("S3S2")?, s2.clone(), |a| restrict_to(&g, a, &[1, 2]))?,
                    Hom::new(&g, get("D8")?, s2.clone(), flip)?,
                    to_trivial(&get("S4")?)?,
                    to_trivial(&get("S5")?)?,
                    to_trivial(&get("S2")?)?,
                ]),
            }
        }
        Descriptor::Based(n) => {
            let n = *n;
            let target = standard(&Descriptor::Based(n - 1));
            let bit = |v: Elem, i: usize| v >> (i - 1) & 1;
            let coords = |f: &dyn Fn(usize) -> Elem| (1..n).map(|k| f(k) << (k - 1)).fold(0, |a, b| a | b);
            let mut out = Vec::new();
            for j in 1..n {
                let members: Vec<Elem> = g.elements().filter(|&v| bit(v, j) == bit(v, j + 1)).collect();
                let sub = based_subgroup(&g, n, members);
                out.push(Hom::new(&g, sub, target.clone(), |v| {
                    coords(&|k| if k <= j { bit(v, k) } else { bit(v, k + 1) })
                })?);
            }
            for j in 1..=n {
                let whole = based_subgroup(&g, n, g.elements().collect());
                out.push(Hom::new(&g, whole, target.clone(), |v| {
                    coords(&|k| if k < j { bit(v, k) } else { bit(v, k + 1) })
                })?);
            }
            let members: Vec<Elem> = g.elements().filter(|&v| bit(v, 1) == 0).collect();
            let sub = based_subgroup(&g, n, members);
            out.push(Hom::new(&g, sub, target, |v| coords(&|k| bit(v, k + 1)))?);
            Ok(out)
        }
        _ => Err(Error::UnsupportedGroup(desc.to_string())),
    }
}

fn memo<T: Clone + Send + 'static>(
    cache: &'static OnceLock<Mutex<HashMap<Descriptor, T>>>,
    desc: &Descriptor,
    build: impl FnOnce() -> Result<T>,
) -> Result<T> {
    let c = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = c.lock().unwrap().get(desc) {
        return Ok(v.clone());
    }
    let v = build()?;
    c.lock().unwrap().insert(desc.clone(), v.clone());
    Ok(v)
}

/// Subgroups obtained as preimages `a^-1(H)` over `a` in [`frak_c`] and
/// `H` in the collection for the target, starting from `{S1}` for `S1`.
pub fn fc_set(desc: &Descriptor) -> Result<Arc<Vec<Subgroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<Descriptor, Arc<Vec<Subgroup>>>>> = OnceLock::new();
    memo(&CACHE, desc, || {
        check_supported(desc)?;
        let g = standard(desc);
        if g.order() == 1 {
            return Ok(Arc::new(vec![Subgroup::whole(&g, "S1")]));
        }
        let mut out: Vec<Subgroup> = Vec::new();
        for a in frak_c(desc)? {
            let target = a.target.descriptor().expect("standard target");
            for h in fc_set(&target)?.iter() {
                let pre = rename(&g, a.preimage(h.members(), &h.name));
                if !out.iter().any(|s| s.same_members(&pre)) {
                    out.push(pre);
                }
            }
        }
        Ok(Arc::new(out))
    })
}

fn identity_pair(space: &Arc<MSpace>, name: &str) -> Result<SubgroupPair> {
    let g = &space.group;
    let whole = rename(g, Subgroup::whole(g, name));
    let lower = rename(g, Subgroup::trivial("S1"));
    let proj = Hom::new(g, whole.clone(), g.clone(), |a| a)?;
    SubgroupPair::new(space, lower, whole, proj)
}

/// Pairs `(G' ⊆ G'')` with a projection of `G''` onto a standard model
/// of `G''/G'`, generated by pulling back along [`frak_c`], by
/// `(S1 ⊆ X)` for the named subgroups of `S3..S5` with a standard model,
/// and by `(S1 ⊆ G)` when `S1` is in [`fc_set`]. Duplicates (same member
/// sets) keep their first occurrence.
pub fn tilde_fc_set(desc: &Descriptor) -> Result<Arc<Vec<SubgroupPair>>> {
    static CACHE: OnceLock<Mutex<HashMap<Descriptor, Arc<Vec<SubgroupPair>>>>> = OnceLock::new();
    memo(&CACHE, desc, || {
        check_supported(desc)?;
        let space = MSpace::of(desc)?;
        let g = space.group.clone();
        if g.order() == 1 {
            return Ok(Arc::new(vec![identity_pair(&space, "S1")?]));
        }
        let mut out: Vec<SubgroupPair> = Vec::new();
        let mut push = |p: SubgroupPair| {
            if !out.iter().any(|q| q.lower.same_members(&p.lower) && q.upper.same_members(&p.upper)) {
                out.push(p);
            }
        };
        for a in frak_c(desc)? {
            let target = a.target.descriptor().expect("standard target");
            for p1 in tilde_fc_set(&target)?.iter() {
                let proj = a.then(&p1.proj, &g)?;
                let upper = rename(&g, proj.source.clone());
                let lower = rename(&g, a.preimage(p1.lower.members(), &p1.lower.name));
                let proj = Hom::new(&g, upper.clone(), proj.target.clone(), |x| proj.apply(x))?;
                push(SubgroupPair::new(&space, lower, upper, proj)?);
            }
        }
        let fc = fc_set(desc)?;
        let trivial_in_fc = fc.iter().any(|s| s.order() == 1);
        if let Descriptor::Sym(n) = desc {
            if *n >= 3 && !trivial_in_fc {
                let lat = lattice(*n);
                for m in &lat.members {
                    if let Ok(proj) = lat.standard_model(&m.name) {
                        push(SubgroupPair::new(&space, Subgroup::trivial("S1"), m.clone(), proj)?);
                    }
                }
            }
        }
        if trivial_in_fc {
            push(identity_pair(&space, g.name())?);
        }
        Ok(Arc::new(out))
    })
}

/// A triple `(G' ⊆ G'', Xi)` with `Xi` primitive for the quotient.
#[derive(Clone, Debug)]
pub struct YTriple {
    pub pair: SubgroupPair,
    pub xi: PrimElement,
}

impl fmt::Display for YTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[{},{}]({})", self.pair.lower.name, self.pair.upper.name, self.xi.name)
    }
}

impl YTriple {
    pub fn evaluate(&self) -> Result<MVector> {
        s_map(&self.pair, &self.xi.vector)
    }
}

pub fn y_set(desc: &Descriptor) -> Result<Vec<YTriple>> {
    let mut out = Vec::new();
    for pair in tilde_fc_set(desc)?.iter() {
        let q = pair.quotient_space()?;
        for xi in prim_set(&q.descriptor())? {
            out.push(YTriple { pair: pair.clone(), xi });
        }
    }
    Ok(out)
}

/// An element of `beta(G)` with the triple (or tuple of triples, for
/// products) it comes from.
#[derive(Clone, Debug)]
pub struct BetaElement {
    pub source: String,
    pub vector: MVector,
}

/// `beta(G)`: the images `s_{G',G''}(Xi)` over `Y(G)`, and for products the
/// external products of the factor bases.
pub fn basis_beta(desc: &Descriptor) -> Result<Vec<BetaElement>> {
    static CACHE: OnceLock<Mutex<HashMap<Descriptor, Vec<BetaElement>>>> = OnceLock::new();
    memo(&CACHE, desc, || match desc {
        Descriptor::Product(fs) => {
            let mut acc: Vec<BetaElement> = basis_beta(&fs[0])?;
            for f in &fs[1..] {
                let next = basis_beta(f)?;
                let mut out = Vec::with_capacity(acc.len() * next.len());
                for a in &acc {
                    for b in &next {
                        out.push(BetaElement {
                            source: format!("{} x {}", a.source, b.source),
                            vector: a.vector.external_product(&b.vector)?,
                        });
                    }
                }
                acc = out;
            }
            Ok(acc)
        }
        _ => y_set(desc)?
            .par_iter()
            .map(|t| Ok(BetaElement { source: t.to_string(), vector: t.evaluate()? }))
            .collect(),
    })
}
