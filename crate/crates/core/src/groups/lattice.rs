//! The named subgroup collections of `S3`, `S4`, `S5` and the standard
//! models of their members.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::group::{standard, Descriptor, Elem, Group, Hom, Subgroup};
use crate::groups::perm::Perm;

/// Named subgroups of `S_n`, largest first.
pub struct Lattice {
    pub group: Arc<Group>,
    pub members: Vec<Subgroup>,
    /// Conjugation applied after the standard embedding of the largest
    /// proper symmetric subgroup; the identity here.
    pub embedding_conjugation: Perm,
}

fn perm(g: &Group, cycles: &[&[u8]]) -> Elem {
    let n = g.perm(0).unwrap().degree();
    g.perm_index(&Perm::from_cycles(n, cycles)).unwrap()
}

/// Restriction of a permutation to an invariant set of points (1-based),
/// relabelled in increasing order, as an element of the standard `S_k`.
pub fn restrict_to(g: &Group, a: Elem, points: &[u8]) -> Elem {
    let p = g.perm(a).unwrap();
    let img: Vec<u8> = points
        .iter()
        .map(|&k| points.iter().position(|&q| q as usize - 1 == p.apply(k as usize - 1)).unwrap() as u8)
        .collect();
    let target = standard(&Descriptor::Sym(points.len()));
    target.perm_index(&Perm::from_images(img)).unwrap()
}

/// Symmetric group on the given points inside `g`.
fn sym_on(g: &Group, points: &[u8], name: &str) -> Subgroup {
    let fixed: Vec<Elem> = g
        .elements()
        .filter(|&a| {
            let p = g.perm(a).unwrap();
            (0..p.degree()).all(|k| points.contains(&(k as u8 + 1)) || p.apply(k) == k)
        })
        .collect();
    Subgroup::from_members(g, name, fixed).unwrap()
}

impl Lattice {
    /// `X(S_n)` for `n` in 1..=5 (for `n <= 2` just `S_n` and `S1`).
    pub fn new(n: usize) -> Lattice {
        let g = standard(&Descriptor::Sym(n));
        let name = |k: usize| format!("S{k}");
        let mut members = vec![Subgroup::whole(&g, &name(n))];
        match n {
            5 => {
                let sigma = perm(&g, &[&[1, 2]]);
                let sigma2 = perm(&g, &[&[1, 2], &[3, 4]]);
                let centralizer = |x: Elem, nm: &str| {
                    let m: Vec<Elem> = g.elements().filter(|&c| g.commute(c, x)).collect();
                    Subgroup::from_members(&g, nm, m).unwrap()
                };
                let s3s2 = centralizer(sigma, "S3S2");
                let d8 = centralizer(sigma2, "D8");
                let s2s2 = s3s2.intersection(&d8, "S2S2");
                // transpositions of S3S2 other than sigma generate S3
                let u: Vec<Elem> = s3s2
                    .members()
                    .iter()
                    .copied()
                    .filter(|&a| a != sigma && g.perm(a).unwrap().cycle_type()[..2] == [2, 1])
                    .collect();
                let s3 = Subgroup::generated(&g, "S3", &u);
                members.push(sym_on(&g, &[1, 2, 3, 4], "S4"));
                members.push(s3s2);
                members.push(d8);
                members.push(s3);
                members.push(s2s2);
                members.push(Subgroup::generated(&g, "S2", &[sigma]));
            }
            4 => {
                let sigma = perm(&g, &[&[1, 2]]);
                let s2s2: Vec<Elem> = g.elements().filter(|&c| g.commute(c, sigma)).collect();
                let s2s2 = Subgroup::from_members(&g, "S2S2", s2s2).unwrap();
                let special = s2s2
                    .members()
                    .iter()
                    .copied()
                    .find(|&x| g.elements().filter(|&c| g.commute(c, x)).count() == 8)
                    .unwrap();
                let d8: Vec<Elem> = g.elements().filter(|&c| g.commute(c, special)).collect();
                members.push(Subgroup::from_members(&g, "D8", d8).unwrap());
                members.push(sym_on(&g, &[1, 2, 3], "S3"));
                members.push(s2s2);
                members.push(Subgroup::generated(&g, "S2", &[sigma]));
            }
            3 => members.push(Subgroup::generated(&g, "S2", &[perm(&g, &[&[1, 2]])])),
            _ => {}
        }
        if n > 1 {
            members.push(Subgroup::trivial("S1"));
        }
        Lattice { group: g, members, embedding_conjugation: Perm::identity(n) }
    }

    pub fn get(&self, name: &str) -> Result<&Subgroup> {
        self.members.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    /// Isomorphism from a named member onto its standard model: `S_k` for
    /// the symmetric members, `S2xS2` and `S3xS2` for the products (first
    /// factor the distinguished subgroup: `<sigma>`, resp. the `S3`
    /// generated by the other transpositions). `D8` has no standard model.
    pub fn standard_model(&self, name: &str) -> Result<Hom> {
        let g = &self.group;
        let n = g.perm(0).unwrap().degree();
        let sub = self.get(name)?.clone();
        let sym = |k: usize| standard(&Descriptor::Sym(k));
        match name {
            "S1" => Hom::new(g, sub, sym(1), |_| 0),
            "D8" => Err(Error::QuotientType("D8".into())),
            "S2S2" => {
                let model = standard(&Descriptor::product(vec![Descriptor::Sym(2), Descriptor::Sym(2)]));
                let m = model.clone();
                Hom::new(g, sub, model, move |a| m.combine(&[restrict_to(g, a, &[1, 2]), restrict_to(g, a, &[3, 4])]))
            }
            "S3S2" => {
                let model = standard(&Descriptor::product(vec![Descriptor::Sym(3), Descriptor::Sym(2)]));
                let m = model.clone();
                Hom::new(g, sub, model, move |a| {
                    m.combine(&[restrict_to(g, a, &[3, 4, 5]), restrict_to(g, a, &[1, 2])])
                })
            }
            _ => {
                let k: usize = name[1..].parse().map_err(|_| Error::UnknownLabel(name.into()))?;
                let points: Vec<u8> = match (n, k) {
                    (5, 3) => vec![3, 4, 5],
                    _ => (1..=k as u8).collect(),
                };
                Hom::new(g, sub, sym(k), |a| restrict_to(g, a, &points))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::recognize::identify_quotient;

    #[test]
    fn s5_orders_and_containments() {
        let l = Lattice::new(5);
        let order = |n: &str| l.get(n).unwrap().order();
        assert_eq!(
            ["S5", "S4", "S3S2", "D8", "S3", "S2S2", "S2", "S1"].map(order),
            [120, 24, 12, 8, 6, 4, 2, 1]
        );
        let (s2, s2s2, d8) = (l.get("S2").unwrap(), l.get("S2S2").unwrap(), l.get("D8").unwrap());
        assert!(s2.is_subgroup_of(s2s2) && s2s2.is_subgroup_of(d8));
        assert!(l.get("S3").unwrap().is_subgroup_of(l.get("S3S2").unwrap()));
    }

    #[test]
    fn s4_lattice() {
        let l = Lattice::new(4);
        assert_eq!(l.get("S2S2").unwrap().order(), 4);
        assert_eq!(l.get("D8").unwrap().order(), 8);
        assert!(l.get("S2S2").unwrap().is_subgroup_of(l.get("D8").unwrap()));
        for name in ["S4", "S3", "S2S2", "S2", "S1"] {
            l.standard_model(name).unwrap();
        }
        assert!(l.standard_model("D8").is_err());
    }

    #[test]
    fn quotient_identifications() {
        let l = Lattice::new(5);
        let g = &l.group;
        let s2 = standard(&Descriptor::Sym(2));
        let d8 = l.get("D8").unwrap();
        let h = identify_quotient(g, d8, l.get("S2S2").unwrap(), s2.clone()).unwrap();
        assert!(h.kernel().same_members(l.get("S2S2").unwrap()));
        identify_quotient(g, l.get("S3S2").unwrap(), l.get("S3").unwrap(), s2.clone()).unwrap();
        identify_quotient(g, l.get("S2S2").unwrap(), l.get("S2").unwrap(), s2.clone()).unwrap();
        let err = identify_quotient(g, l.get("S5").unwrap(), l.get("S2").unwrap(), s2);
        assert!(matches!(err, Err(Error::NotNormal { lower: 2, upper: 120 })));
    }
}
