//! Isomorphism search against a small catalog of atoms, and character
//! tables for groups that decompose as direct products of atoms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::chartab::{sym_centralizer_table, CharTable};
use crate::groups::classes::{generators, Classes};
use crate::groups::group::{standard, Descriptor, Elem, Group, Subgroup};
use crate::groups::perm::Perm;
use crate::scalars::Cyclo;

impl Group {
    /// A subgroup as a group in its own right; element `i` is
    /// `sub.members()[i]` of the parent.
    pub fn from_subgroup(parent: &Group, sub: &Subgroup) -> Group {
        let m = sub.members();
        let n = m.len();
        let mut mul = Vec::with_capacity(n * n);
        for &a in m {
            for &b in m {
                mul.push(m.binary_search(&parent.mul(a, b)).expect("subgroup is not closed") as Elem);
            }
        }
        let labels = m.iter().map(|&a| parent.label(a)).collect();
        if parent.perm(0).is_some() {
            let perms: Vec<Perm> = m.iter().map(|&a| parent.perm(a).unwrap().clone()).collect();
            return Group::from_perms(&sub.name, perms).expect("subgroup");
        }
        Group::from_table(&sub.name, mul, labels).expect("subgroup")
    }
}

/// Searches for an isomorphism `g -> h`; returns the image of every element.
pub fn find_isomorphism(g: &Group, h: &Group) -> Option<Vec<Elem>> {
    if g.order() != h.order() {
        return None;
    }
    let gens = generators(g);
    let gorders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let horder: Vec<usize> = h.elements().map(|a| h.element_order(a)).collect();
    let mut choice = vec![0 as Elem; gens.len()];
    fn extend(g: &Group, h: &Group, gens: &[Elem], imgs: &[Elem]) -> Option<Vec<Elem>> {
        let mut map = vec![Elem::MAX; g.order()];
        let mut hit = vec![false; h.order()];
        map[0] = 0;
        hit[0] = true;
        let mut queue = vec![0 as Elem];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            for (&s, &t) in gens.iter().zip(imgs) {
                let b = g.mul(a, s);
                let v = h.mul(map[a as usize], t);
                if map[b as usize] == Elem::MAX {
                    if hit[v as usize] {
                        return None;
                    }
                    hit[v as usize] = true;
                    map[b as usize] = v;
                    queue.push(b);
                } else if map[b as usize] != v {
                    return None;
                }
            }
            i += 1;
        }
        // a well-defined bijection that respects right multiplication by
        // generators is a homomorphism; confirm on all pairs for safety
        for a in g.elements() {
            for b in g.elements() {
                if map[g.mul(a, b) as usize] != h.mul(map[a as usize], map[b as usize]) {
                    return None;
                }
            }
        }
        Some(map)
    }
    fn rec(
        g: &Group,
        h: &Group,
        gens: &[Elem],
        gorders: &[usize],
        horder: &[usize],
        choice: &mut Vec<Elem>,
        t: usize,
    ) -> Option<Vec<Elem>> {
        if t == gens.len() {
            return extend(g, h, gens, choice);
        }
        for v in h.elements() {
            if horder[v as usize] == gorders[t] {
                choice[t] = v;
                if let Some(m) = rec(g, h, gens, gorders, horder, choice, t + 1) {
                    return Some(m);
                }
            }
        }
        None
    }
    rec(g, h, &gens, &gorders, &horder, &mut choice, 0)
}

/// A catalog atom: a model group with its labelled character table.
struct Atom {
    group: Arc<Group>,
    table: CharTable,
}

fn cyclic_atom(n: usize) -> Atom {
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(((a + b) % n) as Elem);
        }
    }
    let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else if k == 1 { "c".into() } else { format!("c^{k}") }).collect();
    let group = Arc::new(Group::from_table(&format!("C{n}"), mul, labels).unwrap());
    let names: Vec<String> = (0..n)
        .map(|j| match (n, j) {
            (_, 0) => "1".to_string(),
            (2, _) => "eps".into(),
            (3, 1) => "theta".into(),
            (3, _) => "theta^2".into(),
            (4, _) => ["1", "i", "-1", "-i"][j].into(),
            (5, 1) => "zeta".into(),
            (5, _) => format!("zeta^{j}"),
            (6, _) => ["1", "-theta^2", "theta", "-1", "theta^2", "-theta"][j].into(),
            _ => format!("w^{j}"),
        })
        .collect();
    let values = (0..n)
        .map(|j| (0..n).map(|k| Cyclo::root_of_unity(n as u32, (j * k) as i64)).collect())
        .collect();
    let table = CharTable::dense(names, (0..n as Elem).collect(), values);
    Atom { group, table }
}

fn symmetric_atom(n: usize) -> Atom {
    let g = standard(&Descriptor::Sym(n));
    let c = Classes::compute(&g);
    let table = sym_centralizer_table(&g, 0, "1", &c.centralizers[0]);
    Atom { group: g, table }
}

fn dihedral_atom() -> Atom {
    let s4 = standard(&Descriptor::Sym(4));
    let c = Classes::compute(&s4);
    let k = c.index_of_label("g2'").unwrap();
    let cent = &c.centralizers[k];
    let t = sym_centralizer_table(&s4, c.reps[k], "g2'", cent);
    let g = Group::from_subgroup(&s4, cent);
    let values = (0..t.len()).map(|chi| cent.members().iter().map(|&a| t.value(chi, a)).collect()).collect();
    let table = CharTable::dense(t.labels.clone(), (0..cent.order() as Elem).collect(), values);
    Atom { group: Arc::new(g.renamed("D8")), table }
}

fn elementary_atom(dim: usize) -> Atom {
    Atom { group: standard(&Descriptor::Based(dim)), table: CharTable::dual(dim) }
}

impl Group {
    fn renamed(self, name: &str) -> Group {
        let mut g = self;
        g.set_name(name);
        g
    }
}

fn candidate_atoms(g: &Group) -> Vec<Atom> {
    let n = g.order();
    let e = g.exponent();
    let mut out = Vec::new();
    if (1..=6).contains(&n) && e == n {
        out.push(cyclic_atom(n));
    }
    if [6, 24, 120].contains(&n) && !g.is_abelian() {
        let k = match n {
            6 => 3,
            24 => 4,
            _ => 5,
        };
        out.push(symmetric_atom(k));
    }
    if n == 8 && e == 4 && !g.is_abelian() {
        out.push(dihedral_atom());
    }
    if n.is_power_of_two() && e <= 2 {
        out.push(elementary_atom(n.trailing_zeros() as usize));
    }
    out
}

fn normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let closure = |gens: &[Elem]| -> Vec<Elem> {
        let mut set: Vec<Elem> = gens.to_vec();
        loop {
            let sub = g.generate(&set);
            let mut grown = sub.clone();
            for &a in &sub {
                for x in g.elements() {
                    grown.push(g.conj(x, a));
                }
            }
            grown.sort_unstable();
            grown.dedup();
            if grown.len() == sub.len() {
                return sub;
            }
            set = grown;
        }
    };
    let mut found: Vec<Vec<Elem>> = Vec::new();
    for a in g.elements().skip(1) {
        let n = closure(&[a]);
        if !found.contains(&n) {
            found.push(n);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let mut gens = found[i].clone();
            gens.extend(&found[j]);
            let n = closure(&gens);
            if !found.contains(&n) {
                found.push(n);
            }
        }
        i += 1;
    }
    found.sort_by_key(|m| (m.len(), m.clone()));
    found.into_iter().map(|m| Subgroup::from_members(g, "N", m).unwrap()).collect()
}

/// Character table of a small group that is a direct product of catalog
/// atoms (cyclic of order at most six, `S3`-`S5`, `D8`, elementary abelian
/// 2-groups). Labels of product characters are tuples of atom labels.
pub fn character_table(g: &Group) -> Result<CharTable> {
    if g.order() == 1 {
        return Ok(CharTable::dense(vec!["1".into()], vec![0], vec![vec![Cyclo::one()]]));
    }
    for atom in candidate_atoms(g) {
        if let Some(iso) = find_isomorphism(g, &atom.group) {
            let values = (0..atom.table.len())
                .map(|chi| g.elements().map(|a| atom.table.value(chi, iso[a as usize])).collect())
                .collect();
            let t = CharTable::dense(atom.table.labels.clone(), g.elements().collect(), values);
            return Ok(t);
        }
    }
    let normals = normal_subgroups(g);
    for n in &normals {
        if n.order() == 1 || n.order() == g.order() {
            continue;
        }
        for k in &normals {
            if n.order() * k.order() != g.order() || n.intersection(k, "").order() != 1 {
                continue;
            }
            let gn = Group::from_subgroup(g, n);
            let gk = Group::from_subgroup(g, k);
            let (tn, tk) = (character_table(&gn)?, character_table(&gk)?);
            // every element factors uniquely as n * k
            let mut parts = vec![(0 as Elem, 0 as Elem); g.order()];
            for (i, &a) in n.members().iter().enumerate() {
                for (j, &b) in k.members().iter().enumerate() {
                    parts[g.mul(a, b) as usize] = (i as Elem, j as Elem);
                }
            }
            let mut labels = Vec::new();
            let mut values = Vec::new();
            for x in 0..tn.len() {
                for y in 0..tk.len() {
                    labels.push(format!("({},{})", tn.labels[x], tk.labels[y]));
                    values.push(
                        g.elements()
                            .map(|a| {
                                let (i, j) = parts[a as usize];
                                &tn.value(x, i) * &tk.value(y, j)
                            })
                            .collect(),
                    );
                }
            }
            return Ok(CharTable::dense(labels, g.elements().collect(), values));
        }
    }
    Err(Error::Recognition { order: g.order(), exponent: g.exponent() })
}

/// The coset group `upper / lower` with its projection from `upper`.
pub fn quotient(parent: &Group, upper: &Subgroup, lower: &Subgroup) -> Result<(Arc<Group>, crate::groups::Hom)> {
    if !lower.is_normal_in(parent, upper) {
        return Err(Error::NotNormal { lower: lower.order(), upper: upper.order() });
    }
    let coset_rep = |a: Elem| lower.members().iter().map(|&n| parent.mul(a, n)).min().unwrap();
    let mut reps: Vec<Elem> = upper.members().iter().map(|&a| coset_rep(a)).collect();
    reps.sort_unstable();
    reps.dedup();
    let idx = |a: Elem| reps.binary_search(&coset_rep(a)).unwrap() as Elem;
    let n = reps.len();
    let mut mul = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            mul.push(idx(parent.mul(a, b)));
        }
    }
    let labels = reps.iter().map(|&a| format!("{}{}", parent.label(a), lower.name)).collect();
    let q = Arc::new(Group::from_table(&format!("{}/{}", upper.name, lower.name), mul, labels)?);
    let hom = crate::groups::Hom::new(parent, upper.clone(), q.clone(), idx)?;
    Ok((q, hom))
}

/// Projection `upper -> model` through `upper / lower`, when the quotient is
/// isomorphic to `model`.
pub fn identify_quotient(
    parent: &Group,
    upper: &Subgroup,
    lower: &Subgroup,
    model: Arc<Group>,
) -> Result<crate::groups::Hom> {
    let (q, proj) = quotient(parent, upper, lower)?;
    let iso = find_isomorphism(&q, &model)
        .ok_or_else(|| Error::QuotientType(format!("{}/{} (order {})", upper.name, lower.name, q.order())))?;
    crate::groups::Hom::new(parent, upper.clone(), model, |a| iso[proj.apply(a) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::group::build_standard;

    #[test]
    fn recognizes_atoms_and_products() {
        for spec in ["S3", "S4", "V3", "S3xS2", "S2xS2"] {
            let g = build_standard(spec).unwrap();
            let flat = Group::from_subgroup(&g, &Subgroup::whole(&g, spec));
            let t = character_table(&flat).unwrap();
            t.check_orthogonality(&flat).unwrap();
            let classes = Classes::compute(&flat).len();
            assert_eq!(t.len(), classes, "{spec}");
        }
    }

    #[test]
    fn recognition_failure_names_order_and_exponent() {
        // the quaternion group is not a product of catalog atoms
        let q8 = {
            // elements 0..8 as (sign, unit) with units 1,i,j,k
            let unit = |u: usize, v: usize| -> (bool, usize) {
                const T: [[(bool, usize); 4]; 4] = [
                    [(false, 0), (false, 1), (false, 2), (false, 3)],
                    [(false, 1), (true, 0), (false, 3), (true, 2)],
                    [(false, 2), (true, 3), (true, 0), (false, 1)],
                    [(false, 3), (false, 2), (true, 1), (true, 0)],
                ];
                T[u][v]
            };
            let mut mul = Vec::new();
            for a in 0..8 {
                for b in 0..8 {
                    let (s, u) = unit(a % 4, b % 4);
                    let neg = (a >= 4) ^ (b >= 4) ^ s;
                    mul.push((u + if neg { 4 } else { 0 }) as Elem);
                }
            }
            Group::from_table("Q8", mul, (0..8).map(|k| k.to_string()).collect()).unwrap()
        };
        assert_eq!(character_table(&q8).unwrap_err(), Error::Recognition { order: 8, exponent: 4 });
    }
}
