use std::sync::Arc;

use crate::groups::group::{Elem, Group, Subgroup};
use crate::groups::perm::Perm;

/// Conjugacy classes of a group with canonical representatives.
///
/// Classes are ordered by size, then by representative index. For each
/// element `a` we keep its class and a conjugator `h` with
/// `a = h rep h^-1`.
pub struct Classes {
    pub reps: Vec<Elem>,
    pub labels: Vec<String>,
    pub sizes: Vec<usize>,
    pub centralizers: Vec<Arc<Subgroup>>,
    class_of: Vec<u32>,
    conjugator: Vec<Elem>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, a: Elem) -> usize {
        self.class_of[a as usize] as usize
    }

    /// `h` with `a = h rep h^-1`, `rep` the representative of `a`'s class.
    pub fn conjugator(&self, a: Elem) -> Elem {
        self.conjugator[a as usize]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn compute(g: &Group) -> Classes {
        if g.based_dim().is_some() {
            return abelian_classes(g);
        }
        if let Some(factors) = g.factors() {
            return product_classes(g, factors);
        }
        orbit_classes(g)
    }
}

/// Label of a permutation's class in `S_n`, `n <= 5`.
pub fn sym_class_label(cycle_type: &[usize]) -> &'static str {
    let moved: Vec<usize> = cycle_type.iter().copied().filter(|&c| c > 1).collect();
    match moved.as_slice() {
        [] => "1",
        [2] => "g2",
        [2, 2] => "g2'",
        [3] => "g3",
        [4] => "g4",
        [5] => "g5",
        [3, 2] => "g6",
        _ => "?",
    }
}

fn sym_standard_rep(g: &Group, ct: &[usize]) -> Elem {
    let n = g.perm(0).unwrap().degree();
    let mut cycles: Vec<Vec<u8>> = Vec::new();
    let mut next = 1u8;
    for &len in ct.iter().filter(|&&c| c > 1) {
        cycles.push((next..next + len as u8).collect());
        next += len as u8;
    }
    let refs: Vec<&[u8]> = cycles.iter().map(|c| c.as_slice()).collect();
    g.perm_index(&Perm::from_cycles(n, &refs)).unwrap()
}

pub(crate) fn generators(g: &Group) -> Vec<Elem> {
    if let Some(p) = g.perm(0) {
        let n = p.degree();
        if g.order() == (1..=n).product::<usize>() && n >= 2 {
            let t = g.perm_index(&Perm::from_cycles(n, &[&[1, 2]])).unwrap();
            let cyc: Vec<u8> = (1..=n as u8).collect();
            let c = g.perm_index(&Perm::from_cycles(n, &[&cyc])).unwrap();
            return vec![t, c];
        }
    }
    let mut gens = Vec::new();
    let mut covered = vec![false; g.order()];
    covered[0] = true;
    for a in g.elements() {
        if !covered[a as usize] {
            gens.push(a);
            for b in g.generate(&gens) {
                covered[b as usize] = true;
            }
        }
    }
    gens
}

fn finish(
    g: &Group,
    mut raw: Vec<(Elem, String, Vec<(Elem, Elem)>, Arc<Subgroup>)>,
) -> Classes {
    raw.sort_by_key(|(rep, _, members, _)| (members.len(), *rep));
    let mut class_of = vec![0u32; g.order()];
    let mut conjugator = vec![0; g.order()];
    let mut out = Classes {
        reps: Vec::new(),
        labels: Vec::new(),
        sizes: Vec::new(),
        centralizers: Vec::new(),
        class_of: Vec::new(),
        conjugator: Vec::new(),
    };
    for (k, (rep, label, members, cent)) in raw.into_iter().enumerate() {
        for (a, h) in &members {
            class_of[*a as usize] = k as u32;
            conjugator[*a as usize] = *h;
        }
        out.reps.push(rep);
        out.labels.push(label);
        out.sizes.push(members.len());
        out.centralizers.push(cent);
    }
    out.class_of = class_of;
    out.conjugator = conjugator;
    out
}

fn orbit_classes(g: &Group) -> Classes {
    let gens = generators(g);
    let mut done = vec![false; g.order()];
    let mut raw = Vec::new();
    for a in g.elements() {
        if done[a as usize] {
            continue;
        }
        let rep = match g.perm(a) {
            Some(p) if g.order() == (1..=p.degree()).product::<usize>() => sym_standard_rep(g, &p.cycle_type()),
            _ => a,
        };
        let mut members = vec![(rep, 0)];
        done[rep as usize] = true;
        let mut i = 0;
        while i < members.len() {
            let (x, h) = members[i];
            for &s in &gens {
                let y = g.conj(s, x);
                if !done[y as usize] {
                    done[y as usize] = true;
                    members.push((y, g.mul(s, h)));
                }
            }
            i += 1;
        }
        let label = match g.perm(rep) {
            Some(p) if g.order() == (1..=p.degree()).product::<usize>() => {
                sym_class_label(&p.cycle_type()).to_string()
            }
            _ => g.label(rep),
        };
        let cent: Vec<Elem> = g.elements().filter(|&c| g.commute(c, rep)).collect();
        let cent = Subgroup::from_members(g, &format!("Z({label})"), cent).unwrap();
        raw.push((rep, label, members, Arc::new(cent)));
    }
    finish(g, raw)
}

fn abelian_classes(g: &Group) -> Classes {
    let whole = Arc::new(Subgroup::whole(g, g.name()));
    let raw = g.elements().map(|a| (a, g.label(a), vec![(a, 0)], whole.clone())).collect();
    finish(g, raw)
}

fn product_classes(g: &Group, factors: &[Arc<Group>]) -> Classes {
    let fc: Vec<Classes> = factors.iter().map(|f| Classes::compute(f)).collect();
    let mut raw = Vec::new();
    let mut idx = vec![0usize; factors.len()];
    loop {
        let rep = g.combine(&idx.iter().zip(&fc).map(|(&k, c)| c.reps[k]).collect::<Vec<_>>());
        let label = format!(
            "({})",
            idx.iter().zip(&fc).map(|(&k, c)| c.labels[k].clone()).collect::<Vec<_>>().join(",")
        );
        // class members: tuples of factor class members
        let mut members: Vec<(Elem, Elem)> = vec![(0, 0)];
        let mut parts: Vec<Vec<(Elem, Elem)>> = vec![vec![]];
        for (t, f) in factors.iter().enumerate() {
            let c = &fc[t];
            let mine: Vec<(Elem, Elem)> = f
                .elements()
                .filter(|&a| c.class_of(a) == idx[t])
                .map(|a| (a, c.conjugator(a)))
                .collect();
            let mut next = Vec::new();
            for p in &parts {
                for m in &mine {
                    let mut q = p.clone();
                    q.push(*m);
                    next.push(q);
                }
            }
            parts = next;
        }
        members.clear();
        for p in parts {
            let a: Vec<Elem> = p.iter().map(|x| x.0).collect();
            let h: Vec<Elem> = p.iter().map(|x| x.1).collect();
            members.push((g.combine(&a), g.combine(&h)));
        }
        let mut cent: Vec<Elem> = vec![0];
        let mut cparts: Vec<Vec<Elem>> = vec![vec![]];
        for (t, c) in fc.iter().enumerate() {
            let z = &c.centralizers[idx[t]];
            let mut next = Vec::new();
            for p in &cparts {
                for &m in z.members() {
                    let mut q = p.clone();
                    q.push(m);
                    next.push(q);
                }
            }
            cparts = next;
        }
        cent.clear();
        cent.extend(cparts.iter().map(|p| g.combine(p)));
        let cent = Subgroup::from_members_unchecked(&format!("Z({label})"), cent);
        raw.push((rep, label, members, Arc::new(cent)));
        // advance mixed-radix counter
        let mut t = factors.len();
        loop {
            if t == 0 {
                return finish(g, raw);
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < fc[t].len() {
                break;
            }
            idx[t] = 0;
        }
    }
}
