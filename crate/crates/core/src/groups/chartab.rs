use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::group::{Elem, Group, Subgroup};
use crate::groups::perm::Perm;
use crate::scalars::Cyclo;

/// Irreducible characters of a (sub)group, with labels.
///
/// Values are addressed by parent-group element; the element must be a
/// member of the subgroup the table belongs to.
pub struct CharTable {
    pub labels: Vec<String>,
    members: Vec<Elem>,
    values: Values,
}

enum Values {
    Dense(Vec<Vec<Cyclo>>),
    /// Characters of an elementary abelian 2-group in XOR coordinates:
    /// `chi_d(v) = (-1)^{popcount(d & v)}`.
    Dual,
    /// Tensor product of factor tables over a product group.
    Product { group: Arc<Group>, factors: Vec<Arc<CharTable>>, strides: Vec<usize> },
}

impl std::fmt::Debug for CharTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CharTable({:?})", self.labels)
    }
}

impl CharTable {
    pub fn dense(labels: Vec<String>, members: Vec<Elem>, values: Vec<Vec<Cyclo>>) -> CharTable {
        assert!(members.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(labels.len(), values.len());
        CharTable { labels, members, values: Values::Dense(values) }
    }

    /// Characters of the based space of dimension `dim` (all of it).
    pub fn dual(dim: usize) -> CharTable {
        let labels = (0..1u32 << dim).map(|d| crate::groups::group::based_label(d, dim, "d", "1")).collect();
        CharTable { labels, members: (0..1u32 << dim).collect(), values: Values::Dual }
    }

    /// Tensor product of per-factor tables; member lists are the product
    /// of the factor member lists inside `group`.
    pub fn product(group: Arc<Group>, factors: Vec<Arc<CharTable>>) -> CharTable {
        let mut strides = vec![1usize; factors.len()];
        for t in (0..factors.len().saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * factors[t + 1].len();
        }
        let mut labels = vec![String::new()];
        let mut members: Vec<Vec<Elem>> = vec![vec![]];
        for f in &factors {
            labels = labels
                .iter()
                .flat_map(|l| f.labels.iter().map(move |m| if l.is_empty() { m.clone() } else { format!("{l},{m}") }))
                .collect();
            members = members
                .iter()
                .flat_map(|p| {
                    f.members.iter().map(move |&m| {
                        let mut q = p.clone();
                        q.push(m);
                        q
                    })
                })
                .collect();
        }
        let labels = labels.into_iter().map(|l| format!("({l})")).collect();
        let mut members: Vec<Elem> = members.iter().map(|p| group.combine(p)).collect();
        members.sort_unstable();
        CharTable { labels, members, values: Values::Product { group, factors, strides } }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn group_order(&self) -> usize {
        self.members.len()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Splits a product-table character index into factor indices.
    pub fn split_index(&self, chi: usize) -> Vec<usize> {
        match &self.values {
            Values::Product { strides, .. } => {
                let mut c = chi;
                strides
                    .iter()
                    .map(|&s| {
                        let x = c / s;
                        c %= s;
                        x
                    })
                    .collect()
            }
            _ => vec![chi],
        }
    }

    pub fn value(&self, chi: usize, a: Elem) -> Cyclo {
        match &self.values {
            Values::Dense(v) => {
                let p = self.members.binary_search(&a).expect("element outside the character table's group");
                v[chi][p].clone()
            }
            Values::Dual => {
                if (chi as u32 & a).count_ones() % 2 == 0 {
                    Cyclo::one()
                } else {
                    Cyclo::from_int(-1)
                }
            }
            Values::Product { group, factors, .. } => {
                let parts = group.split(a);
                let idx = self.split_index(chi);
                let mut acc = Cyclo::one();
                for ((f, &x), &c) in factors.iter().zip(&parts).zip(&idx) {
                    acc = &acc * &f.value(c, x);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
        }
    }

    pub fn degree(&self, chi: usize) -> i64 {
        self.value(chi, 0).to_integer().expect("character degree")
    }

    /// Exact row and column orthogonality inside `g`.
    pub fn check_orthogonality(&self, g: &Group) -> Result<()> {
        let err = |m: String| Err(Error::Unsupported(format!("character table {:?}: {m}", self.labels)));
        let h = &self.members;
        let n = h.len() as i64;
        if let Values::Product { factors, group, .. } = &self.values {
            let mut deg2 = 0i64;
            for chi in 0..self.len() {
                deg2 += self.degree(chi).pow(2);
            }
            if deg2 != n {
                return err(format!("sum of squared degrees {deg2} != {n}"));
            }
            let fg = group.factors().expect("product group");
            for (f, h) in factors.iter().zip(fg) {
                f.check_orthogonality(h)?;
            }
            return Ok(());
        }
        let deg2: i64 = (0..self.len()).map(|c| self.degree(c).pow(2)).sum();
        if deg2 != n {
            return err(format!("sum of squared degrees {deg2} != {n}"));
        }
        if self.len() * h.len() > 1 << 16 {
            // large elementary abelian tables: rows are the distinct XOR characters
            return if matches!(self.values, Values::Dual) { Ok(()) } else { err("table too large to check".into()) };
        }
        let rows: Vec<Vec<Cyclo>> = (0..self.len()).map(|c| h.iter().map(|&a| self.value(c, a)).collect()).collect();
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                let s: Cyclo = rows[i].iter().zip(&rows[j]).map(|(x, y)| x * &y.conj()).sum();
                let want = if i == j { Cyclo::from_int(n) } else { Cyclo::zero() };
                if s != want {
                    return err(format!("rows {i} and {j} are not orthogonal"));
                }
            }
        }
        for (p, &a) in h.iter().enumerate() {
            let cent = h.iter().filter(|&&b| g.commute(a, b)).count() as i64;
            for (q, &b) in h.iter().enumerate() {
                let s: Cyclo = rows.iter().map(|r| &r[p] * &r[q].conj()).sum();
                let conjugate = h.iter().any(|&u| g.conj(u, a) == b);
                let want = if conjugate { Cyclo::from_int(cent) } else { Cyclo::zero() };
                if s != want {
                    return err(format!("columns at elements {a} and {b} are not orthogonal"));
                }
            }
        }
        Ok(())
    }
}

/// Character of the irreducible `S_n`-representation `lambda` at an element
/// of cycle type `mu`, by the Murnaghan-Nakayama rule on beta-sets.
pub fn sym_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let k = lambda.len();
    let beta: Vec<i64> = lambda.iter().enumerate().map(|(i, &l)| (l + k - 1 - i) as i64).collect();
    fn rec(beta: &mut Vec<i64>, mu: &[usize]) -> i64 {
        let Some((&r, rest)) = mu.split_first() else {
            return 1;
        };
        let r = r as i64;
        let mut total = 0;
        for j in 0..beta.len() {
            let b = beta[j];
            let nb = b - r;
            if nb < 0 || beta.contains(&nb) {
                continue;
            }
            let between = beta.iter().filter(|&&x| x > nb && x < b).count();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            beta[j] = nb;
            total += sign * rec(beta, rest);
            beta[j] = b;
        }
        total
    }
    let mut beta = beta;
    rec(&mut beta, mu)
}

/// Irreducibles of `S_n` (n <= 5) as partitions with their labels.
pub fn sym_irreducibles(n: usize) -> Vec<(Vec<usize>, &'static str)> {
    match n {
        0 | 1 => vec![(vec![n.max(1)], "1")],
        2 => vec![(vec![2], "1"), (vec![1, 1], "eps")],
        3 => vec![(vec![3], "1"), (vec![2, 1], "r"), (vec![1, 1, 1], "eps")],
        4 => vec![
            (vec![4], "1"),
            (vec![3, 1], "lambda1"),
            (vec![2, 1, 1], "lambda2"),
            (vec![1, 1, 1, 1], "lambda3"),
            (vec![2, 2], "sigma"),
        ],
        5 => vec![
            (vec![5], "1"),
            (vec![4, 1], "lambda1"),
            (vec![3, 1, 1], "lambda2"),
            (vec![2, 1, 1, 1], "lambda3"),
            (vec![1, 1, 1, 1, 1], "lambda4"),
            (vec![3, 2], "nu"),
            (vec![2, 2, 1], "nu'"),
        ],
        _ => panic!("S{n} is outside the catalog"),
    }
}

/// Restriction of a permutation to an invariant point set, relabelled in
/// increasing order.
fn restrict(p: &Perm, points: &[usize]) -> Perm {
    let img: Vec<u8> = points
        .iter()
        .map(|&k| points.iter().position(|&q| q == p.apply(k)).expect("point set is not invariant") as u8)
        .collect();
    Perm::from_images(img)
}

/// `k` with `p` agreeing with `c^k` on the support of the cycle `c`.
fn cyclic_power(p: &Perm, cycle: &[u8]) -> usize {
    let start = cycle[0] as usize;
    let img = p.apply(start) as u8;
    cycle.iter().position(|&q| q == img).expect("element does not preserve the cycle")
}

fn theta_label(j: usize) -> String {
    match j % 3 {
        0 => "1".into(),
        1 => "theta".into(),
        _ => "theta^2".into(),
    }
}

fn negate_label(l: &str) -> String {
    format!("-{l}")
}

/// Labelled character table of the centralizer of a class representative
/// of `S_n`, following the classical naming of these tables.
pub fn sym_centralizer_table(g: &Group, rep: Elem, label: &str, cent: &Subgroup) -> CharTable {
    let x = g.perm(rep).expect("permutation group").clone();
    let n = x.degree();
    let members = cent.members().to_vec();
    let perms: Vec<Perm> = members.iter().map(|&a| g.perm(a).unwrap().clone()).collect();
    let cycles = x.cycles();
    let fixed = x.fixed_points();
    let sym_of_fixed = |chi: &[usize], p: &Perm| -> i64 {
        if fixed.is_empty() {
            1
        } else {
            sym_character(chi, &restrict(p, &fixed).cycle_type())
        }
    };
    let fixed_irr = sym_irreducibles(fixed.len());
    let mut labels = Vec::new();
    let mut values: Vec<Vec<Cyclo>> = Vec::new();
    match label {
        "1" => {
            for (lam, name) in sym_irreducibles(n) {
                labels.push(name.to_string());
                values.push(perms.iter().map(|p| Cyclo::from_int(sym_character(&lam, &p.cycle_type()))).collect());
            }
        }
        "g2" | "g3" | "g4" | "g5" => {
            let c = &cycles[0];
            let l = c.len();
            for j in 0..l {
                for (lam, chi_name) in &fixed_irr {
                    let name = match (label, n) {
                        ("g2", 4) => match (j, *chi_name) {
                            (0, "1") => "1",
                            (1, "eps") => "eps",
                            (1, "1") => "eps'",
                            _ => "eps''",
                        }
                        .to_string(),
                        ("g2", 5) => {
                            if j == 0 {
                                chi_name.to_string()
                            } else {
                                negate_label(chi_name)
                            }
                        }
                        ("g2", _) => if j == 0 { "1" } else { "eps" }.to_string(),
                        ("g3", _) => match (*chi_name, j) {
                            ("1", _) => theta_label(j),
                            (_, 0) => "eps".into(),
                            _ => format!("eps*{}", theta_label(j)),
                        },
                        ("g4", _) => ["1", "i", "-1", "-i"][j].to_string(),
                        _ => if j == 0 { "1".to_string() } else if j == 1 { "zeta".into() } else { format!("zeta^{j}") },
                    };
                    labels.push(name);
                    values.push(
                        perms
                            .iter()
                            .map(|p| {
                                let k = cyclic_power(p, c);
                                &Cyclo::root_of_unity(l as u32, (j * k) as i64) * &Cyclo::from_int(sym_of_fixed(lam, p))
                            })
                            .collect(),
                    );
                }
            }
        }
        "g6" => {
            let (c3, c2) = if cycles[0].len() == 3 { (&cycles[0], &cycles[1]) } else { (&cycles[1], &cycles[0]) };
            for a in 0..2 {
                for j in 0..3 {
                    let name = if a == 0 { theta_label(j) } else { negate_label(&theta_label(j)) };
                    labels.push(name);
                    values.push(
                        perms
                            .iter()
                            .map(|p| {
                                let k3 = cyclic_power(p, c3);
                                let k2 = cyclic_power(p, c2);
                                &Cyclo::root_of_unity(3, (j * k3) as i64) * &Cyclo::root_of_unity(2, (a * k2) as i64)
                            })
                            .collect(),
                    );
                }
            }
        }
        "g2'" => {
            // Dihedral centralizer of (12)(34): linear characters named by kernel.
            let pts: Vec<usize> = (0..4).collect();
            let on4: Vec<Perm> = perms.iter().map(|p| restrict(p, &pts)).collect();
            let is_center = |p: &Perm| p.cycle_type() == vec![2, 2] && p.apply(0) == 1;
            // kernels: <(12),(34)>, the double transpositions, the 4-cycles
            let k1 = |p: &Perm| p.apply(0) < 2;
            let k2 = |p: &Perm| p.is_identity() || p.cycle_type() == vec![2, 2];
            let k3 = |p: &Perm| p.is_identity() || is_center(p) || p.cycle_type() == vec![4];
            let sign = |b: bool| Cyclo::from_int(if b { 1 } else { -1 });
            labels.push("1".into());
            values.push(on4.iter().map(|_| Cyclo::one()).collect());
            labels.push("eps".into());
            values.push(on4.iter().map(|p| sign(k3(p))).collect());
            labels.push("eps'".into());
            values.push(on4.iter().map(|p| sign(k2(p))).collect());
            labels.push("eps''".into());
            values.push(on4.iter().map(|p| sign(k1(p))).collect());
            labels.push("r".into());
            values.push(
                on4.iter()
                    .map(|p| {
                        if p.is_identity() {
                            Cyclo::from_int(2)
                        } else if is_center(p) {
                            Cyclo::from_int(-2)
                        } else {
                            Cyclo::zero()
                        }
                    })
                    .collect(),
            );
        }
        other => panic!("no centralizer table for class {other}"),
    }
    let mut rows: Vec<(String, Vec<Cyclo>)> = labels.into_iter().zip(values).collect();
    rows.sort_by(|a, b| label_order(&a.0).cmp(&label_order(&b.0)));
    let (labels, values) = rows.into_iter().unzip();
    CharTable::dense(labels, members, values)
}

/// Sort key for character labels: the trivial character first, then by
/// label text.
fn label_order(l: &str) -> (bool, String) {
    (l != "1", l.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::classes::Classes;
    use crate::groups::group::build_standard;

    #[test]
    fn murnaghan_nakayama_small_values() {
        assert_eq!(sym_character(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(sym_character(&[2, 1], &[3]), -1);
        assert_eq!(sym_character(&[3, 2], &[1, 1, 1, 1, 1]), 5);
        assert_eq!(sym_character(&[2, 2], &[2, 2]), 2);
        assert_eq!(sym_character(&[1, 1, 1, 1, 1], &[2, 1, 1, 1]), -1);
    }

    #[test]
    fn centralizer_tables_are_orthogonal() {
        for n in 1..=5 {
            let g = build_standard(&format!("S{n}")).unwrap();
            let c = Classes::compute(&g);
            let mut count = 0;
            for k in 0..c.len() {
                let t = sym_centralizer_table(&g, c.reps[k], &c.labels[k], &c.centralizers[k]);
                t.check_orthogonality(&g).unwrap();
                count += t.len();
            }
            assert_eq!(count, [1, 4, 8, 21, 39][n - 1]);
        }
    }

    #[test]
    fn sign_character_of_s2() {
        let g = build_standard("S2").unwrap();
        let c = Classes::compute(&g);
        let t = sym_centralizer_table(&g, 0, "1", &c.centralizers[0]);
        let eps = t.index_of_label("eps").unwrap();
        assert_eq!(t.value(eps, 1), Cyclo::from_int(-1));
    }
}
