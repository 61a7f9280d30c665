//! Checks that a basis of `C[M(G)]` is bipositive, carries a unique
//! diagonal bijection `iota`, and is unitriangular with integer entries.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::exceptional::{basis_beta, variant_basis};
use crate::groups::Descriptor;
use crate::mspace::{MPair, MSpace, MVector};

/// Tolerance for positivity of irrational real cyclotomics.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One named check with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass(name: &str) -> Check {
        Check { name: name.into(), passed: true, witness: None }
    }

    fn fail(name: &str, witness: String) -> Check {
        Check { name: name.into(), passed: false, witness: Some(witness) }
    }
}

/// `iota(x,rho)` with the provenance of the basis vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IotaEntry {
    pub pair: String,
    pub basis_index: usize,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub size: usize,
    pub checks: Vec<Check>,
    pub iota: Vec<IotaEntry>,
    /// Pairs in an order making the change of basis unitriangular.
    pub order: Vec<String>,
    /// Pairs `m` with `A(iota(m)) = iota(m)`.
    pub fixed_points: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Every coefficient of every `b` and `A(b)` is a nonnegative real.
pub fn check_bipositivity(basis: &[MVector], tol: f64) -> Check {
    const NAME: &str = "bipositivity";
    for (j, b) in basis.iter().enumerate() {
        for (side, v) in [("b", b.clone()), ("A(b)", b.fourier())] {
            if let Some((m, c)) = v.terms().find(|(_, c)| !c.is_nonneg_real(tol)) {
                let label = v.space().label(m);
                return Check::fail(NAME, format!("basis[{j}] = {b}: {side} has coefficient {c} at {label}"));
            }
        }
    }
    Check::pass(NAME)
}

/// Augmenting-path search from `m` (pairs on the left, basis vectors on
/// the right, an edge when the pair occurs in the vector).
fn augment(m: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &j in &adj[m] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none() || augment(owner[j].unwrap(), adj, seen, owner) {
            owner[j] = Some(m);
            return true;
        }
    }
    false
}

/// Directed graph on pairs: `m -> m'` when `m' != m` occurs in `iota(m)`.
fn support_graph(space: &MSpace, basis: &[MVector], iota: &[usize]) -> Vec<Vec<usize>> {
    (0..space.len()).map(|m| basis[iota[m]].support().map(|p| p.0).filter(|&p| p != m).collect()).collect()
}

/// A directed cycle among the vertices not yet ordered.
fn find_cycle(graph: &[Vec<usize>], done: &[bool]) -> Vec<usize> {
    let start = (0..graph.len()).find(|&v| !done[v]).expect("a remaining vertex");
    // every remaining vertex has a remaining successor, so walking must repeat
    let mut path = vec![start];
    let mut pos = vec![usize::MAX; graph.len()];
    pos[start] = 0;
    loop {
        let v = *path.last().unwrap();
        let next = graph[v].iter().copied().find(|&w| !done[w]).expect("remaining successor");
        if pos[next] != usize::MAX {
            return path[pos[next]..].to_vec();
        }
        pos[next] = path.len();
        path.push(next);
    }
}

/// Kahn's algorithm; ties broken by class size, then label. Returns the
/// order, or a cycle.
fn topological_order(space: &MSpace, graph: &[Vec<usize>]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let n = graph.len();
    // emit a vertex once nothing still unordered points into it
    let mut indeg = vec![0usize; n];
    for succ in graph {
        for &w in succ {
            indeg[w] += 1;
        }
    }
    let key = |m: usize| {
        let class = space.class_of_pair(MPair(m));
        Reverse((space.classes.sizes[class], space.label(MPair(m)), m))
    };
    let mut heap: BinaryHeap<_> = (0..n).filter(|&m| indeg[m] == 0).map(key).collect();
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while let Some(Reverse((_, _, m))) = heap.pop() {
        order.push(m);
        done[m] = true;
        for &w in &graph[m] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(key(w));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        // reverse the edges of the remaining part: every such vertex has a remaining predecessor
        let mut rev = vec![Vec::new(); n];
        for (v, succ) in graph.iter().enumerate() {
            for &w in succ {
                rev[w].push(v);
            }
        }
        let mut cycle = find_cycle(&rev, &done);
        cycle.reverse();
        Err(cycle)
    }
}

fn cycle_text(space: &MSpace, cycle: &[usize]) -> String {
    let labels: Vec<String> = cycle.iter().map(|&m| space.label(MPair(m))).collect();
    format!("{} -> {}", labels.join(" -> "), labels[0])
}

/// The bijection `iota : M(G) -> basis` with each pair occurring in its
/// own image, certified unique. Returns `iota` as basis indices.
pub fn check_iota(space: &Arc<MSpace>, basis: &[MVector]) -> (Check, Option<Vec<usize>>) {
    const NAME: &str = "unique-iota";
    let n = space.len();
    if basis.len() != n {
        return (Check::fail(NAME, format!("{} vectors for {n} pairs", basis.len())), None);
    }
    let mut adj = vec![Vec::new(); n];
    for (j, b) in basis.iter().enumerate() {
        for m in b.support() {
            adj[m.0].push(j);
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for m in 0..n {
        let mut seen = vec![false; n];
        if !augment(m, &adj, &mut seen, &mut owner) {
            return (Check::fail(NAME, format!("no vector left for {}", space.label(MPair(m)))), None);
        }
    }
    let mut iota = vec![0usize; n];
    for (j, m) in owner.iter().enumerate() {
        iota[m.expect("perfect matching")] = j;
    }
    // another perfect matching exists iff there is an alternating cycle,
    // i.e. a cycle in the support graph
    let graph = support_graph(space, basis, &iota);
    match topological_order(space, &graph) {
        Ok(_) => (Check::pass(NAME), Some(iota)),
        Err(cycle) => (Check::fail(NAME, format!("alternating cycle {}", cycle_text(space, &cycle))), Some(iota)),
    }
}

/// Orders the pairs so that `iota(m)` involves only `m` and later pairs;
/// checks that the diagonal is `1` and every entry an integer.
pub fn check_triangular(space: &Arc<MSpace>, basis: &[MVector], iota: &[usize]) -> (Check, Option<Vec<MPair>>) {
    const NAME: &str = "unitriangular";
    for (m, &j) in iota.iter().enumerate() {
        let b = &basis[j];
        let diag = b.coeff(MPair(m));
        if !diag.is_one() {
            return (Check::fail(NAME, format!("coefficient {diag} of {} in {b}", space.label(MPair(m)))), None);
        }
        if let Some((p, c)) = b.terms().find(|(_, c)| !c.is_integer()) {
            return (Check::fail(NAME, format!("non-integer {c} at {} in {b}", space.label(p))), None);
        }
    }
    let graph = support_graph(space, basis, iota);
    match topological_order(space, &graph) {
        Ok(order) => (Check::pass(NAME), Some(order.into_iter().map(MPair).collect())),
        Err(cycle) => (Check::fail(NAME, format!("cycle {}", cycle_text(space, &cycle))), None),
    }
}

/// Pairs `m` whose `iota(m)` is fixed by `A`, compared exactly.
pub fn fixed_points(space: &Arc<MSpace>, basis: &[MVector], iota: &[usize]) -> Vec<MPair> {
    (0..space.len()).filter(|&m| basis[iota[m]].fourier() == basis[iota[m]]).map(MPair).collect()
}

/// Exact unitarity of the Fourier matrix.
pub fn check_fourier_unitary(space: &Arc<MSpace>) -> Check {
    if space.fourier_is_unitary() {
        Check::pass("fourier-unitary")
    } else {
        Check::fail("fourier-unitary", format!("A is not unitary on M({})", space.descriptor()))
    }
}

/// Exact orthogonality of every centralizer character table.
pub fn check_character_tables(space: &Arc<MSpace>) -> Check {
    for c in 0..space.classes.len() {
        if let Err(e) = space.table(c).check_orthogonality(&space.group) {
            return Check::fail("character-orthogonality", format!("class {}: {e}", space.classes.labels[c]));
        }
    }
    Check::pass("character-orthogonality")
}

/// Runs every check on a basis given with its provenance strings.
pub fn verify_basis(space: &Arc<MSpace>, basis: &[(String, MVector)], tol: f64) -> VerificationReport {
    let vectors: Vec<MVector> = basis.iter().map(|(_, v)| v.clone()).collect();
    let mut checks = vec![check_bipositivity(&vectors, tol)];
    let (iota_check, iota) = check_iota(space, &vectors);
    checks.push(iota_check);
    let mut report = VerificationReport {
        group: space.descriptor().to_string(),
        size: space.len(),
        checks,
        iota: Vec::new(),
        order: Vec::new(),
        fixed_points: Vec::new(),
    };
    let Some(iota) = iota else {
        report.checks.push(Check::fail("unitriangular", "no bijection iota".into()));
        return report;
    };
    let (tri, order) = check_triangular(space, &vectors, &iota);
    report.checks.push(tri);
    report.iota = (0..space.len())
        .map(|m| IotaEntry { pair: space.label(MPair(m)), basis_index: iota[m], source: basis[iota[m]].0.clone() })
        .collect();
    report.order = order.unwrap_or_default().into_iter().map(|m| space.label(m)).collect();
    report.fixed_points = fixed_points(space, &vectors, &iota).into_iter().map(|m| space.label(m)).collect();
    report
}

/// `beta(G)` (or, for `S5`, the variant basis) with the full suite,
/// including the Fourier and character-table checks.
pub fn verify_group(desc: &Descriptor, tol: f64, variant: bool) -> Result<VerificationReport> {
    let space = MSpace::of(desc)?;
    let basis: Vec<(String, MVector)> = if variant {
        variant_basis()?.into_iter().map(|b| (b.source, b.vector)).collect()
    } else {
        basis_beta(desc)?.into_iter().map(|b| (b.source, b.vector)).collect()
    };
    let mut report = verify_basis(&space, &basis, tol);
    report.checks.push(check_fourier_unitary(&space));
    report.checks.push(check_character_tables(&space));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> Arc<MSpace> {
        MSpace::parse("S2").unwrap()
    }

    #[test]
    fn standard_basis_is_trivially_unitriangular() {
        let space = s2();
        let basis: Vec<MVector> = space.pairs().map(|m| MVector::basis(&space, m)).collect();
        let (c, iota) = check_iota(&space, &basis);
        assert!(c.passed);
        assert_eq!(iota.clone().unwrap(), vec![0, 1, 2, 3]);
        assert!(check_triangular(&space, &basis, &iota.unwrap()).0.passed);
    }

    #[test]
    fn negative_coefficient_is_reported() {
        let space = s2();
        let v = MVector::parse(&space, "(1,1)-(1,eps)").unwrap();
        let c = check_bipositivity(&[v], DEFAULT_TOLERANCE);
        assert!(!c.passed);
        assert!(c.witness.unwrap().contains("(1,eps)"));
    }

    #[test]
    fn two_matchings_are_detected() {
        let space = s2();
        let mut basis: Vec<MVector> = space.pairs().map(|m| MVector::basis(&space, m)).collect();
        basis[0] = MVector::parse(&space, "(1,1)+(1,eps)").unwrap();
        basis[1] = MVector::parse(&space, "(1,1)+(1,eps)").unwrap();
        let (c, _) = check_iota(&space, &basis);
        assert!(!c.passed);
        assert!(c.witness.unwrap().contains("cycle"));
    }

    #[test]
    fn s2_report() {
        let r = verify_group(&Descriptor::Sym(2), DEFAULT_TOLERANCE, false).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        let lambda = r.iota.iter().find(|e| e.pair == "(g2,eps)").unwrap();
        assert_eq!(lambda.source, "s[S1,S2](Lambda(-1))");
    }
}
