//! The bijections `𝒞̃(V^delta) -> ℱ(V)`, `(B, k) -> B(k)` and
//! `𝔽̃_delta(V) -> 𝔽(V)`, and exhaustive sweeps of their properties.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::families::{
    c_subspaces, check_delta, interval_family, subspace_family, tilde_c_pairs, Caps, Family, LPair,
};
use crate::classical::interval::IntervalSet;
use crate::classical::space::{e, parity_mask, t_map, t_map_delta};
use crate::classical::subspace::F2Subspace;
use crate::classical::zdecomp::{b_of_k, lambda_inverse, quotient_symplectic_basis, z_of};
use crate::error::{Error, Result};

/// `alpha(L1 ⊆ L2) = L1 + L2^!`.
pub fn alpha(p: &LPair, d: usize) -> F2Subspace {
    p.l1.sum(&p.l2.shriek(d, p.delta))
}

/// The member of `S_D` spanning each subspace of `ℱ(V)`.
fn s_index(d: usize, caps: &Caps) -> Result<Arc<HashMap<F2Subspace, IntervalSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HashMap<F2Subspace, IntervalSet>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&d) {
        return Ok(m.clone());
    }
    let map: HashMap<F2Subspace, IntervalSet> =
        interval_family(Family::SD, d, caps)?.iter().map(|b| (b.span(), b.clone())).collect();
    let map = Arc::new(map);
    cache.lock().unwrap().insert(d, map.clone());
    Ok(map)
}

/// The `B` in `S_D` with `⌊B⌋ = E`.
pub fn interval_set_of(e: &F2Subspace, d: usize, caps: &Caps) -> Result<IntervalSet> {
    s_index(d, caps)?.get(e).cloned().ok_or_else(|| Error::NotInFamily(format!("{e} is not in F(V) for D = {d}")))
}

/// `(L1, L2, eps)` with `eps` the `k`-th primitive subspace of
/// `L2/L1 + (L2/L1)^*`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FTriple {
    pub pair: LPair,
    pub k: usize,
}

impl fmt::Display for FTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, eps{})", self.pair.l1, self.pair.l2, self.k)
    }
}

/// `𝔽̃_delta(V)`.
pub fn tilde_ff_triples(d: usize, delta: u8, caps: &Caps) -> Result<Vec<FTriple>> {
    let mut out = Vec::new();
    for p in tilde_c_pairs(d, delta, caps)?.iter() {
        let m = 2 * (p.l2.dim() - p.l1.dim());
        out.extend((0..=m / 2).map(|k| FTriple { pair: p.clone(), k }));
    }
    Ok(out)
}

/// `(L1, L2)(eps)`: the inverse image of `eps` in `E^⊥`, `E = alpha(L1 ⊆ L2)`.
pub fn theta_217(t: &FTriple, d: usize, caps: &Caps) -> Result<F2Subspace> {
    let e = alpha(&t.pair, d);
    let b = interval_set_of(&e, d, caps)?;
    let q = quotient_symplectic_basis(&b)?;
    if q.dim() != 2 * (t.pair.l2.dim() - t.pair.l1.dim()) {
        return Err(Error::Reconstruction(format!("quotient of {} has dimension {}", t.pair, q.dim())));
    }
    q.primitive_preimage(t.k)
}

/// Outcome of one exhaustive sweep.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Sweep {
    pub name: String,
    pub d: usize,
    pub delta: Option<u8>,
    pub checked: usize,
    /// At most a few witnesses.
    pub failures: Vec<String>,
}

const MAX_WITNESSES: usize = 5;

impl Sweep {
    fn new(name: &str, d: usize, delta: Option<u8>) -> Sweep {
        Sweep { name: name.into(), d, delta, checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let delta = self.delta.map(|d| format!(" delta={d}")).unwrap_or_default();
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{} D={}{}: {} checked, {}", self.name, self.d, delta, self.checked, status)?;
        for w in &self.failures {
            write!(f, "\n    {w}")?;
        }
        Ok(())
    }
}

/// Both statements of the shriek/`T_i` lemma for every `L'` in
/// `𝒞(V'^delta)` and every `i`.
pub fn sweep_shriek_lemma(d: usize, delta: u8, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    check_delta(delta)?;
    let mut s = Sweep::new("shriek-lemma", d, Some(delta));
    if d < 2 {
        return Ok(s);
    }
    let dp = d - 2;
    for l in c_subspaces(dp, delta, caps)?.iter() {
        let l_shriek = l.shriek(dp, delta);
        for i in 1..=d {
            let left = l_shriek.map(|v| t_map_delta(d, i, v));
            let image = l.map(|v| t_map_delta(d, i, v));
            let (lhs, rhs) = if i % 2 == delta as usize {
                (left, image.with(e(i)).shriek(d, delta))
            } else {
                (left.with(e(i)), image.shriek(d, delta))
            };
            s.record(lhs == rhs, || format!("L'={l} i={i}: {lhs} != {rhs}"));
        }
    }
    Ok(s)
}

/// `L^!` lies in `𝒞(V^{1-delta})` and `L + L^!` in `ℱ(V)`.
pub fn sweep_shriek_members(d: usize, delta: u8, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("shriek-members", d, Some(delta));
    let other: HashSet<F2Subspace> = c_subspaces(d, 1 - delta, caps)?.iter().cloned().collect();
    let f: HashSet<F2Subspace> = subspace_family(Family::F, d, caps)?.iter().cloned().collect();
    for l in c_subspaces(d, delta, caps)?.iter() {
        let sh = l.shriek(d, delta);
        let sum = l.sum(&sh);
        s.record(other.contains(&sh) && f.contains(&sum), || format!("L={l}: L^!={sh}"));
    }
    Ok(s)
}

/// `alpha` is a bijection `𝒞̃(V^delta) -> ℱ(V)`, and every `E` in `ℱ(V)`
/// splits as `E^0 + E^1` with `E^delta` spanned by the parity parts of
/// the odd members of the matching `B`.
pub fn sweep_alpha(d: usize, delta: u8, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("alpha", d, Some(delta));
    let f = subspace_family(Family::F, d, caps)?;
    let fset: HashSet<&F2Subspace> = f.iter().collect();
    let pairs = tilde_c_pairs(d, delta, caps)?;
    let mut seen = HashSet::new();
    for p in pairs.iter() {
        let a = alpha(p, d);
        let ok = fset.contains(&a) && seen.insert(a.clone()) && p.l1.is_subspace_of(&p.l2);
        s.record(ok, || format!("{p} -> {a}"));
    }
    if seen.len() != f.len() {
        s.fail(format!("image has {} members, F(V) has {}", seen.len(), f.len()));
    }
    for b in interval_family(Family::SD, d, caps)?.iter() {
        let e_full = b.span();
        let split = (0..2u8).all(|dl| {
            let mask = parity_mask(d, dl);
            let gens = b.iter().filter(|iv| iv.kappa() == Some(dl)).map(|iv| iv.mask() & mask);
            e_full.restrict(mask) == F2Subspace::span(gens)
        });
        s.record(split && e_full.restrict(parity_mask(d, 0)).sum(&e_full.restrict(parity_mask(d, 1))) == e_full, || {
            format!("{b} does not split by parity")
        });
    }
    Ok(s)
}

/// `(B, k) -> B(k)` is a bijection onto `𝕊_D`, with inverse
/// [`lambda_inverse`].
pub fn sweep_lambda(d: usize, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("lambda", d, None);
    let ss = interval_family(Family::SSD, d, caps)?;
    let ssset: HashSet<&IntervalSet> = ss.iter().collect();
    let mut image = HashSet::new();
    for b in interval_family(Family::SD, d, caps)?.iter() {
        for k in 0..=d / 2 - b.len() {
            match b_of_k(b, k) {
                Ok(bk) => {
                    let ok = ssset.contains(&bk) && image.insert(bk.clone());
                    s.record(ok, || format!("({b}, {k}) -> {bk}"));
                }
                Err(err) => s.record(false, || format!("({b}, {k}): {err}")),
            }
        }
    }
    if image.len() != ss.len() {
        s.fail(format!("image has {} members, SS_D has {}", image.len(), ss.len()));
    }
    for bhat in ss.iter() {
        let back = lambda_inverse(bhat);
        s.record(back.is_ok(), || format!("{bhat}: {}", back.unwrap_err()));
    }
    Ok(s)
}

/// `(L1, L2, eps) -> (L1, L2)(eps)` is a bijection `𝔽̃_delta(V) -> 𝔽(V)`.
pub fn sweep_theta(d: usize, delta: u8, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("theta", d, Some(delta));
    let ff = subspace_family(Family::FF, d, caps)?;
    let ffset: HashSet<&F2Subspace> = ff.iter().collect();
    let triples = tilde_ff_triples(d, delta, caps)?;
    let images: Vec<Result<F2Subspace>> = triples.par_iter().map(|t| theta_217(t, d, caps)).collect();
    let mut seen = HashSet::new();
    for (t, img) in triples.iter().zip(images) {
        match img {
            Ok(x) => {
                let ok = ffset.contains(&x) && seen.insert(x.clone());
                s.record(ok, || format!("{t} -> {x}"));
            }
            Err(err) => s.record(false, || format!("{t}: {err}")),
        }
    }
    if seen.len() != ff.len() {
        s.fail(format!("image has {} members, FF(V) has {}", seen.len(), ff.len()));
    }
    Ok(s)
}

/// For every `B` in `S_D`: `|z(B)| = D - 2|B|`, the vectors `e_I` over
/// `B ∪ z(B)` are independent, `⌊B ∪ z(B)⌋ = ⌊B⌋^⊥`, and the form on
/// `e_{I_1}..e_{I_M}` is the chain.
pub fn sweep_z(d: usize, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("z-decomposition", d, None);
    for b in interval_family(Family::SD, d, caps)?.iter() {
        let z = match z_of(b) {
            Ok(z) => z,
            Err(err) => {
                s.record(false, || err.to_string());
                continue;
            }
        };
        let m = z.m();
        let all = z.z_set().masks().into_iter().chain(b.masks());
        let span = F2Subspace::span(all);
        let perp = b.span().perp(d);
        let q = quotient_symplectic_basis(b)?;
        let chain = q.gram().iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(c, &x)| x == (a.abs_diff(c) == 1)));
        let ok = m == d - 2 * b.len() && span.dim() == b.len() + m && span == perp && chain;
        s.record(ok, || format!("{b} -> {z}"));
    }
    Ok(s)
}

/// `B -> ⌊B⌋` is injective on `S_D` with image `ℱ(V)`, and on `𝕊_D` with
/// image `𝔽(V)`; the `e_I` are a basis; `ℱ(V) ⊆ 𝔽(V)`; members of `𝔽(V)`
/// are isotropic; the odd members of `𝕊_D` are exactly `S_D`.
pub fn sweep_spans(d: usize, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("spans", d, None);
    for (sets, spaces, name) in [(Family::SD, Family::F, "S_D"), (Family::SSD, Family::FF, "SS_D")] {
        let sets = interval_family(sets, d, caps)?;
        let spaces = subspace_family(spaces, d, caps)?;
        let target: HashSet<&F2Subspace> = spaces.iter().collect();
        let mut image = HashSet::new();
        for b in sets.iter() {
            let sp = b.span();
            let ok = sp.dim() == b.len() && target.contains(&sp) && image.insert(sp.clone());
            s.record(ok, || format!("{name}: {b} -> {sp}"));
        }
        if image.len() != spaces.len() {
            s.fail(format!("{name}: image has {} members of {}", image.len(), spaces.len()));
        }
    }
    let ff: HashSet<F2Subspace> = subspace_family(Family::FF, d, caps)?.iter().cloned().collect();
    for e in subspace_family(Family::F, d, caps)?.iter() {
        s.record(ff.contains(e), || format!("{e} in F(V) but not FF(V)"));
    }
    for e in ff.iter() {
        s.record(e.is_isotropic(), || format!("{e} is not isotropic"));
    }
    let odd: HashSet<IntervalSet> =
        interval_family(Family::SSD, d, caps)?.iter().filter(|b| b.all_odd()).cloned().collect();
    let sd: HashSet<IntervalSet> = interval_family(Family::SD, d, caps)?.iter().cloned().collect();
    s.record(odd == sd, || "odd members of SS_D differ from S_D".into());
    Ok(s)
}

/// `T_i` commutes with `B -> ⌊B⌋` along `t_i` on `𝕊_{D-2}`.
pub fn sweep_insertion(d: usize, caps: &Caps) -> Result<Sweep> {
    caps.check_sweep(d)?;
    let mut s = Sweep::new("insertion", d, None);
    if d < 2 {
        return Ok(s);
    }
    for b in interval_family(Family::SSD, d - 2, caps)?.iter() {
        for i in 1..=d {
            let lhs = b.t_insert(i)?.span();
            let rhs = b.span().map(|v| t_map(d, i, v)).with(e(i));
            s.record(lhs == rhs, || format!("t_{i}({b})"));
        }
    }
    Ok(s)
}

/// Every check above for one `D` (both `delta` where it matters).
pub fn all_sweeps(d: usize, caps: &Caps) -> Result<Vec<Sweep>> {
    let mut out = vec![sweep_spans(d, caps)?, sweep_insertion(d, caps)?, sweep_z(d, caps)?, sweep_lambda(d, caps)?];
    for delta in 0..2 {
        out.push(sweep_shriek_lemma(d, delta, caps)?);
        out.push(sweep_shriek_members(d, delta, caps)?);
        out.push(sweep_alpha(d, delta, caps)?);
        out.push(sweep_theta(d, delta, caps)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_of_the_base_pair_is_zero() {
        for d in [2usize, 4] {
            for delta in 0..2 {
                let p = LPair {
                    l1: F2Subspace::zero(),
                    l2: F2Subspace::coordinate(parity_mask(d, delta)),
                    delta,
                };
                assert_eq!(alpha(&p, d), F2Subspace::zero());
            }
        }
    }

    #[test]
    fn sweeps_small() {
        let caps = Caps::default();
        for d in [0usize, 2, 4, 6] {
            for s in all_sweeps(d, &caps).unwrap() {
                assert!(s.passed(), "{s}");
            }
        }
    }
}
