//! The recursively defined families of interval sets and subspaces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::classical::interval::IntervalSet;
use crate::classical::space::{e, parity_mask, t_map, t_map_delta};
use crate::classical::subspace::F2Subspace;
use crate::error::{Error, Result};

/// Enumeration limits on `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `D` for which a family is enumerated.
    pub family: usize,
    /// Largest `D` for the quadratic-cost property sweeps.
    pub sweep: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { family: 16, sweep: 12 }
    }
}

impl Caps {
    pub fn check_family(&self, d: usize) -> Result<()> {
        check_even(d)?;
        if d > self.family {
            return Err(Error::EnumerationCap { d, cap: self.family });
        }
        Ok(())
    }

    pub fn check_sweep(&self, d: usize) -> Result<()> {
        check_even(d)?;
        if d > self.sweep {
            return Err(Error::EnumerationCap { d, cap: self.sweep });
        }
        Ok(())
    }
}

fn check_even(d: usize) -> Result<()> {
    if d % 2 == 1 {
        return Err(Error::OutOfRange(format!("odd D = {d}")));
    }
    Ok(())
}

/// The families that can be listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `S_D`: odd intervals, closed under `t_i`.
    SD,
    /// `𝕊_D`: primitive sets and their `t_i`-closure.
    SSD,
    /// Primitive members of `𝕊_D`.
    SSDPrim,
    /// `ℱ(V)`.
    F,
    /// `𝔽(V)`.
    FF,
    /// `𝒞(V^delta)`.
    C,
    /// `𝒞̃(V^delta)`.
    TildeC,
    /// Triples `(L1, L2, eps)` indexing `𝔽(V)`.
    TildeFF,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Ok(match s {
            "SD" => Family::SD,
            "SSD" => Family::SSD,
            "SSDprim" => Family::SSDPrim,
            "F" => Family::F,
            "FF" => Family::FF,
            "C" => Family::C,
            "tildeC" => Family::TildeC,
            "tildeFF" => Family::TildeFF,
            _ => return Err(Error::Parse(format!("unknown family `{s}`"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::SD => "SD",
            Family::SSD => "SSD",
            Family::SSDPrim => "SSDprim",
            Family::F => "F",
            Family::FF => "FF",
            Family::C => "C",
            Family::TildeC => "tildeC",
            Family::TildeFF => "tildeFF",
        };
        f.write_str(s)
    }
}

/// A pair `L1 ⊆ L2` of subspaces of `V^delta`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LPair {
    pub l1: F2Subspace,
    pub l2: F2Subspace,
    pub delta: u8,
}

impl fmt::Display for LPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ⊆ {})", self.l1, self.l2)
    }
}

type Cache<T> = OnceLock<Mutex<HashMap<(usize, u8), Arc<Vec<T>>>>>;

fn cached<T>(cache: &'static Cache<T>, key: (usize, u8), build: impl FnOnce() -> Vec<T>) -> Arc<Vec<T>> {
    let c = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = c.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(build());
    c.lock().unwrap().insert(key, v.clone());
    v
}

/// Sorted by size, then by members.
fn sorted_sets(set: BTreeSet<IntervalSet>) -> Vec<IntervalSet> {
    let mut v: Vec<IntervalSet> = set.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn sorted_spaces(set: BTreeSet<F2Subspace>) -> Vec<F2Subspace> {
    let mut v: Vec<F2Subspace> = set.into_iter().collect();
    v.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    v
}

/// `{t_i(B') : i in [1,D], B' in prev}`.
fn insert_all(prev: &[IntervalSet], d: usize) -> BTreeSet<IntervalSet> {
    prev.par_iter()
        .flat_map_iter(|b| (1..=d).map(move |i| b.t_insert(i).expect("t_i stays in range")))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn s_family(d: usize) -> Arc<Vec<IntervalSet>> {
    static CACHE: Cache<IntervalSet> = OnceLock::new();
    cached(&CACHE, (d, 0), || {
        let mut out = BTreeSet::new();
        out.insert(IntervalSet::empty(d));
        if d >= 2 {
            out.extend(insert_all(&s_family(d - 2), d));
        }
        sorted_sets(out)
    })
}

fn ss_family(d: usize) -> Arc<Vec<IntervalSet>> {
    static CACHE: Cache<IntervalSet> = OnceLock::new();
    cached(&CACHE, (d, 0), || {
        let mut out: BTreeSet<IntervalSet> = (0..=d / 2).map(|k| IntervalSet::primitive(d, k).unwrap()).collect();
        if d >= 2 {
            out.extend(insert_all(&ss_family(d - 2), d));
        }
        sorted_sets(out)
    })
}

/// `S_D`, `𝕊_D` or `𝕊_D^prim`.
pub fn interval_family(kind: Family, d: usize, caps: &Caps) -> Result<Arc<Vec<IntervalSet>>> {
    caps.check_family(d)?;
    match kind {
        Family::SD => Ok(s_family(d)),
        Family::SSD => Ok(ss_family(d)),
        Family::SSDPrim => Ok(Arc::new(ss_family(d).iter().filter(|b| b.is_primitive()).cloned().collect())),
        _ => Err(Error::Unsupported(format!("{kind} is not a family of interval sets"))),
    }
}

/// `{T_i(E') + <e_i>}` over `E'` in `prev`, `i` in `[1,D]`.
fn extend_all(prev: &[F2Subspace], d: usize) -> BTreeSet<F2Subspace> {
    prev.par_iter()
        .flat_map_iter(|s| (1..=d).map(move |i| s.map(|v| t_map(d, i, v)).with(e(i))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn f_family(d: usize) -> Arc<Vec<F2Subspace>> {
    static CACHE: Cache<F2Subspace> = OnceLock::new();
    cached(&CACHE, (d, 0), || {
        let mut out = BTreeSet::new();
        out.insert(F2Subspace::zero());
        if d >= 2 {
            out.extend(extend_all(&f_family(d - 2), d));
        }
        sorted_spaces(out)
    })
}

fn ff_family(d: usize) -> Arc<Vec<F2Subspace>> {
    static CACHE: Cache<F2Subspace> = OnceLock::new();
    cached(&CACHE, (d, 0), || {
        let mut out: BTreeSet<F2Subspace> = (0..=d / 2).map(|k| IntervalSet::primitive(d, k).unwrap().span()).collect();
        if d >= 2 {
            out.extend(extend_all(&ff_family(d - 2), d));
        }
        sorted_spaces(out)
    })
}

/// `ℱ(V)` or `𝔽(V)`.
pub fn subspace_family(kind: Family, d: usize, caps: &Caps) -> Result<Arc<Vec<F2Subspace>>> {
    caps.check_family(d)?;
    match kind {
        Family::F => Ok(f_family(d)),
        Family::FF => Ok(ff_family(d)),
        _ => Err(Error::Unsupported(format!("{kind} is not a family of subspaces of V"))),
    }
}

/// Positions `i` in `[1,D]` with `i = parity mod 2`.
pub fn positions(d: usize, parity: u8) -> impl Iterator<Item = usize> {
    (1..=d).filter(move |i| i % 2 == parity as usize)
}

/// The two recursive steps shared by `𝒞` and `𝒞̃`: for `i` of parity
/// `delta`, `T_i^delta(L') + <e_i>`; for the other parity, `T_i^delta(L')`.
pub fn c_step(d: usize, delta: u8, i: usize, l: &F2Subspace) -> F2Subspace {
    let image = l.map(|v| t_map_delta(d, i, v));
    if i % 2 == delta as usize {
        image.with(e(i))
    } else {
        image
    }
}

fn c_family(d: usize, delta: u8) -> Arc<Vec<F2Subspace>> {
    static CACHE: Cache<F2Subspace> = OnceLock::new();
    cached(&CACHE, (d, delta), || {
        let mut out = BTreeSet::new();
        if d == 0 {
            out.insert(F2Subspace::zero());
        } else {
            let prev = c_family(d - 2, delta);
            out.extend(prev.iter().flat_map(|l| (1..=d).map(move |i| c_step(d, delta, i, l))));
        }
        sorted_spaces(out)
    })
}

/// `𝒞(V^delta)`.
pub fn c_subspaces(d: usize, delta: u8, caps: &Caps) -> Result<Arc<Vec<F2Subspace>>> {
    caps.check_family(d)?;
    check_delta(delta)?;
    Ok(c_family(d, delta))
}

fn tilde_c_family(d: usize, delta: u8) -> Arc<Vec<LPair>> {
    static CACHE: Cache<LPair> = OnceLock::new();
    cached(&CACHE, (d, delta), || {
        let mut out = BTreeSet::new();
        if d == 0 {
            out.insert(LPair { l1: F2Subspace::zero(), l2: F2Subspace::zero(), delta });
        } else {
            out.insert(LPair {
                l1: F2Subspace::zero(),
                l2: F2Subspace::coordinate(parity_mask(d, delta)),
                delta,
            });
            for p in tilde_c_family(d - 2, delta).iter() {
                for i in 1..=d {
                    out.insert(LPair { l1: c_step(d, delta, i, &p.l1), l2: c_step(d, delta, i, &p.l2), delta });
                }
            }
        }
        let mut v: Vec<LPair> = out.into_iter().collect();
        v.sort_by(|a, b| (a.l2.dim() - a.l1.dim(), a.l1.dim()).cmp(&(b.l2.dim() - b.l1.dim(), b.l1.dim())).then_with(|| a.cmp(b)));
        v
    })
}

/// `𝒞̃(V^delta)`.
pub fn tilde_c_pairs(d: usize, delta: u8, caps: &Caps) -> Result<Arc<Vec<LPair>>> {
    caps.check_family(d)?;
    check_delta(delta)?;
    Ok(tilde_c_family(d, delta))
}

pub(crate) fn check_delta(delta: u8) -> Result<()> {
    if delta > 1 {
        return Err(Error::OutOfRange(format!("delta = {delta}")));
    }
    Ok(())
}
