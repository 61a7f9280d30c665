//! The set `M(G)` of classes of pairs `(x, rho)`, formal combinations of
//! its elements, the Fourier matrix, the commuting-pair function model and
//! the maps `s_{G',G''}`.

mod fourier;
mod pairfn;
mod smap;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::chartab::sym_centralizer_table;
use crate::groups::{standard, CharTable, Classes, Descriptor, Group};
use crate::scalars::Cyclo;

pub use fourier::{FourierMatrix, Placement, PLACEMENT};
pub use pairfn::PairFunction;
pub use smap::{s_map, SubgroupPair};

/// Largest group order for which `M(G)` is materialized.
pub const MSPACE_ORDER_CAP: usize = 4096;

/// `M(G)` for a standard group `G`.
pub struct MSpace {
    pub group: Arc<Group>,
    pub classes: Classes,
    tables: Vec<Arc<CharTable>>,
    offsets: Vec<usize>,
    pairs: Vec<(u32, u32)>,
    /// For products: the pair index in each factor's space.
    factor_pairs: Option<(Vec<Arc<MSpace>>, Vec<Vec<usize>>, HashMap<Vec<usize>, usize>)>,
    fourier: OnceLock<Arc<FourierMatrix>>,
}

impl fmt::Debug for MSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MSpace({}, {} pairs)", self.group.name(), self.pairs.len())
    }
}

/// An element of `M(G)`, by index into its space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPair(pub usize);

impl MSpace {
    /// `M(G)` for a descriptor, built once and shared.
    pub fn of(desc: &Descriptor) -> Result<Arc<MSpace>> {
        static CACHE: OnceLock<Mutex<HashMap<Descriptor, Arc<MSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(m) = cache.lock().unwrap().get(desc) {
            return Ok(m.clone());
        }
        if desc.order() > MSPACE_ORDER_CAP {
            return Err(Error::Unsupported(format!(
                "M({desc}) is not materialized for groups of order above {MSPACE_ORDER_CAP}"
            )));
        }
        let m = Arc::new(MSpace::build(desc)?);
        Ok(cache.lock().unwrap().entry(desc.clone()).or_insert(m).clone())
    }

    pub fn parse(spec: &str) -> Result<Arc<MSpace>> {
        MSpace::of(&spec.parse()?)
    }

    fn build(desc: &Descriptor) -> Result<MSpace> {
        let group = standard(desc);
        let classes = Classes::compute(&group);
        let mut factor_pairs = None;
        let tables: Vec<Arc<CharTable>> = match desc {
            Descriptor::Sym(_) => (0..classes.len())
                .map(|k| {
                    Arc::new(sym_centralizer_table(&group, classes.reps[k], &classes.labels[k], &classes.centralizers[k]))
                })
                .collect(),
            Descriptor::Based(n) => {
                let t = Arc::new(CharTable::dual(*n));
                vec![t; classes.len()]
            }
            Descriptor::Product(fs) => {
                let spaces: Vec<Arc<MSpace>> = fs.iter().map(MSpace::of).collect::<Result<_>>()?;
                let mut tables = Vec::new();
                let mut which = Vec::new();
                for k in 0..classes.len() {
                    let parts = group.split(classes.reps[k]);
                    let fc: Vec<usize> = spaces.iter().zip(&parts).map(|(s, &x)| s.classes.class_of(x)).collect();
                    let ft: Vec<Arc<CharTable>> = spaces.iter().zip(&fc).map(|(s, &c)| s.tables[c].clone()).collect();
                    tables.push(Arc::new(CharTable::product(group.clone(), ft)));
                    which.push(fc);
                }
                factor_pairs = Some((spaces, which));
                tables
            }
        };
        let mut offsets = Vec::with_capacity(classes.len());
        let mut pairs = Vec::new();
        for (k, t) in tables.iter().enumerate() {
            offsets.push(pairs.len());
            pairs.extend((0..t.len()).map(|chi| (k as u32, chi as u32)));
        }
        let factor_pairs = factor_pairs.map(|(spaces, which)| {
            let mut fp = Vec::with_capacity(pairs.len());
            for &(k, chi) in &pairs {
                let idx = tables[k as usize].split_index(chi as usize);
                fp.push(
                    spaces
                        .iter()
                        .zip(&which[k as usize])
                        .zip(idx)
                        .map(|((s, &c), x)| s.offsets[c] + x)
                        .collect::<Vec<usize>>(),
                );
            }
            let rev = fp.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
            (spaces, fp, rev)
        });
        Ok(MSpace { group, classes, tables, offsets, pairs, factor_pairs, fourier: OnceLock::new() })
    }

    pub fn descriptor(&self) -> Descriptor {
        self.group.descriptor().expect("standard group")
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = MPair> {
        (0..self.pairs.len()).map(MPair)
    }

    pub fn class_of_pair(&self, m: MPair) -> usize {
        self.pairs[m.0].0 as usize
    }

    pub fn char_of_pair(&self, m: MPair) -> usize {
        self.pairs[m.0].1 as usize
    }

    pub fn pair(&self, class: usize, chi: usize) -> MPair {
        MPair(self.offsets[class] + chi)
    }

    /// Centralizer character table of a class.
    pub fn table(&self, class: usize) -> &CharTable {
        &self.tables[class]
    }

    pub fn class_label(&self, m: MPair) -> &str {
        &self.classes.labels[self.class_of_pair(m)]
    }

    pub fn char_label(&self, m: MPair) -> &str {
        &self.tables[self.class_of_pair(m)].labels[self.char_of_pair(m)]
    }

    /// `(x,rho)` text for a pair.
    pub fn label(&self, m: MPair) -> String {
        format!("({},{})", self.class_label(m), self.char_label(m))
    }

    pub fn find(&self, class: &str, chi: &str) -> Result<MPair> {
        let k = self
            .classes
            .index_of_label(class)
            .ok_or_else(|| Error::UnknownLabel(format!("class {class} in M({})", self.group.name())))?;
        let c = self.tables[k]
            .index_of_label(chi)
            .ok_or_else(|| Error::UnknownLabel(format!("character {chi} of Z({class}) in M({})", self.group.name())))?;
        Ok(self.pair(k, c))
    }

    /// Factor spaces and the per-factor pair indices of `m`, for products.
    pub fn factor_pair(&self, m: MPair) -> Option<(&[Arc<MSpace>], &[usize])> {
        self.factor_pairs.as_ref().map(|(s, fp, _)| (s.as_slice(), fp[m.0].as_slice()))
    }

    fn from_factor_pairs(&self, idx: &[usize]) -> Option<MPair> {
        self.factor_pairs.as_ref().and_then(|(_, _, rev)| rev.get(idx).map(|&i| MPair(i)))
    }

    /// Atomic-factor coordinates of a pair (a single entry for non-products).
    fn atomic_coordinates(&self, m: MPair) -> Vec<usize> {
        match self.factor_pair(m) {
            Some((_, fp)) => fp.to_vec(),
            None => vec![m.0],
        }
    }
}

/// Finitely supported `Cyclo` combination of elements of `M(G)`.
#[derive(Clone)]
pub struct MVector {
    space: Arc<MSpace>,
    coeffs: BTreeMap<usize, Cyclo>,
}

impl PartialEq for MVector {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.coeffs == other.coeffs
    }
}

impl Eq for MVector {}

impl std::hash::Hash for MVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl MVector {
    pub fn zero(space: &Arc<MSpace>) -> MVector {
        MVector { space: space.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis(space: &Arc<MSpace>, m: MPair) -> MVector {
        let mut v = MVector::zero(space);
        v.coeffs.insert(m.0, Cyclo::one());
        v
    }

    /// Sum of `coeff * (class, chi)` terms given by labels.
    pub fn from_terms(space: &Arc<MSpace>, terms: &[(i64, &str, &str)]) -> Result<MVector> {
        let mut v = MVector::zero(space);
        for &(c, x, rho) in terms {
            v.add_term(space.find(x, rho)?, &Cyclo::from_int(c));
        }
        Ok(v)
    }

    pub fn from_dense(space: &Arc<MSpace>, dense: Vec<Cyclo>) -> MVector {
        let coeffs = dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        MVector { space: space.clone(), coeffs }
    }

    pub fn space(&self) -> &Arc<MSpace> {
        &self.space
    }

    pub fn add_term(&mut self, m: MPair, c: &Cyclo) {
        self.checked_add_term(m, c).expect("cyclotomic coefficient overflow")
    }

    /// [`MVector::add_term`] reporting coefficient overflow as an error.
    pub fn checked_add_term(&mut self, m: MPair, c: &Cyclo) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let e = self.coeffs.entry(m.0).or_insert_with(Cyclo::zero);
        *e = e.checked_add(c)?;
        if e.is_zero() {
            self.coeffs.remove(&m.0);
        }
        Ok(())
    }

    pub fn coeff(&self, m: MPair) -> Cyclo {
        self.coeffs.get(&m.0).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MPair, &Cyclo)> {
        self.coeffs.iter().map(|(&i, c)| (MPair(i), c))
    }

    pub fn support(&self) -> impl Iterator<Item = MPair> + '_ {
        self.coeffs.keys().map(|&i| MPair(i))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn dense(&self) -> Vec<Cyclo> {
        let mut d = vec![Cyclo::zero(); self.space.len()];
        for (&i, c) in &self.coeffs {
            d[i] = c.clone();
        }
        d
    }

    pub fn scale(&self, c: &Cyclo) -> MVector {
        let coeffs =
            self.coeffs.iter().map(|(&i, x)| (i, x * c)).filter(|(_, x)| !x.is_zero()).collect();
        MVector { space: self.space.clone(), coeffs }
    }

    pub fn add(&self, other: &MVector) -> MVector {
        assert!(Arc::ptr_eq(&self.space, &other.space), "vectors over different spaces");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &MVector) -> MVector {
        self.add(&other.scale(&Cyclo::from_int(-1)))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// `u ⊠ w` in `M(G x H) = M(G) x M(H)`.
    pub fn external_product(&self, other: &MVector) -> Result<MVector> {
        let desc = Descriptor::product(vec![self.space.descriptor(), other.space.descriptor()]);
        let target = MSpace::of(&desc)?;
        let mut out = MVector::zero(&target);
        for (a, x) in self.terms() {
            let ca = self.space.atomic_coordinates(a);
            for (b, y) in other.terms() {
                let mut idx = ca.clone();
                idx.extend(other.space.atomic_coordinates(b));
                let m = target.from_factor_pairs(&idx).expect("product pair");
                out.add_term(m, &(x * y));
            }
        }
        Ok(out)
    }

    /// Transform by the Fourier matrix of the space.
    pub fn fourier(&self) -> MVector {
        self.space.fourier_matrix().apply(self)
    }
}

impl fmt::Display for MVector {
    /// Terms in space order, e.g. `(1,1)+2(1,r)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let label = self.space.label(m);
            match c.to_integer() {
                Some(1) => write!(f, "{}{label}", if k > 0 { "+" } else { "" })?,
                Some(-1) => write!(f, "-{label}")?,
                Some(n) if n < 0 => write!(f, "{n}{label}")?,
                Some(n) => write!(f, "{}{n}{label}", if k > 0 { "+" } else { "" })?,
                None => match c.to_rational() {
                    Some(r) if r < 0.into() => write!(f, "{r}{label}")?,
                    Some(r) => write!(f, "{}{r}{label}", if k > 0 { "+" } else { "" })?,
                    None => write!(f, "{}[{c}]{label}", if k > 0 { "+" } else { "" })?,
                },
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MVector({self})")
    }
}

/// One term of the JSON form of an [`MVector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub x: String,
    pub rho: String,
    pub coeff: Cyclo,
}

impl MVector {
    pub fn to_terms(&self) -> Vec<Term> {
        self.terms()
            .map(|(m, c)| Term {
                x: self.space.class_label(m).to_string(),
                rho: self.space.char_label(m).to_string(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(space: &Arc<MSpace>, terms: &[Term]) -> Result<MVector> {
        let mut v = MVector::zero(space);
        for t in terms {
            v.checked_add_term(space.find(&t.x, &t.rho)?, &t.coeff)?;
        }
        Ok(v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_terms()).expect("serializable")
    }

    pub fn from_json(space: &Arc<MSpace>, s: &str) -> Result<MVector> {
        let terms: Vec<Term> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        MVector::from_json_terms(space, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (spec, n) in [("S1", 1), ("S2", 4), ("S3", 8), ("S4", 21), ("S5", 39), ("V2", 16), ("S3xS2", 32)] {
            assert_eq!(MSpace::parse(spec).unwrap().len(), n, "{spec}");
        }
    }

    #[test]
    fn json_round_trip() {
        let m = MSpace::parse("S3").unwrap();
        let v = MVector::from_terms(&m, &[(1, "1", "eps"), (2, "1", "r"), (1, "1", "1")]).unwrap();
        let back = MVector::from_json(&m, &v.to_json()).unwrap();
        assert_eq!(v, back);
        assert!(MVector::from_json(&m, "[{\"x\":\"g7\",\"rho\":\"1\",\"coeff\":[[0,1,1]]}]").is_err());
    }

    fn lattice_pair(n: usize, lower: &str, upper: &str, model: &str) -> SubgroupPair {
        let lat = crate::groups::lattice::Lattice::new(n);
        let m = MSpace::parse(&format!("S{n}")).unwrap();
        SubgroupPair::identify(&m, lat.get(lower).unwrap().clone(), lat.get(upper).unwrap().clone(), model).unwrap()
    }

    #[test]
    fn induced_vectors_match_hand_computation() {
        let p = lattice_pair(2, "S2", "S2", "S1");
        let one = MVector::basis(&MSpace::parse("S1").unwrap(), MPair(0));
        assert_eq!(s_map(&p, &one).unwrap().to_string(), "(1,1)+(g2,1)");
        let p = lattice_pair(3, "S1", "S1", "S1");
        let v = s_map(&p, &one).unwrap();
        assert_eq!(v, MVector::parse(&p.ambient, "(1,eps)+2(1,r)+(1,1)").unwrap());
    }

    #[test]
    fn pair_function_round_trip() {
        for spec in ["S3", "S4", "V2", "S2xS2"] {
            let m = MSpace::parse(spec).unwrap();
            for p in m.pairs() {
                let v = MVector::basis(&m, p);
                let f = v.to_pair_function().unwrap();
                assert_eq!(MVector::from_pair_function(&f).unwrap(), v, "{spec} {}", m.label(p));
            }
        }
    }

    #[test]
    fn non_invariant_pair_function_is_rejected() {
        let m = MSpace::parse("S3").unwrap();
        let mut f = PairFunction::zero(&m).unwrap();
        f.set(1, 0, Cyclo::one());
        assert!(matches!(MVector::from_pair_function(&f), Err(Error::NonInvariant(..))));
    }

    #[test]
    fn fourier_of_s2_unit() {
        let m = MSpace::parse("S2").unwrap();
        let v = MVector::parse(&m, "(1,1)").unwrap().fourier();
        assert_eq!(v, MVector::parse(&m, "1/2(1,1)+1/2(1,eps)+1/2(g2,1)+1/2(g2,eps)").unwrap());
    }

    #[test]
    fn fourier_unitary_small() {
        for spec in ["S1", "S2", "S3", "S4", "V1", "V2", "S3xS2"] {
            assert!(MSpace::parse(spec).unwrap().fourier_is_unitary(), "{spec}");
        }
    }

    #[test]
    fn product_fourier_matches_generic() {
        let m = MSpace::parse("S3xS2").unwrap();
        let generic = m.generic_fourier(fourier::PLACEMENT);
        let fast = m.fourier_matrix();
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(generic.entry(i, j), fast.entry(i, j));
            }
        }
        let v = MSpace::parse("V2").unwrap();
        let generic = v.generic_fourier(fourier::PLACEMENT);
        for i in 0..v.len() {
            for j in 0..v.len() {
                assert_eq!(generic.entry(i, j), v.fourier_matrix().entry(i, j));
            }
        }
    }

    #[test]
    fn external_products() {
        let s2 = MSpace::parse("S2").unwrap();
        let lam = MVector::from_terms(&s2, &[(1, "g2", "eps"), (1, "1", "1")]).unwrap();
        let one = MVector::from_terms(&s2, &[(1, "1", "1")]).unwrap();
        let p = lam.external_product(&one).unwrap();
        assert_eq!(p.to_string(), "((1,1),(1,1))+((g2,1),(eps,1))");
        let s1 = MSpace::parse("S1").unwrap();
        let u = MVector::basis(&s1, MPair(0));
        assert_eq!(u.external_product(&u).unwrap().space().len(), 1);
    }
}
