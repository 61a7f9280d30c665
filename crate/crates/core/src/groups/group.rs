use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::groups::perm::{all_perms, Perm};

/// Element of a [`Group`], as an index into its element list.
pub type Elem = u32;

/// Largest `n` accepted for the based space `V<n>`.
pub const BASED_DIM_CAP: usize = 12;

/// A standard group: `S1..S5`, `V<n>`, or a direct product of those.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Descriptor {
    Sym(usize),
    Based(usize),
    Product(Vec<Descriptor>),
}

impl Descriptor {
    /// Product of descriptors, flattening nested products; a single factor
    /// is returned unchanged.
    pub fn product(factors: Vec<Descriptor>) -> Descriptor {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Descriptor::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Descriptor::Product(flat)
        }
    }

    pub fn factors(&self) -> Vec<Descriptor> {
        match self {
            Descriptor::Product(f) => f.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Descriptor::Sym(n) => (1..=*n).product(),
            Descriptor::Based(n) => 1 << n,
            Descriptor::Product(f) => f.iter().map(|d| d.order()).product(),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Sym(n) => write!(f, "S{n}"),
            Descriptor::Based(n) => write!(f, "V{n}"),
            Descriptor::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|d| d.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedGroup(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let mut factors = Vec::new();
        for part in s.split('x') {
            let (head, digits) = part.split_at(part.len().min(1));
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 3 {
                return Err(bad());
            }
            let n: usize = digits.parse().map_err(|_| bad())?;
            match head {
                "S" if (1..=5).contains(&n) => factors.push(Descriptor::Sym(n)),
                "V" if n >= 1 => {
                    if n > BASED_DIM_CAP {
                        return Err(Error::DimensionCap { dim: n, cap: BASED_DIM_CAP });
                    }
                    factors.push(Descriptor::Based(n))
                }
                _ => return Err(bad()),
            }
        }
        Ok(Descriptor::product(factors))
    }
}

pub(crate) enum Law {
    Table { mul: Vec<Elem>, inv: Vec<Elem> },
    Xor { dim: usize },
    Product { factors: Vec<Arc<Group>>, strides: Vec<usize> },
}

/// A finite group with elements `0..order`, identity `0`.
pub struct Group {
    name: String,
    order: usize,
    law: Law,
    descriptor: Option<Descriptor>,
    labels: Option<Vec<String>>,
    perms: Option<(Vec<Perm>, HashMap<Perm, Elem>)>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

impl Group {
    /// Group from a full multiplication table; element `0` must be the
    /// identity. The axioms are checked.
    pub fn from_table(name: &str, mul: Vec<Elem>, labels: Vec<String>) -> Result<Group> {
        let n = labels.len();
        if mul.len() != n * n || n == 0 {
            return Err(Error::Unsupported(format!("table for `{name}` has the wrong size")));
        }
        let mut inv = vec![Elem::MAX; n];
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(Error::Unsupported(format!("`{name}`: element 0 is not an identity")));
            }
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as Elem;
                }
            }
            if inv[a] == Elem::MAX {
                return Err(Error::Unsupported(format!("`{name}`: element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(Error::Unsupported(format!("`{name}`: table is not associative")));
                    }
                }
            }
        }
        Ok(Group {
            name: name.to_string(),
            order: n,
            law: Law::Table { mul, inv },
            descriptor: None,
            labels: Some(labels),
            perms: None,
        })
    }

    /// Group of the given permutations, which must be closed under
    /// composition and contain the identity at position 0.
    pub fn from_perms(name: &str, perms: Vec<Perm>) -> Result<Group> {
        let index: HashMap<Perm, Elem> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i as Elem)).collect();
        let n = perms.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                let ab = a.compose(b);
                let k = index
                    .get(&ab)
                    .ok_or_else(|| Error::Unsupported(format!("`{name}` is not closed")))?;
                mul.push(*k);
            }
        }
        let labels = perms.iter().map(|p| p.to_string()).collect();
        let mut g = Group::from_table(name, mul, labels)?;
        g.perms = Some((perms, index));
        Ok(g)
    }

    fn symmetric(n: usize) -> Group {
        let mut g = Group::from_perms(&format!("S{n}"), all_perms(n)).expect("symmetric group");
        g.descriptor = Some(Descriptor::Sym(n));
        g
    }

    fn based(dim: usize) -> Group {
        Group {
            name: format!("V{dim}"),
            order: 1 << dim,
            law: Law::Xor { dim },
            descriptor: Some(Descriptor::Based(dim)),
            labels: None,
            perms: None,
        }
    }

    fn direct_product(factors: Vec<Arc<Group>>) -> Group {
        let mut strides = vec![1usize; factors.len()];
        for t in (0..factors.len().saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * factors[t + 1].order();
        }
        let order = factors.iter().map(|f| f.order()).product();
        let desc = Descriptor::product(factors.iter().map(|f| f.descriptor().unwrap()).collect());
        Group {
            name: desc.to_string(),
            order,
            law: Law::Product { factors, strides },
            descriptor: Some(desc),
            labels: None,
            perms: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn descriptor(&self) -> Option<Descriptor> {
        self.descriptor.clone()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.law {
            Law::Table { mul, .. } => mul[a as usize * self.order + b as usize],
            Law::Xor { .. } => a ^ b,
            Law::Product { factors, strides } => {
                let mut out = 0usize;
                let (mut a, mut b) = (a as usize, b as usize);
                for (f, &s) in factors.iter().zip(strides) {
                    let (x, y) = (a / s, b / s);
                    a %= s;
                    b %= s;
                    out += f.mul(x as Elem, y as Elem) as usize * s;
                }
                out as Elem
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        match &self.law {
            Law::Table { inv, .. } => inv[a as usize],
            Law::Xor { .. } => a,
            Law::Product { factors, .. } => {
                let parts = self.split(a);
                self.combine(&factors.iter().zip(parts).map(|(f, x)| f.inv(x)).collect::<Vec<_>>())
            }
        }
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        match &self.law {
            Law::Xor { .. } => true,
            Law::Product { factors, .. } => factors.iter().all(|f| f.is_abelian()),
            Law::Table { .. } => {
                self.elements().all(|a| self.elements().all(|b| self.commute(a, b)))
            }
        }
    }

    /// Dimension of a based space, if this is one.
    pub fn based_dim(&self) -> Option<usize> {
        match self.law {
            Law::Xor { dim } => Some(dim),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Arc<Group>]> {
        match &self.law {
            Law::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Components of a product element (the element itself otherwise).
    pub fn split(&self, a: Elem) -> Vec<Elem> {
        match &self.law {
            Law::Product { strides, .. } => {
                let mut a = a as usize;
                strides
                    .iter()
                    .map(|&s| {
                        let x = a / s;
                        a %= s;
                        x as Elem
                    })
                    .collect()
            }
            _ => vec![a],
        }
    }

    pub fn combine(&self, parts: &[Elem]) -> Elem {
        match &self.law {
            Law::Product { strides, .. } => {
                parts.iter().zip(strides).map(|(&x, &s)| x as usize * s).sum::<usize>() as Elem
            }
            _ => parts[0],
        }
    }

    pub fn perm(&self, a: Elem) -> Option<&Perm> {
        self.perms.as_ref().map(|(p, _)| &p[a as usize])
    }

    pub fn perm_index(&self, p: &Perm) -> Option<Elem> {
        self.perms.as_ref().and_then(|(_, idx)| idx.get(p).copied())
    }

    /// Display label: cycle notation, a sum of basis vectors `x1+x3`,
    /// or a tuple for products.
    pub fn label(&self, a: Elem) -> String {
        if let Some(l) = &self.labels {
            return l[a as usize].clone();
        }
        match &self.law {
            Law::Xor { dim } => based_label(a, *dim, "x", "0"),
            Law::Product { factors, .. } => {
                let parts: Vec<String> =
                    factors.iter().zip(self.split(a)).map(|(f, x)| f.label(x)).collect();
                format!("({})", parts.join(","))
            }
            Law::Table { .. } => a.to_string(),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        self.elements()
            .find(|&a| self.label(a) == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }

    /// Closure of `gens` under multiplication.
    pub fn generate(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let a = out[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    out.push(b);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

pub(crate) fn based_label(v: u32, dim: usize, sym: &str, zero: &str) -> String {
    let parts: Vec<String> = (0..dim).filter(|i| v >> i & 1 == 1).map(|i| format!("{sym}{}", i + 1)).collect();
    if parts.is_empty() {
        zero.to_string()
    } else {
        parts.join("+")
    }
}

/// The standard model of a descriptor, shared and built once.
pub fn standard(desc: &Descriptor) -> Arc<Group> {
    static CACHE: OnceLock<Mutex<HashMap<Descriptor, Arc<Group>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(desc) {
        return g.clone();
    }
    let g = Arc::new(match desc {
        Descriptor::Sym(n) => Group::symmetric(*n),
        Descriptor::Based(n) => Group::based(*n),
        Descriptor::Product(fs) => Group::direct_product(fs.iter().map(standard).collect()),
    });
    cache.lock().unwrap().entry(desc.clone()).or_insert(g).clone()
}

/// Parses and builds a standard group.
pub fn build_standard(spec: &str) -> Result<Arc<Group>> {
    let d: Descriptor = spec.parse()?;
    Ok(standard(&d))
}

/// Subgroup of a parent group, as a sorted member list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub name: String,
    members: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({}, order {})", self.name, self.members.len())
    }
}

impl Subgroup {
    pub fn generated(g: &Group, name: &str, gens: &[Elem]) -> Subgroup {
        Subgroup { name: name.to_string(), members: g.generate(gens) }
    }

    pub fn whole(g: &Group, name: &str) -> Subgroup {
        Subgroup { name: name.to_string(), members: g.elements().collect() }
    }

    pub fn trivial(name: &str) -> Subgroup {
        Subgroup { name: name.to_string(), members: vec![0] }
    }

    /// From an arbitrary member list; checks closure.
    pub fn from_members(g: &Group, name: &str, mut members: Vec<Elem>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::Unsupported(format!("`{name}` does not contain the identity")));
        }
        for &a in &members {
            for &b in &members {
                if members.binary_search(&g.mul(a, b)).is_err() {
                    return Err(Error::Unsupported(format!("`{name}` is not closed")));
                }
            }
        }
        Ok(Subgroup { name: name.to_string(), members })
    }

    pub(crate) fn from_members_unchecked(name: &str, mut members: Vec<Elem>) -> Subgroup {
        members.sort_unstable();
        Subgroup { name: name.to_string(), members }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.members == other.members
    }

    pub fn intersection(&self, other: &Subgroup, name: &str) -> Subgroup {
        Subgroup {
            name: name.to_string(),
            members: self.members.iter().copied().filter(|&a| other.contains(a)).collect(),
        }
    }

    /// Is `self` normal in `upper` (which must contain it)?
    pub fn is_normal_in(&self, g: &Group, upper: &Subgroup) -> bool {
        self.is_subgroup_of(upper)
            && upper.members.iter().all(|&u| self.members.iter().all(|&a| self.contains(g.conj(u, a))))
    }

    pub fn renamed(mut self, name: &str) -> Subgroup {
        self.name = name.to_string();
        self
    }
}

/// A map from a subgroup of a parent group onto a standard group.
#[derive(Clone)]
pub struct Hom {
    pub source: Subgroup,
    pub target: Arc<Group>,
    images: HashMap<Elem, Elem>,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {})", self.source.name, self.target.name())
    }
}

impl Hom {
    /// Builds `a -> image(a)` on the members of `source` and checks that it
    /// is a surjective homomorphism.
    pub fn new(
        parent: &Group,
        source: Subgroup,
        target: Arc<Group>,
        image: impl Fn(Elem) -> Elem,
    ) -> Result<Hom> {
        let images: HashMap<Elem, Elem> = source.members.iter().map(|&a| (a, image(a))).collect();
        let h = Hom { source, target, images };
        h.check(parent)?;
        Ok(h)
    }

    fn check(&self, parent: &Group) -> Result<()> {
        let what = || format!("{} -> {}", self.source.name, self.target.name());
        for &a in self.source.members() {
            for &b in self.source.members() {
                let ab = parent.mul(a, b);
                if self.images[&ab] != self.target.mul(self.images[&a], self.images[&b]) {
                    return Err(Error::BadHomomorphism(what()));
                }
            }
        }
        let mut hit = vec![false; self.target.order()];
        for &v in self.images.values() {
            hit[v as usize] = true;
        }
        if hit.iter().any(|&h| !h) {
            return Err(Error::BadHomomorphism(format!("{} is not onto", what())));
        }
        Ok(())
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.images[&a]
    }

    pub fn try_apply(&self, a: Elem) -> Option<Elem> {
        self.images.get(&a).copied()
    }

    pub fn kernel(&self) -> Subgroup {
        let mut m: Vec<Elem> = self.images.iter().filter(|(_, &v)| v == 0).map(|(&k, _)| k).collect();
        m.sort_unstable();
        Subgroup { name: format!("ker({})", self.source.name), members: m }
    }

    /// `a^-1(members)` for a subset of the target.
    pub fn preimage(&self, target_members: &[Elem], name: &str) -> Subgroup {
        let mut m: Vec<Elem> = self
            .images
            .iter()
            .filter(|(_, v)| target_members.contains(v))
            .map(|(&k, _)| k)
            .collect();
        m.sort_unstable();
        Subgroup { name: name.to_string(), members: m }
    }

    /// `other o self`, restricted to `self^-1(other.source)`.
    pub fn then(&self, other: &Hom, parent: &Group) -> Result<Hom> {
        let src = self.preimage(other.source.members(), &other.source.name);
        Hom::new(parent, src, other.target.clone(), |a| other.apply(self.apply(a)))
    }

    /// Restriction to a subgroup of the source, which must still map onto
    /// the target.
    pub fn restrict(&self, parent: &Group, sub: &Subgroup) -> Result<Hom> {
        Hom::new(parent, sub.clone(), self.target.clone(), |a| self.apply(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_grammar() {
        let d: Descriptor = "S3xS2".parse().unwrap();
        assert_eq!(d, Descriptor::Product(vec![Descriptor::Sym(3), Descriptor::Sym(2)]));
        assert_eq!(d.to_string(), "S3xS2");
        assert_eq!("V2".parse::<Descriptor>().unwrap(), Descriptor::Based(2));
        assert!("S6".parse::<Descriptor>().is_err());
        assert!("V13".parse::<Descriptor>().is_err());
        assert!("".parse::<Descriptor>().is_err());
        assert!("S3x".parse::<Descriptor>().is_err());
        assert!("V0".parse::<Descriptor>().is_err());
    }

    #[test]
    fn standard_orders() {
        assert_eq!(build_standard("S3").unwrap().order(), 6);
        let v2 = build_standard("V2").unwrap();
        assert_eq!((v2.order(), v2.exponent()), (4, 2));
        let p = build_standard("S3xS2").unwrap();
        assert_eq!(p.order(), 12);
        assert!(!p.is_abelian());
        assert_eq!(p.label(p.combine(&[1, 1])), "((2,3),(1,2))");
    }

    #[test]
    fn product_law_is_componentwise() {
        let p = build_standard("S3xS2").unwrap();
        let s3 = build_standard("S3").unwrap();
        for a in p.elements() {
            for b in p.elements() {
                let (x, y) = (p.split(a), p.split(b));
                let ab = p.split(p.mul(a, b));
                assert_eq!(ab[0], s3.mul(x[0], y[0]));
                assert_eq!(ab[1], x[1] ^ y[1]);
            }
        }
    }
}
