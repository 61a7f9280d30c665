//! Intervals of `[1,D]`, sets of intervals and the insertion maps `t_i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::classical::space::e_interval;
use crate::classical::subspace::F2Subspace;
use crate::error::{Error, Result};

/// `[a,b]` with `1 <= a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Result<Interval> {
        if a == 0 || a > b {
            return Err(Error::OutOfRange(format!("[{a},{b}]")));
        }
        Ok(Interval { a, b })
    }

    pub fn point(i: usize) -> Interval {
        Interval { a: i, b: i }
    }

    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    /// Parity of the endpoints of an odd interval.
    pub fn kappa(&self) -> Option<u8> {
        self.is_odd().then_some((self.a % 2) as u8)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.a <= i && i <= self.b
    }

    /// `e_I`.
    pub fn mask(&self) -> u64 {
        e_interval(self.a, self.b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// `xi_i : I_{D-2} -> I_D`.
pub fn xi_embed(d: usize, i: usize, iv: Interval) -> Result<Interval> {
    if d < 2 || i == 0 || i > d || iv.b > d - 2 {
        return Err(Error::OutOfRange(format!("xi_{i}({iv}) with D = {d}")));
    }
    let (a, b) = (iv.a, iv.b);
    Ok(if i <= a {
        Interval { a: a + 2, b: b + 2 }
    } else if i >= b + 2 {
        iv
    } else {
        Interval { a, b: b + 2 }
    })
}

/// A finite set of intervals of `[1,D]`, `D` even.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalSet {
    d: usize,
    intervals: BTreeSet<Interval>,
}

impl IntervalSet {
    pub fn new(d: usize, intervals: impl IntoIterator<Item = Interval>) -> Result<IntervalSet> {
        if d % 2 != 0 {
            return Err(Error::OutOfRange(format!("odd D = {d}")));
        }
        let intervals: BTreeSet<Interval> = intervals.into_iter().collect();
        if let Some(bad) = intervals.iter().find(|iv| iv.b > d) {
            return Err(Error::OutOfRange(format!("{bad} outside [1,{d}]")));
        }
        Ok(IntervalSet { d, intervals })
    }

    pub fn empty(d: usize) -> IntervalSet {
        IntervalSet { d, intervals: BTreeSet::new() }
    }

    /// `{[1,D],[2,D-1],...,[k,D+1-k]}`.
    pub fn primitive(d: usize, k: usize) -> Result<IntervalSet> {
        if 2 * k > d {
            return Err(Error::OutOfRange(format!("k = {k} > D/2 with D = {d}")));
        }
        IntervalSet::new(d, (1..=k).map(|j| Interval { a: j, b: d + 1 - j }))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter()
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.intervals.contains(iv)
    }

    pub fn is_primitive(&self) -> bool {
        let k = self.len();
        2 * k <= self.d && (1..=k).all(|j| self.intervals.contains(&Interval { a: j, b: self.d + 1 - j }))
    }

    pub fn all_odd(&self) -> bool {
        self.intervals.iter().all(Interval::is_odd)
    }

    /// The members of odd length.
    pub fn odd_part(&self) -> IntervalSet {
        IntervalSet { d: self.d, intervals: self.intervals.iter().copied().filter(Interval::is_odd).collect() }
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Interval>) -> Result<IntervalSet> {
        IntervalSet::new(self.d, self.intervals.iter().copied().chain(extra))
    }

    /// `t_i(B')`, a set over `D + 2`.
    pub fn t_insert(&self, i: usize) -> Result<IntervalSet> {
        let d = self.d + 2;
        let mut out = BTreeSet::new();
        for iv in &self.intervals {
            out.insert(xi_embed(d, i, *iv)?);
        }
        out.insert(Interval::point(i));
        Ok(IntervalSet { d, intervals: out })
    }

    pub fn masks(&self) -> Vec<u64> {
        self.intervals.iter().map(Interval::mask).collect()
    }

    /// `⌊B⌋`.
    pub fn span(&self) -> F2Subspace {
        F2Subspace::span(self.masks())
    }

    /// Parses `{[3,5],[4,4]}` as a set over `[1,D]`.
    pub fn parse(text: &str, d: usize) -> Result<IntervalSet> {
        let bad = || Error::Parse(format!("interval set `{text}`"));
        let body = text.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(bad)?;
        let body = body.trim();
        let mut out = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let inner_end = rest.find(']').ok_or_else(bad)?;
            let item = rest[..inner_end].trim().strip_prefix('[').ok_or_else(bad)?;
            let (a, b) = item.split_once(',').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            out.push(Interval::new(a, b)?);
            rest = rest[inner_end + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(bad());
                }
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        let set = IntervalSet::new(d, out.iter().copied())?;
        if set.len() != out.len() {
            return Err(Error::Parse(format!("repeated interval in `{text}`")));
        }
        Ok(set)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(|iv| iv.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn xi_cases() {
        assert_eq!(xi_embed(4, 2, iv(1, 1)).unwrap(), iv(1, 3));
        assert_eq!(xi_embed(6, 1, iv(2, 3)).unwrap(), iv(4, 5));
        assert_eq!(xi_embed(6, 5, iv(1, 2)).unwrap(), iv(1, 2));
        assert!(xi_embed(4, 5, iv(1, 1)).is_err());
    }

    #[test]
    fn insertion() {
        let b = IntervalSet::empty(0).t_insert(1).unwrap();
        assert_eq!(b.to_string(), "{[1,1]}");
        let b2 = b.t_insert(1).unwrap();
        assert_eq!(b2, IntervalSet::new(4, [iv(3, 3), iv(1, 1)]).unwrap());
    }

    #[test]
    fn literal_round_trip() {
        let b = IntervalSet::parse("{[3,5],[4,4],[8,10],[9,9]}", 10).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(IntervalSet::parse(&b.to_string(), 10).unwrap(), b);
        assert_eq!(IntervalSet::parse("{}", 4).unwrap(), IntervalSet::empty(4));
        for bad in ["", "{[1,2]", "{[2,1]}", "{[1,2],}", "{[1,12]}", "{[1,1],[1,1]}", "{[a,1]}"] {
            assert!(IntervalSet::parse(bad, 10).is_err(), "{bad}");
        }
    }

    #[test]
    fn kappa_of_odd() {
        assert_eq!(iv(3, 5).kappa(), Some(1));
        assert_eq!(iv(2, 2).kappa(), Some(0));
        assert_eq!(iv(2, 3).kappa(), None);
    }
}
