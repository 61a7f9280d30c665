//! Subspaces of `F_2^D` in reduced row-echelon form, so equal subspaces
//! compare equal.

use std::fmt;

use crate::classical::space::{form, parity_mask};

/// Rows are bitmasks; each row's pivot is its lowest set bit, which is
/// clear in every other row. Rows are sorted by pivot.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Subspace {
    rows: Vec<u64>,
}

fn pivot(v: u64) -> u64 {
    v & v.wrapping_neg()
}

impl F2Subspace {
    pub fn zero() -> F2Subspace {
        F2Subspace::default()
    }

    pub fn span(gens: impl IntoIterator<Item = u64>) -> F2Subspace {
        let mut s = F2Subspace::zero();
        for g in gens {
            s.insert(g);
        }
        s
    }

    /// The coordinate subspace on the bits of `mask`.
    pub fn coordinate(mask: u64) -> F2Subspace {
        F2Subspace::span((0..64).map(|k| 1u64 << k).filter(|b| mask & b != 0))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = pivot(v);
        for r in self.rows.iter_mut() {
            if *r & p != 0 {
                *r ^= v;
            }
        }
        let at = self.rows.partition_point(|&r| pivot(r) < p);
        self.rows.insert(at, v);
        true
    }

    /// `v` minus its component along the rows: zero iff `v` is in the span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v & pivot(r) != 0 {
                v ^= r;
            }
        }
        v
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.rows.iter().all(|&r| other.contains(r))
    }

    pub fn sum(&self, other: &F2Subspace) -> F2Subspace {
        let mut s = self.clone();
        for &r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn with(&self, v: u64) -> F2Subspace {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// Image under a linear map given on vectors.
    pub fn map(&self, f: impl Fn(u64) -> u64) -> F2Subspace {
        F2Subspace::span(self.rows.iter().map(|&r| f(r)))
    }

    /// All `2^dim` members, in Gray-code order starting at `0`.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        let mut v = 0u64;
        (0u64..1 << self.dim()).map(move |k| {
            if k > 0 {
                v ^= self.rows[k.trailing_zeros() as usize];
            }
            v
        })
    }

    /// `{x supported on mask : (x, z) = 0 for all z}`.
    pub fn annihilator_within(&self, d: usize, mask: u64) -> F2Subspace {
        let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
        // (x, z) = parity(x & ((z << 1) ^ (z >> 1)))
        let funcs = F2Subspace::span(self.rows.iter().map(|&z| ((z << 1) ^ (z >> 1)) & full & mask));
        let pivots: u64 = funcs.rows.iter().map(|&r| pivot(r)).fold(0, |a, b| a | b);
        let mut out = F2Subspace::zero();
        for k in 0..d {
            let f = 1u64 << k;
            if mask & f == 0 || pivots & f != 0 {
                continue;
            }
            let mut x = f;
            for &r in &funcs.rows {
                if r & f != 0 {
                    x |= pivot(r);
                }
            }
            out.insert(x);
        }
        out
    }

    /// `Z^⊥` in `V`.
    pub fn perp(&self, d: usize) -> F2Subspace {
        self.annihilator_within(d, parity_mask(d, 0) | parity_mask(d, 1))
    }

    /// `Z^!` for `Z` in `V^delta`: the annihilator inside `V^{1-delta}`.
    pub fn shriek(&self, d: usize, delta: u8) -> F2Subspace {
        self.annihilator_within(d, parity_mask(d, 1 - delta))
    }

    /// Intersection with the coordinate subspace on `mask`.
    pub fn restrict(&self, mask: u64) -> F2Subspace {
        // eliminate the bits outside `mask`; rows that lose them all lie inside
        let mut echelon: Vec<u64> = Vec::new();
        let mut inside = F2Subspace::zero();
        for &r in &self.rows {
            let mut v = r;
            for &e in &echelon {
                if v & pivot(e & !mask) != 0 {
                    v ^= e;
                }
            }
            if v & !mask == 0 {
                inside.insert(v);
            } else {
                let p = pivot(v & !mask);
                for e in echelon.iter_mut() {
                    if *e & p != 0 {
                        *e ^= v;
                    }
                }
                echelon.push(v);
            }
        }
        inside
    }

    pub fn is_isotropic(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &a)| self.rows[i + 1..].iter().all(|&b| !form(a, b)))
    }

    /// Rows as `D`-character 0/1 strings, `e_1` first.
    pub fn row_strings(&self, d: usize) -> Vec<String> {
        self.rows.iter().map(|&r| (0..d).map(|k| if r >> k & 1 == 1 { '1' } else { '0' }).collect()).collect()
    }
}

impl fmt::Display for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|&r| (0..64).filter(|k| r >> k & 1 == 1).map(|k| format!("e{}", k + 1)).collect::<Vec<_>>().join("+"))
            .collect();
        write!(f, "<{}>", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::space::e;

    #[test]
    fn echelon_is_canonical() {
        let a = F2Subspace::span([0b011, 0b110]);
        let b = F2Subspace::span([0b101, 0b011, 0b110]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(0b101) && !a.contains(0b001));
        assert_eq!(a.members().count(), 4);
    }

    #[test]
    fn perp_has_complementary_dimension() {
        for d in [4usize, 6, 8] {
            let z = F2Subspace::span([e(1), e(2) | e(3)]);
            let p = z.perp(d);
            assert_eq!(p.dim(), d - 2);
            assert!(p.rows().iter().all(|&x| z.rows().iter().all(|&y| !form(x, y))));
            assert_eq!(p.perp(d), z);
        }
    }

    #[test]
    fn restriction_to_coordinates() {
        let s = F2Subspace::span([0b0011, 0b0110]);
        assert_eq!(s.restrict(0b0101), F2Subspace::span([0b0101]));
        assert_eq!(s.restrict(0b0001), F2Subspace::zero());
    }
}
