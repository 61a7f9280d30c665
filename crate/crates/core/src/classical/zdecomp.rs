//! The complementary intervals `z(B)` of a member of `S_D`, the sets
//! `B(k)` and the symplectic basis of `⌊B⌋^⊥/⌊B⌋`.

use std::fmt;

use crate::classical::interval::{Interval, IntervalSet};
use crate::classical::subspace::F2Subspace;
use crate::error::{Error, Result};

/// `z(B) = z'(B) ∪ z''(B)` listed left to right as `I_1..I_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZDecomposition {
    pub source: IntervalSet,
    /// One-point intervals.
    pub z_prime: Vec<Interval>,
    /// Intervals bridging consecutive wide gaps.
    pub z_second: Vec<Interval>,
    /// `I_1..I_M`.
    pub sequence: Vec<Interval>,
    /// `c_0` (start of `I_1`) followed by the lengths of `I_1..I_M`.
    pub gaps: Vec<usize>,
}

impl ZDecomposition {
    pub fn m(&self) -> usize {
        self.sequence.len()
    }

    /// `I_{a<=b} = I_a ∪ ... ∪ I_b`, 1-based.
    pub fn union(&self, a: usize, b: usize) -> Result<Interval> {
        if a == 0 || a > b || b > self.m() {
            return Err(Error::OutOfRange(format!("I_({a}..{b}) with M = {}", self.m())));
        }
        Interval::new(self.sequence[a - 1].a, self.sequence[b - 1].b)
    }

    pub fn z_set(&self) -> IntervalSet {
        IntervalSet::new(self.source.d(), self.sequence.iter().copied()).expect("z(B) lies in [1,D]")
    }
}

impl fmt::Display for ZDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.z_set())
    }
}

/// Maximal runs `[a_1,b_1] < ... < [a_s,b_s]` covered by the members of `B`.
fn runs(b: &IntervalSet) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for iv in b.iter() {
        let (a, e) = (iv.a as i64, iv.b as i64);
        match out.last_mut() {
            Some(last) if a <= last.1 + 1 => last.1 = last.1.max(e),
            _ => out.push((a, e)),
        }
    }
    out
}

/// `z(B)` for `B` in `S_D`. `z''(B)` consists of the intervals
/// `[a_{i_u} - 1, b_{i_{u+1} - 1} + 1]`, `u` in `[1, t-1]`.
pub fn z_of(b: &IntervalSet) -> Result<ZDecomposition> {
    let d = b.d();
    let fail = |why: &str| Error::NotInFamily(format!("{b}: {why}"));
    if !b.all_odd() {
        return Err(fail("has an interval of even length"));
    }
    let runs = runs(b);
    // a_i, b_i for i in 0..=s+1 with b_0 = -1 and a_{s+1} = D + 2
    let s = runs.len();
    let a_at = |i: usize| if i == s + 1 { d as i64 + 2 } else { runs[i - 1].0 };
    let b_at = |i: usize| if i == 0 { -1 } else { runs[i - 1].1 };
    let gap = |i: usize| a_at(i) - b_at(i - 1);
    if (1..=s + 1).any(|i| gap(i) < 2) {
        return Err(fail("runs are not separated"));
    }
    let wide: Vec<usize> = (1..=s + 1).filter(|&i| gap(i) >= 3).collect();
    let mut z_prime = Vec::new();
    for i in (1..=s + 1).filter(|&i| gap(i) >= 4) {
        for p in b_at(i - 1) + 2..=a_at(i) - 2 {
            z_prime.push(Interval::point(p as usize));
        }
    }
    let mut z_second = Vec::new();
    for u in 0..wide.len().saturating_sub(1) {
        let lo = a_at(wide[u]) - 1;
        let hi = b_at(wide[u + 1] - 1) + 1;
        z_second.push(Interval::new(lo as usize, hi as usize)?);
    }
    let mut sequence: Vec<Interval> = z_prime.iter().chain(&z_second).copied().collect();
    sequence.sort();
    let m = d - 2 * b.len().min(d / 2);
    if 2 * b.len() > d || sequence.len() != m {
        return Err(fail("|z(B)| differs from D - 2|B|"));
    }
    if sequence.windows(2).any(|w| w[1].a != w[0].b + 1) {
        return Err(fail("z(B) is not a chain of adjacent intervals"));
    }
    let mut gaps = Vec::with_capacity(m + 1);
    if let Some(first) = sequence.first() {
        gaps.push(first.a);
        gaps.extend(sequence.iter().map(Interval::len));
    }
    Ok(ZDecomposition { source: b.clone(), z_prime, z_second, sequence, gaps })
}

/// `B(k) = B ∪ {I_{1<=M}, I_{2<=M-1}, ..., I_{k<=M+1-k}}`.
pub fn b_of_k(b: &IntervalSet, k: usize) -> Result<IntervalSet> {
    let z = z_of(b)?;
    let m = z.m();
    if 2 * k > m {
        return Err(Error::OutOfRange(format!("k = {k} > M/2 = {}", m / 2)));
    }
    let extra: Vec<Interval> = (1..=k).map(|a| z.union(a, m + 1 - a)).collect::<Result<_>>()?;
    b.with(extra)
}

/// Inverse of `(B, k) -> B(k)`: `B` is the odd part, `k` the number of
/// remaining members.
pub fn lambda_inverse(bhat: &IntervalSet) -> Result<(IntervalSet, usize)> {
    let b = bhat.odd_part();
    let k = bhat.len() - b.len();
    let back = b_of_k(&b, k).map_err(|e| Error::Reconstruction(format!("{bhat}: {e}")))?;
    if &back != bhat {
        return Err(Error::Reconstruction(format!("{bhat} rebuilt as {back}")));
    }
    Ok((b, k))
}

/// `⌊B⌋^⊥/⌊B⌋` with the images of `e_{I_1}..e_{I_M}` as basis.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    pub d: usize,
    pub kernel: F2Subspace,
    /// Lifts `e_{I_1}..e_{I_M}` in `⌊B⌋^⊥`.
    pub lifts: Vec<u64>,
    z: ZDecomposition,
}

pub fn quotient_symplectic_basis(b: &IntervalSet) -> Result<QuotientBasis> {
    let z = z_of(b)?;
    Ok(QuotientBasis { d: b.d(), kernel: b.span(), lifts: z.sequence.iter().map(Interval::mask).collect(), z })
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    /// Gram matrix of the induced form on the basis.
    pub fn gram(&self) -> Vec<Vec<bool>> {
        let f = crate::classical::space::form;
        self.lifts.iter().map(|&x| self.lifts.iter().map(|&y| f(x, y)).collect()).collect()
    }

    /// Inverse image in `⌊B⌋^⊥` of the span of quotient vectors, each given
    /// by its coordinates (bit `a-1` for the `a`-th basis vector).
    pub fn inverse_image(&self, coords: &[u64]) -> F2Subspace {
        let lift = |c: u64| {
            self.lifts.iter().enumerate().filter(|(a, _)| c >> a & 1 == 1).fold(0u64, |acc, (_, &l)| acc ^ l)
        };
        let mut s = self.kernel.clone();
        for &c in coords {
            s.insert(lift(c));
        }
        s
    }

    /// Inverse image of the `k`-th primitive subspace
    /// `<f_{[1,M]}, ..., f_{[k,M+1-k]}>` of the quotient.
    pub fn primitive_preimage(&self, k: usize) -> Result<F2Subspace> {
        let m = self.dim();
        if 2 * k > m {
            return Err(Error::OutOfRange(format!("k = {k} > M/2 = {}", m / 2)));
        }
        let coords: Vec<u64> = (1..=k).map(|a| crate::classical::space::e_interval(a, m + 1 - a)).collect();
        Ok(self.inverse_image(&coords))
    }

    pub fn decomposition(&self) -> &ZDecomposition {
        &self.z
    }
}
