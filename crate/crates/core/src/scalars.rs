//! Exact coefficients: rationals and elements of the cyclotomic field
//! `Q(E(60))`, which contains every character value of the groups handled
//! by this crate (roots of unity of order 1 to 6, `i` and the fifth roots).
//!
//! A [`Cyclo`] is stored in the power basis `1, z, ..., z^15` of
//! `Q(z)`, `z = exp(2 pi i / 60)`, reduced modulo the 60th cyclotomic
//! polynomial, with a single positive common denominator. Elements of `Q`
//! use a compact representation so that the (very common) rational case
//! stays cheap.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Order of the root of unity generating the field.
pub const ORDER: u32 = 60;
/// Degree of the field over `Q`.
pub const DEGREE: usize = 16;

/// The 60th cyclotomic polynomial, constant term first.
pub const PHI60: [i64; DEGREE + 1] = [1, 0, 1, 0, 0, 0, -1, 0, -1, 0, -1, 0, 0, 0, 1, 0, 1];

#[derive(Clone, PartialEq, Eq, Hash)]
enum Body {
    Rat(i64),
    Full(Box<[i64; DEGREE]>),
}

/// An element of `Q(E(60))` in canonical form.
///
/// Canonical form: numerators in the power basis, a positive denominator
/// coprime to the gcd of the numerators, and the compact variant whenever
/// the value is rational. Structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    den: i64,
    body: Body,
}

fn powers() -> &'static [[i64; DEGREE]; ORDER as usize] {
    static POWERS: OnceLock<[[i64; DEGREE]; ORDER as usize]> = OnceLock::new();
    POWERS.get_or_init(|| {
        let mut out = [[0i64; DEGREE]; ORDER as usize];
        let mut cur = [0i64; DEGREE];
        cur[0] = 1;
        for slot in out.iter_mut() {
            *slot = cur;
            // multiply by z and reduce the z^16 term
            let top = cur[DEGREE - 1];
            let mut next = [0i64; DEGREE];
            next[1..DEGREE].copy_from_slice(&cur[..(DEGREE - 1)]);
            for (j, c) in next.iter_mut().enumerate() {
                *c -= top * PHI60[j];
            }
            cur = next;
        }
        out
    })
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn overflow() -> Error {
    Error::Overflow("cyclotomic coefficient does not fit i64".into())
}

/// Coefficients stay in `-i64::MAX..=i64::MAX` so that negation is total.
fn narrow(x: i128) -> Result<i64> {
    match i64::try_from(x) {
        Ok(n) if n != i64::MIN => Ok(n),
        _ => Err(overflow()),
    }
}

fn wide_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn wide_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(overflow)
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { den: 1, body: Body::Rat(0) }
    }

    pub fn one() -> Self {
        Cyclo::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Cyclo { den: 1, body: Body::Rat(n) }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo::ratio(*r.numer() as i128, *r.denom() as i128)
    }

    /// `num / den` for integers; panics when `den == 0` or when the reduced
    /// fraction does not fit `i64`.
    pub fn ratio(num: i128, den: i128) -> Self {
        Cyclo::try_ratio(num, den).expect("cyclotomic coefficient overflow")
    }

    /// Fallible [`Cyclo::ratio`].
    pub fn try_ratio(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        if num == i128::MIN || den == i128::MIN {
            return Err(overflow());
        }
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Cyclo { den: narrow(d)?, body: Body::Rat(narrow(n)?) })
    }

    /// `E(60)^k`.
    pub fn root(k: i64) -> Self {
        let k = k.rem_euclid(ORDER as i64) as usize;
        let p = powers()[k];
        Cyclo::from_wide(p.map(|c| c as i128), 1)
    }

    /// `E(n)^k`, the `k`-th power of `exp(2 pi i / n)`; `n` must divide 60.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0 && ORDER % n == 0, "E({n}) is not in Q(E(60))");
        Cyclo::root(k * (ORDER / n) as i64)
    }

    fn from_wide(num: [i128; DEGREE], den: i128) -> Self {
        Cyclo::try_from_wide(num, den).expect("cyclotomic coefficient overflow")
    }

    fn try_from_wide(num: [i128; DEGREE], den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        if den == i128::MIN || num.contains(&i128::MIN) {
            return Err(overflow());
        }
        let mut g = den;
        for &c in &num {
            if c != 0 {
                g = gcd_i128(g, c);
            }
        }
        if den < 0 {
            g = -g.abs();
        } else {
            g = g.abs();
        }
        let d = den / g;
        let rational = num[1..].iter().all(|&c| c == 0);
        if rational {
            return Ok(Cyclo { den: narrow(d)?, body: Body::Rat(narrow(num[0] / g)?) });
        }
        let mut out = [0i64; DEGREE];
        for (o, &c) in out.iter_mut().zip(num.iter()) {
            *o = narrow(c / g)?;
        }
        Ok(Cyclo { den: narrow(d)?, body: Body::Full(Box::new(out)) })
    }

    fn wide(&self) -> [i128; DEGREE] {
        let mut out = [0i128; DEGREE];
        match &self.body {
            Body::Rat(n) => out[0] = *n as i128,
            Body::Full(c) => {
                for (o, &x) in out.iter_mut().zip(c.iter()) {
                    *o = x as i128;
                }
            }
        }
        out
    }

    /// Numerators in the power basis together with the common denominator.
    pub fn numerators(&self) -> ([i64; DEGREE], i64) {
        let mut out = [0i64; DEGREE];
        match &self.body {
            Body::Rat(n) => out[0] = *n,
            Body::Full(c) => out = **c,
        }
        (out, self.den)
    }

    /// Coefficient of `E(60)^j` in the power basis (`j < 16`).
    pub fn coefficient(&self, j: usize) -> Rational {
        let (num, den) = self.numerators();
        Rational::new(num[j], den)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.body, Body::Rat(0))
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && matches!(self.body, Body::Rat(1))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.body, Body::Rat(_))
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.body {
            Body::Rat(n) => Some(Rational::new(n, self.den)),
            Body::Full(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1 && self.is_rational()
    }

    pub fn to_integer(&self) -> Option<i64> {
        match self.body {
            Body::Rat(n) if self.den == 1 => Some(n),
            _ => None,
        }
    }

    /// Complex conjugation, `E(60)^k -> E(60)^-k`.
    pub fn conj(&self) -> Self {
        match &self.body {
            Body::Rat(_) => self.clone(),
            Body::Full(c) => {
                let mut out = [0i128; DEGREE];
                for (k, &x) in c.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let p = &powers()[(ORDER as usize - k) % ORDER as usize];
                    for j in 0..DEGREE {
                        out[j] += x as i128 * p[j] as i128;
                    }
                }
                Cyclo::from_wide(out, self.den as i128)
            }
        }
    }

    /// Floating-point value; each power of `E(60)` is evaluated with
    /// relative error about `1e-16`.
    pub fn eval(&self) -> Complex64 {
        let (num, den) = self.numerators();
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in num.iter().enumerate() {
            if c != 0 {
                let t = std::f64::consts::TAU * k as f64 / ORDER as f64;
                acc += Complex64::new(t.cos(), t.sin()) * c as f64;
            }
        }
        acc / den as f64
    }

    /// True iff the value is real (exactly) and `>= -tol` (exactly for
    /// rationals, numerically otherwise).
    pub fn is_nonneg_real(&self, tol: f64) -> bool {
        match self.body {
            Body::Rat(n) => n >= 0,
            Body::Full(_) => {
                if self.conj() != *self {
                    return false;
                }
                self.eval().re >= -tol
            }
        }
    }

    pub fn scale(&self, r: Rational) -> Self {
        self * &Cyclo::from_rational(r)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Body::Rat(n) = self.body {
            return Ok(Cyclo::ratio(self.den as i128, n as i128));
        }
        // Solve (self * x = 1) as a 16x16 linear system over Q; the
        // intermediate entries can be far wider than the result.
        let big = |n: i64| BigRational::from_integer(BigInt::from(n));
        let mut m = vec![vec![BigRational::zero(); DEGREE + 1]; DEGREE];
        for j in 0..DEGREE {
            let col = self * &Cyclo::root(j as i64);
            let (num, den) = col.numerators();
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = big(num[i]) / big(den);
            }
        }
        m[0][DEGREE] = big(1);
        for col in 0..DEGREE {
            let pivot = (col..DEGREE)
                .find(|&r| !m[r][col].is_zero())
                .expect("multiplication by a nonzero field element is invertible");
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[col].clone();
            for r in 0..DEGREE {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for (x, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * p;
                    }
                }
            }
        }
        let mut l = BigInt::from(1);
        for row in &m {
            l = l.lcm(row[DEGREE].denom());
        }
        let overflow = || Error::Overflow(format!("inverse of {self}"));
        let fits = |x: &BigInt| i64::try_from(x).map(i128::from).map_err(|_| overflow());
        let mut num = [0i128; DEGREE];
        for (i, row) in m.iter().enumerate() {
            let v = &row[DEGREE];
            num[i] = fits(&(v.numer() * (&l / v.denom())))?;
        }
        Ok(Cyclo::from_wide(num, fits(&l)?))
    }

    pub fn checked_div(&self, rhs: &Cyclo) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Nonzero power-basis coefficients as `(exponent, numerator, denominator)`
    /// triples, each reduced; rationals use exponent 0 only.
    pub fn to_triples(&self) -> Vec<(u32, i64, i64)> {
        let (num, den) = self.numerators();
        num.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let r = Rational::new(c, den);
                (k as u32, *r.numer(), *r.denom())
            })
            .collect()
    }

    /// Inverse of [`Cyclo::to_triples`]; exponents are read modulo 60, so
    /// non-canonical input is accepted and reduced.
    pub fn from_triples(triples: &[(u32, i64, i64)]) -> Result<Self> {
        let mut acc = Cyclo::zero();
        for &(k, n, d) in triples {
            if d == 0 {
                return Err(Error::Parse("zero denominator in cyclotomic literal".into()));
            }
            let c = Cyclo::try_ratio(n as i128, d as i128)?;
            acc = acc.checked_add(&c.checked_mul(&Cyclo::root(k as i64))?)?;
        }
        Ok(acc)
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(r)
    }
}

impl Add<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.checked_add(rhs).expect("cyclotomic coefficient overflow")
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        match &self.body {
            Body::Rat(n) => Cyclo { den: self.den, body: Body::Rat(-n) },
            Body::Full(c) => Cyclo { den: self.den, body: Body::Full(Box::new(c.map(|x| -x))) },
        }
    }
}

impl Sub<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Mul<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.checked_mul(rhs).expect("cyclotomic coefficient overflow")
    }
}


impl Cyclo {
    /// Sum, or [`Error::Overflow`] when a coefficient leaves `i64`.
    pub fn checked_add(&self, rhs: &Cyclo) -> Result<Cyclo> {
        let (d1, d2) = (self.den as i128, rhs.den as i128);
        if let (Body::Rat(a), Body::Rat(b)) = (&self.body, &rhs.body) {
            if d1 == d2 {
                return Cyclo::try_ratio(*a as i128 + *b as i128, d1);
            }
            return Cyclo::try_ratio(*a as i128 * d2 + *b as i128 * d1, d1 * d2);
        }
        let l = d1.lcm(&d2);
        let (f1, f2) = (l / d1, l / d2);
        let (a, b) = (self.wide(), rhs.wide());
        let mut out = [0i128; DEGREE];
        for j in 0..DEGREE {
            out[j] = wide_add(wide_mul(a[j], f1)?, wide_mul(b[j], f2)?)?;
        }
        Cyclo::try_from_wide(out, l)
    }

    pub fn checked_sub(&self, rhs: &Cyclo) -> Result<Cyclo> {
        self.checked_add(&-rhs)
    }

    /// Product, or [`Error::Overflow`] when a coefficient leaves `i64`.
    pub fn checked_mul(&self, rhs: &Cyclo) -> Result<Cyclo> {
        let den = self.den as i128 * rhs.den as i128;
        match (&self.body, &rhs.body) {
            (Body::Rat(a), Body::Rat(b)) => Cyclo::try_ratio(*a as i128 * *b as i128, den),
            (Body::Rat(a), Body::Full(_)) => Cyclo::try_from_wide(rhs.wide().map(|x| x * *a as i128), den),
            (Body::Full(_), Body::Rat(b)) => Cyclo::try_from_wide(self.wide().map(|x| x * *b as i128), den),
            (Body::Full(a), Body::Full(b)) => {
                let mut prod = [0i128; 2 * DEGREE - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        prod[i + j] = wide_add(prod[i + j], x as i128 * y as i128)?;
                    }
                }
                for d in (DEGREE..2 * DEGREE - 1).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for j in 0..DEGREE {
                        prod[d - DEGREE + j] = prod[d - DEGREE + j].checked_sub(wide_mul(c, PHI60[j] as i128)?).ok_or_else(overflow)?;
                    }
                }
                let mut out = [0i128; DEGREE];
                out.copy_from_slice(&prod[..DEGREE]);
                Cyclo::try_from_wide(out, den)
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Cyclo {
    /// Rationals print bare; other values as sums of `c*E(60)^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, n, d) in self.to_triples() {
            let r = Rational::new(n, d);
            let mag = r.abs();
            if first {
                if r.is_negative() {
                    write!(f, "-")?;
                }
            } else if r.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag == Rational::from_integer(1) {
                write!(f, "E(60)^{k}")?;
            } else {
                write!(f, "{mag}*E(60)^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(u32, i64, i64)>::deserialize(d)?;
        Cyclo::from_triples(&triples).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Polynomial long division over Z by a monic divisor.
    fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        let mut q = vec![0i64; num.len().saturating_sub(dd)];
        for i in (0..q.len()).rev() {
            let c = rem[i + dd];
            q[i] = c;
            for (j, &x) in den.iter().enumerate() {
                rem[i + j] -= c * x;
            }
        }
        assert!(rem.iter().all(|&x| x == 0));
        q
    }

    fn cyclotomic(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = -1;
        p[n] = 1;
        for d in 1..n {
            if n % d == 0 {
                p = div_monic(&p, &cyclotomic(d));
            }
        }
        p
    }

    #[test]
    fn phi60_matches_division_oracle() {
        assert_eq!(cyclotomic(60), PHI60.to_vec());
    }

    #[test]
    fn root_identities() {
        let i = Cyclo::root(15);
        assert_eq!(&i * &i, Cyclo::from_int(-1));
        let z5 = |k| Cyclo::root_of_unity(5, k);
        let s = z5(1) + z5(2) + z5(3) + z5(4);
        assert_eq!(s, Cyclo::from_int(-1));
        let theta = Cyclo::root_of_unity(3, 1);
        let half = Cyclo::ratio(1, 2);
        assert_eq!(&(&half * &theta) + &(&half * &theta), theta);
        assert_eq!(Cyclo::root(60), Cyclo::one());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(Cyclo::root(15).conj(), -Cyclo::root(15));
        let r = Cyclo::ratio(3, 4);
        assert_eq!(r.conj(), r);
        let theta = Cyclo::root_of_unity(3, 1);
        assert_eq!(theta.conj(), Cyclo::root_of_unity(3, 2));
    }

    #[test]
    fn nonneg_real_examples() {
        assert!(Cyclo::ratio(2, 3).is_nonneg_real(1e-9));
        let g = Cyclo::root_of_unity(5, 1) + Cyclo::root_of_unity(5, 4);
        // 2 cos(2 pi / 5)
        assert!((g.eval().re - 0.618_033_988_749_894_9).abs() < 1e-12);
        assert!(g.is_nonneg_real(1e-9));
        assert!(!Cyclo::from_int(-1).is_nonneg_real(1e-9));
        assert!(!Cyclo::root(15).is_nonneg_real(1e-9));
    }

    #[test]
    fn division() {
        let a = Cyclo::root_of_unity(5, 1) + Cyclo::from_int(2);
        let b = Cyclo::root(7) - Cyclo::ratio(1, 3);
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert_eq!(a.checked_div(&Cyclo::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Cyclo::from_int(i64::MAX);
        assert!(matches!(big.checked_add(&big), Err(Error::Overflow(_))));
        assert!(matches!(big.checked_mul(&Cyclo::root(1)).unwrap().checked_mul(&big), Err(Error::Overflow(_))));
        assert!(matches!(Cyclo::try_ratio(i64::MIN as i128, 1), Err(Error::Overflow(_))));
        assert_eq!(Cyclo::try_ratio(1, 0), Err(Error::DivisionByZero));
        let p = Cyclo::ratio(1, i64::MAX as i128);
        let q = Cyclo::ratio(1, i64::MAX as i128 - 1);
        assert!(matches!(p.checked_add(&q), Err(Error::Overflow(_))));
        assert!(Cyclo::from_triples(&[(0, i64::MAX, 1), (0, i64::MAX, 1)]).is_err());
        assert_eq!(big.checked_sub(&big), Ok(Cyclo::zero()));
    }

    #[test]
    fn triples_and_json() {
        let theta = Cyclo::root_of_unity(3, 1);
        let t = theta.to_triples();
        let back = Cyclo::from_triples(&t).unwrap();
        assert_eq!(back, theta);
        assert_eq!(Cyclo::ratio(-3, 4).to_triples(), vec![(0, -3, 4)]);
        let j = serde_json::to_string(&Cyclo::ratio(1, 2)).unwrap();
        assert_eq!(j, "[[0,1,2]]");
        let c: Cyclo = serde_json::from_str("[[20,1,1]]").unwrap();
        assert_eq!(c, theta);
        assert!(serde_json::from_str::<Cyclo>("[[0,1,0]]").is_err());
    }

    pub fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
        (prop::collection::vec((0u32..60, -100i64..=100), 0..6), 1i64..12).prop_map(|(terms, d)| {
            let t: Vec<_> = terms.into_iter().map(|(k, n)| (k, n, d)).collect();
            Cyclo::from_triples(&t).unwrap()
        })
    }

    proptest! {
        #[test]
        fn conj_is_multiplicative_involution(a in arb_cyclo(), b in arb_cyclo()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn self_difference_is_canonical_zero(a in arb_cyclo()) {
            let z = &a - &a;
            prop_assert!(z.is_zero());
            prop_assert!(z.to_triples().is_empty());
        }

        #[test]
        fn eval_is_multiplicative(a in arb_cyclo(), b in arb_cyclo()) {
            let lhs = (&a * &b).eval();
            let rhs = a.eval() * b.eval();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }

        #[test]
        fn rational_embedding_round_trips(n in -1000i64..1000, d in 1i64..1000) {
            let r = Rational::new(n, d);
            prop_assert_eq!(Cyclo::from_rational(r).to_rational(), Some(r));
        }

        #[test]
        fn triples_round_trip(a in arb_cyclo()) {
            prop_assert_eq!(Cyclo::from_triples(&a.to_triples()).unwrap(), a);
        }
    }
}
