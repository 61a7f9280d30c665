use std::sync::Arc;

use rayon::prelude::*;

use super::{MSpace, MVector};
use crate::groups::Descriptor;
use crate::scalars::{Cyclo, Rational};

/// Which factor of the pairing carries the complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `sigma(gyg^-1) * conj(tau(g^-1xg))`
    Second,
    /// `conj(sigma(gyg^-1)) * tau(g^-1xg)`
    First,
}

/// The placement used throughout.
pub const PLACEMENT: Placement = Placement::Second;

/// Matrix of the Fourier transform, `A(v)_n = sum_m v_m P[m][n]`.
pub enum FourierMatrix {
    Dense { n: usize, entries: Vec<Cyclo> },
    /// `P[(x,d),(y,e)] = (-1)^{d.y + e.x} / 2^dim`.
    Based { dim: usize },
    Product { space: Arc<MSpace>, factors: Vec<Arc<FourierMatrix>> },
}

impl FourierMatrix {
    pub fn entry(&self, m: usize, n: usize) -> Cyclo {
        match self {
            FourierMatrix::Dense { n: size, entries } => entries[m * size + n].clone(),
            FourierMatrix::Based { dim } => {
                let (x, d) = ((m >> dim) as u32, (m & ((1 << dim) - 1)) as u32);
                let (y, e) = ((n >> dim) as u32, (n & ((1 << dim) - 1)) as u32);
                let sign = if ((d & y).count_ones() + (e & x).count_ones()) % 2 == 0 { 1 } else { -1 };
                Cyclo::ratio(sign, 1i128 << dim)
            }
            FourierMatrix::Product { space, factors } => {
                let a = space.factor_pair(super::MPair(m)).unwrap().1;
                let b = space.factor_pair(super::MPair(n)).unwrap().1;
                let mut acc = Cyclo::one();
                for ((f, &i), &j) in factors.iter().zip(a).zip(b) {
                    acc = &acc * &f.entry(i, j);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
        }
    }

    pub fn apply(&self, v: &MVector) -> MVector {
        let space = v.space();
        if let FourierMatrix::Based { dim } = self {
            if let Some(out) = apply_based_rational(*dim, v) {
                return out;
            }
        }
        let terms: Vec<(usize, Cyclo)> = v.terms().map(|(m, c)| (m.0, c.clone())).collect();
        let dense: Vec<Cyclo> = (0..space.len())
            .into_par_iter()
            .map(|n| terms.iter().map(|(m, c)| c * &self.entry(*m, n)).sum())
            .collect();
        MVector::from_dense(space, dense)
    }
}

/// Signed sums over a common denominator when every coefficient is rational.
fn apply_based_rational(dim: usize, v: &MVector) -> Option<MVector> {
    let mut den: i128 = 1;
    let mut terms: Vec<(u32, u32, Rational)> = Vec::new();
    for (m, c) in v.terms() {
        let r = c.to_rational()?;
        den = num_integer::lcm(den, *r.denom() as i128);
        terms.push(((m.0 >> dim) as u32, (m.0 & ((1 << dim) - 1)) as u32, r));
    }
    let ints: Vec<(u32, u32, i128)> =
        terms.iter().map(|(x, d, r)| (*x, *d, *r.numer() as i128 * (den / *r.denom() as i128))).collect();
    let space = v.space();
    let dense: Vec<Cyclo> = (0..space.len())
        .into_par_iter()
        .map(|n| {
            let (y, e) = ((n >> dim) as u32, (n & ((1 << dim) - 1)) as u32);
            let sum: i128 = ints
                .iter()
                .map(|&(x, d, k)| if ((d & y).count_ones() + (e & x).count_ones()) % 2 == 0 { k } else { -k })
                .sum();
            Cyclo::ratio(sum, den << dim)
        })
        .collect();
    Some(MVector::from_dense(space, dense))
}

/// The based matrix is `H / 2^dim` with `H` a real sign matrix, so it is
/// unitary iff distinct rows of `H` agree in exactly half the entries.
fn based_sign_rows_orthogonal(dim: usize) -> bool {
    let n = 1usize << (2 * dim);
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|m| {
            let (x, d) = ((m >> dim) as u32, (m & ((1 << dim) - 1)) as u32);
            let mut row = vec![0u64; words];
            for col in 0..n {
                let (y, e) = ((col >> dim) as u32, (col & ((1 << dim) - 1)) as u32);
                if ((d & y).count_ones() + (e & x).count_ones()) % 2 == 1 {
                    row[col / 64] |= 1 << (col % 64);
                }
            }
            row
        })
        .collect();
    (0..n).into_par_iter().all(|i| {
        (i + 1..n).all(|j| {
            let diff: u32 = rows[i].iter().zip(&rows[j]).map(|(a, b)| (a ^ b).count_ones()).sum();
            2 * diff as usize == n
        })
    })
}

impl MSpace {
    pub fn fourier_matrix(self: &Arc<Self>) -> Arc<FourierMatrix> {
        self.fourier.get_or_init(|| Arc::new(self.build_fourier(PLACEMENT))).clone()
    }

    /// Pairing matrix under an explicit conjugation placement.
    pub fn fourier_matrix_with(self: &Arc<Self>, placement: Placement) -> FourierMatrix {
        if placement == PLACEMENT {
            return FourierMatrix::Dense {
                n: self.len(),
                entries: (0..self.len() * self.len())
                    .map(|k| self.fourier_matrix().entry(k / self.len(), k % self.len()))
                    .collect(),
            };
        }
        self.generic_fourier(placement)
    }

    fn build_fourier(self: &Arc<Self>, placement: Placement) -> FourierMatrix {
        match self.descriptor() {
            Descriptor::Based(dim) => FourierMatrix::Based { dim },
            Descriptor::Product(_) => {
                let (spaces, _) = self.factor_pair(super::MPair(0)).unwrap();
                let factors = spaces.iter().map(|s| s.fourier_matrix()).collect();
                FourierMatrix::Product { space: self.clone(), factors }
            }
            Descriptor::Sym(_) => self.generic_fourier(placement),
        }
    }

    /// The pairing straight from its definition, summed over the group.
    pub fn generic_fourier(&self, placement: Placement) -> FourierMatrix {
        let g = &self.group;
        let n = self.len();
        let k = self.classes.len();
        let rows: Vec<Vec<Cyclo>> = (0..k)
            .into_par_iter()
            .flat_map_iter(|cx| {
                let x = self.classes.reps[cx];
                let zx = self.classes.centralizers[cx].order() as i128;
                let tx = self.table(cx);
                let mut block = vec![vec![Cyclo::zero(); n]; tx.len()];
                for cy in 0..k {
                    let y = self.classes.reps[cy];
                    let zy = self.classes.centralizers[cy].order() as i128;
                    let ty = self.table(cy);
                    let mut acc = vec![vec![Cyclo::zero(); ty.len()]; tx.len()];
                    for h in g.elements() {
                        let u = g.conj(h, y);
                        if !g.commute(x, u) {
                            continue;
                        }
                        let w = g.conj(g.inv(h), x);
                        let sv: Vec<Cyclo> = (0..tx.len()).map(|s| tx.value(s, u)).collect();
                        let tv: Vec<Cyclo> = (0..ty.len()).map(|t| ty.value(t, w)).collect();
                        for (s, a) in sv.iter().enumerate() {
                            for (t, b) in tv.iter().enumerate() {
                                let term = match placement {
                                    Placement::Second => a * &b.conj(),
                                    Placement::First => &a.conj() * b,
                                };
                                acc[s][t] += &term;
                            }
                        }
                    }
                    let scale = Cyclo::ratio(1, zx * zy);
                    for (s, row) in acc.into_iter().enumerate() {
                        for (t, v) in row.into_iter().enumerate() {
                            block[s][self.offsets[cy] + t] = &v * &scale;
                        }
                    }
                }
                block
            })
            .collect();
        FourierMatrix::Dense { n, entries: rows.into_iter().flatten().collect() }
    }

    /// `A * conj(A)^T == I`, exactly.
    pub fn fourier_is_unitary(self: &Arc<Self>) -> bool {
        let a = self.fourier_matrix();
        if let FourierMatrix::Based { dim } = *a {
            return based_sign_rows_orthogonal(dim);
        }
        let n = self.len();
        let full: Vec<Cyclo> = (0..n * n).into_par_iter().map(|k| a.entry(k / n, k % n)).collect();
        (0..n).into_par_iter().all(|i| {
            (0..n).all(|j| {
                let s: Cyclo = (0..n).map(|k| &full[i * n + k] * &full[j * n + k].conj()).sum();
                if i == j {
                    s.is_one()
                } else {
                    s.is_zero()
                }
            })
        })
    }
}
