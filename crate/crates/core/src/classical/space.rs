//! The symplectic F2-space `V` with basis `e_1..e_D`, vectors as bitmasks
//! (bit `i-1` is `e_i`), and its identification with `M(V^delta)`.

use crate::error::{Error, Result};

/// Largest even `D` for which vectors fit the bitmask.
pub const MAX_D: usize = 24;

/// `(e_i, e_j) = 1` iff `|i - j| = 1`.
pub fn form(u: u64, v: u64) -> bool {
    ((u & (v << 1)).count_ones() + (u & (v >> 1)).count_ones()) % 2 == 1
}

pub fn e(i: usize) -> u64 {
    1u64 << (i - 1)
}

/// `e_I = sum_{i in [a,b]} e_i`.
pub fn e_interval(a: usize, b: usize) -> u64 {
    ((1u64 << b) - 1) & !((1u64 << (a - 1)) - 1)
}

/// Position of `xi_i` among `e_1..e_D`.
pub fn xi_position(d: usize, delta: u8, i: usize) -> usize {
    if delta == 0 {
        2 * i
    } else {
        d - (2 * i - 1)
    }
}

/// Mask of `V^delta`: the `e_i` with `i = delta mod 2`.
pub fn parity_mask(d: usize, delta: u8) -> u64 {
    (1..=d).filter(|&i| i % 2 == delta as usize % 2).map(e).fold(0, |a, b| a | b)
}

/// Splits `v'` in `V'` (dimension `D - 2`) around position `i`: the part on
/// `e'_1..e'_{i-2}`, the part on `e'_i..` shifted up by two, and whether
/// `e'_{i-1}` occurs.
fn split(d: usize, i: usize, v: u64) -> (u64, u64, bool) {
    let low = if i >= 2 { v & ((1u64 << (i - 2)) - 1) } else { 0 };
    let high = (v >> (i - 1)) << (i + 1);
    let mid = i >= 2 && i - 1 <= d - 2 && v >> (i - 2) & 1 == 1;
    (low, high, mid)
}

/// `T_i : V' -> V`.
pub fn t_map(d: usize, i: usize, v: u64) -> u64 {
    let (low, high, mid) = split(d, i, v);
    let mid = if mid && 1 < i && i < d { e(i - 1) | e(i) | e(i + 1) } else { 0 };
    low | high | mid
}

/// `T_i^delta : V'^delta -> V^delta`, the same as `T_i` but sending
/// `e'_{i-1}` to `e_{i-1} + e_{i+1}`.
pub fn t_map_delta(d: usize, i: usize, v: u64) -> u64 {
    let (low, high, mid) = split(d, i, v);
    let mid = if mid && 1 < i && i < d { e(i - 1) | e(i + 1) } else { 0 };
    low | high | mid
}

fn check(d: usize, delta: u8) -> Result<()> {
    if d % 2 != 0 || d > MAX_D || delta > 1 {
        return Err(Error::OutOfRange(format!("D = {d}, delta = {delta}")));
    }
    Ok(())
}

/// `v = z + z'` with `z'` in `V^delta` and `z` in `V^{1-delta}` goes to the
/// pair `(z', t_z)`: returns the element of `V_n` (bit `i-1` for `xi_i`)
/// and the dual index `d` with `d_i = (z, xi_i)`.
pub fn to_pair(v: u64, d: usize, delta: u8) -> Result<(u32, u32)> {
    check(d, delta)?;
    let n = d / 2;
    let z = v & parity_mask(d, 1 - delta);
    let mut x = 0u32;
    let mut chi = 0u32;
    for i in 1..=n {
        let p = e(xi_position(d, delta, i));
        if v & p != 0 {
            x |= 1 << (i - 1);
        }
        if form(z, p) {
            chi |= 1 << (i - 1);
        }
    }
    Ok((x, chi))
}

/// Inverse of [`to_pair`].
pub fn from_pair(x: u32, chi: u32, d: usize, delta: u8) -> Result<u64> {
    check(d, delta)?;
    let n = d / 2;
    let mut v = 0u64;
    for i in 1..=n {
        if x >> (i - 1) & 1 == 1 {
            v |= e(xi_position(d, delta, i));
        }
    }
    // z is determined by its pairings (z, e_p) = z_{p-1} + z_{p+1}; walk
    // away from the end of the chain where one neighbour is missing.
    let mut z = 0u64;
    let bit = |z: u64, q: usize| q >= 1 && q <= d && z & e(q) != 0;
    for i in (1..=n).rev() {
        let p = xi_position(d, delta, i);
        let want = chi >> (i - 1) & 1 == 1;
        if delta == 1 {
            if bit(z, p - 1) != want {
                z |= e(p + 1);
            }
        } else if bit(z, p + 1) != want {
            z |= e(p - 1);
        }
    }
    Ok(v | z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_is_the_chain() {
        assert!(form(e(1), e(2)));
        assert!(!form(e(1), e(3)));
        assert!(!form(e(2), e(2)));
        assert!(form(e_interval(1, 2), e(3)));
    }

    #[test]
    fn t_maps_preserve_the_form() {
        for d in [2usize, 4, 6, 8] {
            for i in 1..=d {
                for x in 0..1u64 << (d - 2) {
                    for y in 0..1u64 << (d - 2) {
                        assert_eq!(form(x, y), form(t_map(d, i, x), t_map(d, i, y)), "D={d} i={i}");
                    }
                    assert_eq!(t_map(d, i, x) & e(i) == 0, t_map_delta(d, i, x) == t_map(d, i, x));
                }
            }
        }
    }

    #[test]
    fn t_map_of_interval_vector() {
        use crate::classical::interval::{xi_embed, Interval};
        for d in [2usize, 4, 6, 8] {
            for i in 1..=d {
                for a in 1..=d.saturating_sub(2) {
                    for b in a..=d - 2 {
                        let iv = Interval::new(a, b).unwrap();
                        assert_eq!(t_map(d, i, iv.mask()), xi_embed(d, i, iv).unwrap().mask());
                    }
                }
            }
        }
    }

    #[test]
    fn identification_round_trips() {
        for d in [2usize, 4, 6] {
            for delta in 0..2 {
                let mut seen = std::collections::HashSet::new();
                for v in 0..1u64 << d {
                    let (x, c) = to_pair(v, d, delta).unwrap();
                    assert!(seen.insert((x, c)));
                    assert_eq!(from_pair(x, c, d, delta).unwrap(), v);
                }
            }
        }
    }
}
