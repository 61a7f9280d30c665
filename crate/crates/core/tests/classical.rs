use std::collections::BTreeSet;

use bipositive::classical::space::{e, form, parity_mask, t_map};
use bipositive::classical::{
    alpha, b_of_k, interval_family, lambda_inverse, quotient_symplectic_basis, subspace_family, tilde_c_pairs,
    xi_embed, z_of, Caps, F2Subspace, Family, Interval, IntervalSet,
};
use proptest::prelude::*;

fn iv(a: usize, b: usize) -> Interval {
    Interval::new(a, b).unwrap()
}

fn set(text: &str, d: usize) -> IntervalSet {
    IntervalSet::parse(text, d).unwrap()
}

#[test]
fn xi_embed_cases() {
    assert_eq!(xi_embed(4, 2, iv(1, 1)).unwrap(), iv(1, 3));
    assert_eq!(xi_embed(6, 1, iv(2, 3)).unwrap(), iv(4, 5));
    assert!(xi_embed(4, 5, iv(1, 2)).is_err());
    assert_eq!(xi_embed(6, 5, iv(1, 2)).unwrap(), iv(1, 2));
}

#[test]
fn insertion_examples() {
    let t = IntervalSet::empty(0).t_insert(1).unwrap();
    assert_eq!(t, set("{[1,1]}", 2));
    let t = set("{[1,1]}", 2).t_insert(1).unwrap();
    assert_eq!(t, set("{[3,3],[1,1]}", 4));
}

#[test]
fn small_families() {
    let caps = Caps::default();
    let s2: BTreeSet<String> = interval_family(Family::SD, 2, &caps).unwrap().iter().map(|b| b.to_string()).collect();
    assert_eq!(s2, ["{}", "{[1,1]}", "{[2,2]}"].map(String::from).into());
    let ss2: BTreeSet<String> =
        interval_family(Family::SSD, 2, &caps).unwrap().iter().map(|b| b.to_string()).collect();
    assert_eq!(ss2, ["{}", "{[1,2]}", "{[1,1]}", "{[2,2]}"].map(String::from).into());
    let b = set("{[3,5],[4,4],[8,10],[9,9]}", 10);
    assert!(interval_family(Family::SD, 10, &caps).unwrap().contains(&b));

    let ff: BTreeSet<F2Subspace> = subspace_family(Family::FF, 2, &caps).unwrap().iter().cloned().collect();
    let want: BTreeSet<F2Subspace> =
        [F2Subspace::zero(), F2Subspace::span([e(1)]), F2Subspace::span([e(2)]), F2Subspace::span([e(1) | e(2)])].into();
    assert_eq!(ff, want);
}

#[test]
fn family_caps_are_enforced() {
    let caps = Caps { family: 6, sweep: 4 };
    assert!(interval_family(Family::SD, 8, &caps).is_err());
    assert!(subspace_family(Family::FF, 3, &Caps::default()).is_err());
}

#[test]
fn spans_have_dimension_equal_to_size() {
    let caps = Caps::default();
    for d in (0..=10).step_by(2) {
        for b in interval_family(Family::SSD, d, &caps).unwrap().iter() {
            assert_eq!(b.span().dim(), b.len(), "{b}");
        }
    }
}

#[test]
fn f_is_inside_ff_and_everything_is_isotropic() {
    let caps = Caps::default();
    for d in (0..=12).step_by(2) {
        let family = subspace_family(Family::FF, d, &caps).unwrap();
        let ff: BTreeSet<&F2Subspace> = family.iter().collect();
        assert!(ff.iter().all(|s| s.is_isotropic()), "D = {d}");
        let f = subspace_family(Family::F, d, &caps).unwrap();
        assert!(f.iter().all(|s| ff.contains(s)), "D = {d}");
    }
}

#[test]
fn kappa_examples() {
    assert_eq!(iv(3, 5).kappa(), Some(1));
    assert_eq!(iv(2, 2).kappa(), Some(0));
    assert_eq!(iv(1, 2).kappa(), None);
}

#[test]
fn alpha_of_the_trivial_pair_is_zero() {
    for d in [2usize, 4, 6] {
        for delta in [0u8, 1] {
            let whole = F2Subspace::coordinate(parity_mask(d, delta));
            let pair = tilde_c_pairs(d, delta, &Caps::default())
                .unwrap()
                .iter()
                .find(|p| p.l1.dim() == 0 && p.l2 == whole)
                .cloned()
                .unwrap();
            assert_eq!(alpha(&pair, d), F2Subspace::zero());
        }
    }
}

#[test]
fn z_decomposition_examples() {
    let z = z_of(&set("{[3,5],[4,4],[8,10],[9,9]}", 10)).unwrap();
    assert_eq!(z.z_set(), set("{[1,1],[2,6]}", 10));
    assert_eq!(z.m(), 10 - 2 * 4);
    let z = z_of(&set("{[2,4],[3,3],[8,10],[8,8]}", 10)).unwrap();
    assert_eq!(z.z_set(), set("{[1,5],[6,6]}", 10));
    assert!(z_of(&set("{[1,2]}", 2)).is_err());
}

#[test]
fn primitive_sets_from_the_empty_set() {
    for d in [2usize, 4, 6, 8] {
        for k in 0..=d / 2 {
            let want: Vec<Interval> = (1..=k).map(|a| iv(a, d + 1 - a)).collect();
            assert_eq!(b_of_k(&IntervalSet::empty(d), k).unwrap(), IntervalSet::new(d, want).unwrap());
        }
    }
}

#[test]
fn lambda_inverse_examples() {
    assert_eq!(lambda_inverse(&set("{[1,1]}", 2)).unwrap(), (set("{[1,1]}", 2), 0));
    assert_eq!(lambda_inverse(&set("{[1,4],[2,3]}", 4)).unwrap(), (IntervalSet::empty(4), 2));
}

#[test]
fn quotient_basis_of_the_empty_set_is_v() {
    for d in [2usize, 4, 6] {
        let q = quotient_symplectic_basis(&IntervalSet::empty(d)).unwrap();
        assert_eq!(q.dim(), d);
        assert_eq!(q.lifts, (1..=d).map(e).collect::<Vec<_>>());
        assert_eq!(q.kernel, F2Subspace::zero());
    }
}

#[test]
fn quotient_basis_has_adjacency_form() {
    let caps = Caps::default();
    for d in (2..=10).step_by(2) {
        for b in interval_family(Family::SD, d, &caps).unwrap().iter() {
            let q = quotient_symplectic_basis(b).unwrap();
            assert_eq!(q.dim(), d - 2 * b.len());
            let gram = q.gram();
            for (a, row) in gram.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    assert_eq!(x, a.abs_diff(c) == 1, "{b}: ({a},{c})");
                }
            }
            // lifts lie in the perp of the span
            let perp = b.span().perp(d);
            assert!(q.lifts.iter().all(|&l| perp.contains(l)), "{b}");
        }
    }
}

fn member_of(kind: Family) -> impl Strategy<Value = IntervalSet> {
    (0usize..=5, any::<prop::sample::Index>()).prop_map(move |(half, ix)| {
        let family = interval_family(kind, 2 * half, &Caps::default()).unwrap();
        family[ix.index(family.len())].clone()
    })
}

proptest! {
    #[test]
    fn insertion_adds_one_interval(b in member_of(Family::SSD), i in 1usize..=12) {
        let d = b.d() + 2;
        let i = 1 + (i - 1) % d;
        prop_assert_eq!(b.t_insert(i).unwrap().len(), b.len() + 1);
    }

    #[test]
    fn insertion_stays_in_s_d(b in member_of(Family::SD), i in 1usize..=12) {
        let d = b.d() + 2;
        let i = 1 + (i - 1) % d;
        let out = b.t_insert(i).unwrap();
        prop_assert!(interval_family(Family::SD, d, &Caps::default()).unwrap().contains(&out));
    }

    #[test]
    fn t_map_preserves_the_form(half in 1usize..=8, i in 1usize..=16, x in any::<u64>(), y in any::<u64>()) {
        let d = 2 * half;
        let i = 1 + (i - 1) % d;
        let mask = (1u64 << (d - 2)) - 1;
        let (x, y) = (x & mask, y & mask);
        prop_assert_eq!(form(x, y), form(t_map(d, i, x), t_map(d, i, y)));
    }

    #[test]
    fn lambda_inverse_round_trips(b in member_of(Family::SSD)) {
        let (base, k) = lambda_inverse(&b).unwrap();
        prop_assert_eq!(b_of_k(&base, k).unwrap(), b);
    }

    #[test]
    fn parse_round_trips(b in member_of(Family::SSD)) {
        prop_assert_eq!(IntervalSet::parse(&b.to_string(), b.d()).unwrap(), b);
    }
}
