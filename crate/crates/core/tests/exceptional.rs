use std::collections::BTreeSet;

use bipositive::exceptional::{
    basis_beta, frak_c, golden_table, lambda_by_name, prim_set, tilde_fc_set, variant_basis,
};
use bipositive::groups::Descriptor;
use bipositive::mspace::{MSpace, MVector};
use bipositive::Cyclo;

fn desc(name: &str) -> Descriptor {
    name.parse().unwrap()
}

fn parse(space: &str, text: &str) -> MVector {
    MVector::parse(&MSpace::parse(space).unwrap(), text).unwrap()
}

fn key(v: &MVector) -> String {
    v.to_json()
}

#[test]
fn frak_c_of_s2_maps_both_subgroups_to_the_trivial_group() {
    let homs = frak_c(&desc("S2")).unwrap();
    let sources: BTreeSet<usize> = homs.iter().map(|h| h.source.order()).collect();
    assert_eq!(sources, [1, 2].into());
    assert!(homs.iter().all(|h| h.target.order() == 1));
}

#[test]
fn frak_c_of_s4_has_the_projection_of_s2s2_with_kernel_s2() {
    let homs = frak_c(&desc("S4")).unwrap();
    let p = homs.iter().find(|h| h.source.name == "S2S2" && h.target.order() == 2).unwrap();
    assert_eq!(p.kernel().order(), 2);
    let s2 = bipositive::exceptional::lattice(4).get("S2").unwrap().clone();
    assert!(p.kernel().same_members(&s2));
    let f = homs.iter().find(|h| h.source.name == "D8").unwrap();
    assert_eq!(f.kernel().order(), 4);
}

#[test]
fn frak_c_of_v2_kills_each_basis_vector() {
    let homs = frak_c(&desc("V2")).unwrap();
    for j in 0..2 {
        let xi = 1u32 << j;
        assert!(
            homs.iter().any(|h| h.source.order() == 4
                && h.target.order() == 2
                && h.kernel().members().iter().copied().collect::<BTreeSet<_>>() == [0, xi].into()),
            "xi_{}",
            j + 1
        );
    }
}

#[test]
fn frak_c_rejects_unsupported_groups() {
    assert!(frak_c(&desc("S3xS2")).is_err());
}

#[test]
fn tilde_fc_pairs_are_normal_with_supported_quotients() {
    for name in ["S2", "S3", "S4", "S5", "V2", "V3"] {
        let d = desc(name);
        let g = MSpace::of(&d).unwrap().group.clone();
        for p in tilde_fc_set(&d).unwrap().iter() {
            assert!(p.lower.is_subgroup_of(&p.upper) && p.lower.is_normal_in(&g, &p.upper), "{name} {}", p.name());
            let q = p.quotient_space().unwrap();
            assert_eq!(q.group.order() * p.lower.order(), p.upper.order());
            assert!(prim_set(&q.descriptor()).is_ok());
        }
    }
    assert_eq!(tilde_fc_set(&desc("S4")).unwrap().len(), 12);
}

#[test]
fn prim_examples() {
    let names: Vec<String> = prim_set(&desc("S4")).unwrap().into_iter().map(|p| p.name).collect();
    assert_eq!(names.len(), 3);
    for n in ["Lambda(i)", "Lambda(-i)", "(1,1)"] {
        assert!(names.iter().any(|x| x == n), "{n} in {names:?}");
    }
    assert_eq!(prim_set(&desc("S3xS2")).unwrap().len(), 6);

    let v1 = prim_set(&desc("V1")).unwrap();
    assert_eq!(v1.len(), 2);
    let lambda = lambda_by_name(2, "Lambda(-1)").unwrap().vector;
    assert_eq!(lambda, parse("S2", "(g2,eps)+(1,1)"));
    // V1 and S2 share labels up to the names of the classes
    let f1 = v1.iter().find(|p| p.vector.terms().count() == 2).unwrap();
    let s2 = MSpace::parse("S2").unwrap();
    let relabelled: Vec<(usize, usize)> =
        f1.vector.terms().map(|(m, _)| (f1.vector.space().class_of_pair(m), f1.vector.space().char_of_pair(m))).collect();
    let expected: Vec<(usize, usize)> = lambda.terms().map(|(m, _)| (s2.class_of_pair(m), s2.char_of_pair(m))).collect();
    assert_eq!(relabelled, expected);
}

#[test]
fn prim_vectors_are_nonnegative_integral_with_unit_leading_term() {
    for name in ["S1", "S2", "S3", "S4", "S5", "S2xS2", "S3xS2", "V1", "V2", "V3"] {
        for p in prim_set(&desc(name)).unwrap() {
            assert!(p.vector.is_integral(), "{name} {}", p.name);
            assert!(p.vector.terms().all(|(_, c)| c.to_rational().is_some_and(|r| r >= 0.into())), "{name} {}", p.name);
            // the leading term is the one with the largest class
            let (m, c) = p.vector.terms().max_by_key(|(m, _)| m.0).unwrap();
            assert!(c.is_one(), "{name} {} at {}", p.name, p.vector.space().label(m));
        }
    }
}

#[test]
fn basis_examples() {
    let has = |group: &str, text: &str| {
        let want = key(&parse(group, text));
        basis_beta(&desc(group)).unwrap().iter().any(|b| key(&b.vector) == want)
    };
    assert!(has("S3", "(g2,eps)+(1,r)+(1,1)"));
    assert!(has("S4", "(g4,-1)+(g2',r)+(g2',1)+(g2,1)+(1,sigma)+(1,1)"));
    assert!(has("S5", "(g2,-1)+(1,lambda1)+(1,nu)+(1,1)"));
}

#[test]
fn basis_sizes_and_integrality() {
    for name in ["S1", "S2", "S3", "S4", "S5", "S2xS2", "S3xS2"] {
        let space = MSpace::parse(name).unwrap();
        let beta = basis_beta(&desc(name)).unwrap();
        assert_eq!(beta.len(), space.len(), "{name}");
        assert!(beta.iter().all(|b| b.vector.is_integral()), "{name}");
        let distinct: BTreeSet<String> = beta.iter().map(|b| key(&b.vector)).collect();
        assert_eq!(distinct.len(), beta.len(), "{name}");
    }
}

#[test]
fn product_basis_is_the_tensor_of_factor_bases() {
    let prod: BTreeSet<String> = basis_beta(&desc("S3xS2")).unwrap().iter().map(|b| key(&b.vector)).collect();
    let mut tensor = BTreeSet::new();
    for a in basis_beta(&desc("S3")).unwrap() {
        for b in basis_beta(&desc("S2")).unwrap() {
            tensor.insert(key(&a.vector.external_product(&b.vector).unwrap()));
        }
    }
    assert_eq!(prod, tensor);
}

#[test]
fn golden_table_examples() {
    let s2 = golden_table(2);
    assert_eq!(s2.len(), 4);
    let last = s2.last().unwrap();
    assert_eq!(last.lhs, "(g2,eps)");
    assert_eq!(last.rhs_vector().unwrap().unwrap(), lambda_by_name(2, "Lambda(-1)").unwrap().vector);

    let s5 = golden_table(5);
    let row = s5.iter().find(|r| r.lhs == "(1,lambda4)").unwrap();
    let expected = parse("S5", "4(1,lambda1)+6(1,lambda2)+4(1,lambda3)+(1,lambda4)+5(1,nu)+5(1,nu')+(1,1)");
    assert_eq!(row.rhs_vector().unwrap().unwrap(), expected);
    assert_eq!(row.triple().unwrap().evaluate().unwrap(), expected);
}

#[test]
fn variant_swaps_the_four_g5_images() {
    let base: Vec<String> = basis_beta(&desc("S5")).unwrap().iter().map(|b| key(&b.vector)).collect();
    let variant = variant_basis().unwrap();
    assert_eq!(variant.len(), base.len());
    // (g5,zeta) already comes from Lambda(zeta); the other three change
    let changed: Vec<&str> = variant
        .iter()
        .filter(|b| !base.contains(&key(&b.vector)))
        .map(|b| b.source.as_str())
        .collect();
    assert_eq!(changed.len(), 3, "{changed:?}");
    let swapped = variant.iter().filter(|b| b.source.starts_with("s[S1,S5](Lambda(zeta")).count();
    assert_eq!(swapped, 4);
    let s5 = MSpace::parse("S5").unwrap();
    for j in 1..=4 {
        let name = if j == 1 { "Lambda(zeta)".to_string() } else { format!("Lambda(zeta^{j})") };
        let lambda = lambda_by_name(5, &name).unwrap().vector;
        assert!(variant.iter().any(|b| b.vector == lambda), "{name}");
        let top = s5.find("g5", if j == 1 { "zeta" } else { ["", "", "zeta^2", "zeta^3", "zeta^4"][j] }).unwrap();
        assert_eq!(lambda.coeff(top), Cyclo::one());
    }
}
