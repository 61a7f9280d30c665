use std::sync::Arc;

use crate::classical::space::{from_pair, to_pair};
use crate::error::{Error, Result};
use crate::groups::Descriptor;
use crate::mspace::{MSpace, MVector};

/// A named element of `Prim` for a quotient type.
#[derive(Clone, Debug)]
pub struct PrimElement {
    pub name: String,
    pub vector: MVector,
}

fn named(space: &Arc<MSpace>, name: &str, text: &str) -> Result<PrimElement> {
    Ok(PrimElement { name: name.to_string(), vector: MVector::parse(space, text)? })
}

fn unit(space: &Arc<MSpace>) -> Result<PrimElement> {
    let label = space.label(crate::mspace::MPair(0));
    named(space, "(1,1)", &label)
}

/// `Lambda` elements of `M(S_n)` by name.
fn lambda(n: usize, name: &str) -> Result<PrimElement> {
    let space = MSpace::of(&Descriptor::Sym(n))?;
    let text = match (n, name) {
        (2, "Lambda(-1)") => "(g2,eps)+(1,1)".to_string(),
        (3, "Lambda(theta)") => "(g3,theta)+(g2,1)+(1,1)".to_string(),
        (3, "Lambda(theta^2)") => "(g3,theta^2)+(g2,1)+(1,1)".to_string(),
        (4, "Lambda(i)") => "(g4,i)+(g4,-1)+(g3,1)+(1,lambda2)+(1,1)".to_string(),
        (4, "Lambda(-i)") => "(g4,-i)+(g4,-1)+(g3,1)+(1,lambda2)+(1,1)".to_string(),
        (5, _) if name.starts_with("Lambda(zeta") => {
            let z = &name["Lambda(".len()..name.len() - 1];
            format!("(g5,{z})+(1,lambda4)+2(1,lambda2)+(1,nu)+(1,nu')+(1,1)")
        }
        (5, _) if name.starts_with("Lambda'(") => {
            let inner = &name["Lambda'(".len()..name.len() - 1];
            let (a, b) = inner.split_once(',').ok_or_else(|| Error::UnknownLabel(name.into()))?;
            format!("(g5,{a})+(g5,{b})+(g2',1)+(g2',eps')+(g2',eps'')+(g2',eps)+(1,lambda2)+(1,nu)+(1,1)")
        }
        _ => return Err(Error::UnknownLabel(name.into())),
    };
    named(&space, name, &text)
}

fn product(a: &PrimElement, b: &PrimElement, name: &str) -> Result<PrimElement> {
    Ok(PrimElement { name: name.into(), vector: a.vector.external_product(&b.vector)? })
}

/// Indicator of `X_k` in `C[V] = C[M(V_n)]`, `D = 2n`, read through the
/// `delta` identification.
pub fn f_k(n: usize, k: usize, delta: u8) -> Result<MVector> {
    if k > n {
        return Err(Error::OutOfRange(format!("f_{k} for V{n}")));
    }
    let space = MSpace::of(&Descriptor::Based(n))?;
    let d = 2 * n;
    let gens: Vec<u64> = (1..=k).map(|i| crate::classical::space::e_interval(i, d + 1 - i)).collect();
    let mut v = MVector::zero(&space);
    for mask in 0..1u32 << k {
        let w = gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u64, |a, (_, g)| a ^ g);
        let (x, chi) = to_pair(w, d, delta)?;
        debug_assert_eq!(from_pair(x, chi, d, delta)?, w);
        let m = space.pair(space.classes.class_of(x), chi as usize);
        v.add_term(m, &crate::scalars::Cyclo::one());
    }
    Ok(v)
}

/// `Prim` of a quotient type, in the listed order.
pub fn prim_set(desc: &Descriptor) -> Result<Vec<PrimElement>> {
    let s2 = || lambda(2, "Lambda(-1)");
    let one = |n: usize| -> Result<PrimElement> { unit(&MSpace::of(&Descriptor::Sym(n))?) };
    match desc {
        Descriptor::Sym(1) => Ok(vec![one(1)?]),
        Descriptor::Sym(2) => Ok(vec![s2()?, one(2)?]),
        Descriptor::Sym(3) => Ok(vec![lambda(3, "Lambda(theta)")?, lambda(3, "Lambda(theta^2)")?, one(3)?]),
        Descriptor::Sym(4) => Ok(vec![lambda(4, "Lambda(i)")?, lambda(4, "Lambda(-i)")?, one(4)?]),
        Descriptor::Sym(5) => Ok(vec![
            lambda(5, "Lambda(zeta)")?,
            lambda(5, "Lambda'(zeta,zeta^2)")?,
            lambda(5, "Lambda'(zeta^2,zeta^4)")?,
            lambda(5, "Lambda'(zeta^3,zeta)")?,
            one(5)?,
        ]),
        Descriptor::Product(fs) if fs == &[Descriptor::Sym(2), Descriptor::Sym(2)] => {
            let l = s2()?;
            Ok(vec![
                product(&l, &l, "Lambda(-1,-1)")?,
                product(&l, &one(2)?, "Lambda(-1,1)")?,
                unit(&MSpace::of(desc)?)?,
            ])
        }
        Descriptor::Product(fs) if fs == &[Descriptor::Sym(3), Descriptor::Sym(2)] => {
            let l = s2()?;
            let mut out = Vec::new();
            for t in ["theta", "theta^2"] {
                out.push(product(&lambda(3, &format!("Lambda({t})"))?, &l, &format!("Lambda({t},-1)"))?);
            }
            for t in ["theta", "theta^2"] {
                out.push(product(&lambda(3, &format!("Lambda({t})"))?, &one(2)?, &format!("Lambda({t},1)"))?);
            }
            out.push(product(&one(3)?, &l, "Lambda(1,-1)")?);
            out.push(unit(&MSpace::of(desc)?)?);
            Ok(out)
        }
        Descriptor::Based(n) => {
            (0..=*n).map(|k| Ok(PrimElement { name: format!("f{k}"), vector: f_k(*n, k, 0)? })).collect()
        }
        _ => Err(Error::QuotientType(desc.to_string())),
    }
}

/// Any `Lambda` by name over `S_n`.
pub fn lambda_by_name(n: usize, name: &str) -> Result<PrimElement> {
    lambda(n, name)
}
