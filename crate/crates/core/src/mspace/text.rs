use std::sync::Arc;

use super::{MSpace, MVector};
use crate::error::{Error, Result};
use crate::scalars::Cyclo;

/// Splits `(a,b)` at its top-level comma.
fn split_pair(s: &str) -> Result<(&str, &str)> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(x,rho)`, found `{s}`")))?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    Err(Error::Parse(format!("no top-level comma in `{s}`")))
}

fn parse_coefficient(s: &str) -> Result<Cyclo> {
    if s.is_empty() {
        return Ok(Cyclo::one());
    }
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<i128>().map_err(|_| bad())?, d.parse::<i128>().map_err(|_| bad())?),
        None => (s.parse::<i128>().map_err(|_| bad())?, 1),
    };
    Cyclo::try_ratio(n, d)
}

impl MVector {
    /// Parses `(1,1)+2(1,r)-(g2,eps)`; coefficients are rationals, `0` is
    /// the zero vector.
    pub fn parse(space: &Arc<MSpace>, text: &str) -> Result<MVector> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = MVector::zero(space);
        if s == "0" {
            return Ok(v);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(Error::Parse(format!("expected `+` or `-` at offset {i} of `{s}`")));
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'(' {
                i += 1;
            }
            let coeff = parse_coefficient(s[start..i].trim_end_matches('*'))?;
            let open = i;
            let mut depth = 0i32;
            while i < bytes.len() {
                match bytes[i] {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            i += 1;
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            if depth != 0 || open >= bytes.len() {
                return Err(Error::Parse(format!("unbalanced term in `{s}`")));
            }
            let (x, rho) = split_pair(&s[open..i])?;
            let c = if sign < 0 { -coeff } else { coeff };
            v.checked_add_term(space.find(x, rho)?, &c)?;
        }
        Ok(v)
    }
}
