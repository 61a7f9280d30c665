use std::sync::{Arc, OnceLock};

use super::{basis_beta, lattice, y_set, BetaElement, YTriple};
use crate::error::{Error, Result};
use crate::groups::Descriptor;
use crate::mspace::{s_map, MPair, MSpace, MVector, SubgroupPair};

const GOLDENS: &str = include_str!("../../data/goldens.txt");

/// One row `hat(lhs) = s_{lower,upper}(xi) = rhs` of the hatted tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub n: usize,
    pub lhs: String,
    pub lower: String,
    pub upper: String,
    pub xi: String,
    pub rhs: Option<String>,
}

/// Parses the `group | lhs | lower | upper | xi | rhs` format; `#` starts a
/// comment line and the `rhs` column may be omitted.
pub fn parse_goldens(text: &str) -> Result<Vec<GoldenRow>> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", ln + 1));
        if cols.len() != 5 && cols.len() != 6 {
            return Err(bad("expected 5 or 6 columns"));
        }
        let n = match cols[0].parse::<Descriptor>().map_err(|_| bad("bad group"))? {
            Descriptor::Sym(n) => n,
            _ => return Err(bad("tables exist for S1..S5 only")),
        };
        if cols[1..5].iter().any(|c| c.is_empty()) {
            return Err(bad("empty column"));
        }
        let rhs = cols.get(5).filter(|s| !s.is_empty()).map(|s| s.to_string());
        rows.push(GoldenRow {
            n,
            lhs: cols[1].into(),
            lower: cols[2].into(),
            upper: cols[3].into(),
            xi: cols[4].into(),
            rhs,
        });
    }
    Ok(rows)
}

/// The embedded tables.
pub fn golden_rows() -> &'static [GoldenRow] {
    static ROWS: OnceLock<Vec<GoldenRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_goldens(GOLDENS).expect("embedded tables parse"))
}

pub fn golden_text() -> &'static str {
    GOLDENS
}

impl GoldenRow {
    pub fn space(&self) -> Result<Arc<MSpace>> {
        MSpace::of(&Descriptor::Sym(self.n))
    }

    pub fn lhs_pair(&self) -> Result<MPair> {
        let space = self.space()?;
        let v = MVector::parse(&space, &self.lhs)?;
        let mut it = v.support();
        match (it.next(), it.next()) {
            (Some(m), None) => Ok(m),
            _ => Err(Error::Parse(format!("lhs `{}` is not a single pair", self.lhs))),
        }
    }

    pub fn rhs_vector(&self) -> Result<Option<MVector>> {
        let space = self.space()?;
        self.rhs.as_deref().map(|t| MVector::parse(&space, t)).transpose()
    }

    /// The triple of `Y(S_n)` this row names.
    pub fn triple(&self) -> Result<YTriple> {
        y_set(&Descriptor::Sym(self.n))?
            .into_iter()
            .find(|t| t.pair.lower.name == self.lower && t.pair.upper.name == self.upper && t.xi.name == self.xi)
            .ok_or_else(|| Error::UnknownLabel(format!("s[{},{}]({}) in Y(S{})", self.lower, self.upper, self.xi, self.n)))
    }
}

/// Rows for one group.
pub fn golden_table(n: usize) -> Vec<&'static GoldenRow> {
    golden_rows().iter().filter(|r| r.n == n).collect()
}

/// `beta'(S5)`: `beta(S5)` with the four `(g5,zeta^j)` elements replaced by
/// `s_{S1,S5}(Lambda(zeta^j))`.
pub fn variant_basis() -> Result<Vec<BetaElement>> {
    let desc = Descriptor::Sym(5);
    let space = MSpace::of(&desc)?;
    let lat = lattice(5);
    let pair = SubgroupPair::new(
        &space,
        crate::groups::Subgroup::trivial("S1"),
        lat.get("S5")?.clone(),
        lat.standard_model("S5")?,
    )?;
    let mut out = basis_beta(&desc)?;
    for row in golden_table(5) {
        let Some(z) = row.lhs.strip_prefix("(g5,").and_then(|s| s.strip_suffix(')')) else { continue };
        if z == "1" {
            continue;
        }
        let source = format!("s[{},{}]({})", row.lower, row.upper, row.xi);
        let name = format!("Lambda({z})");
        let xi = super::prim::lambda_by_name(5, &name)?;
        let slot = out
            .iter_mut()
            .find(|b| b.source == source)
            .ok_or_else(|| Error::UnknownLabel(source.clone()))?;
        *slot = BetaElement { source: format!("s[S1,S5]({name})"), vector: s_map(&pair, &xi.vector)? };
    }
    Ok(out)
}
