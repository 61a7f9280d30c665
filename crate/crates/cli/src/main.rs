use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bipositive::classical::{
    all_sweeps, c_subspaces, interval_family, subspace_family, tilde_c_pairs, tilde_ff_triples, z_of, Caps, Family,
    IntervalSet,
};
use bipositive::exceptional::{basis_beta, golden_rows, golden_text, variant_basis, BetaElement};
use bipositive::groups::Descriptor;
use bipositive::mspace::{MPair, MSpace, MVector};
use bipositive::verify::{check_iota, check_triangular, verify_group, DEFAULT_TOLERANCE};
use bipositive::Cyclo;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bipositive", version, about = "Bipositive unitriangular bases of C[M(G)] for small groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// The basis of the main construction.
    Standard,
    /// For S5, the four (g5,zeta^j) rows replaced by the Lambda images.
    Primed,
}

#[derive(Subcommand)]
enum Command {
    /// List M(G) in its fixed order.
    Mspace {
        #[arg(long)]
        group: String,
    },
    /// The basis with the triple behind each row, in unitriangular order.
    Basis {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
    },
    /// The Fourier transform of a vector, or the whole matrix.
    Fourier {
        #[arg(long)]
        group: String,
        /// A vector such as `(g2,eps)+(1,1)`.
        vector: Option<String>,
    },
    /// Bipositivity, unique iota and unitriangularity; exit code 1 on failure.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
    },
    /// Families of interval sets and subspaces of the symplectic space.
    Classical {
        #[arg(long = "D")]
        d: usize,
        #[arg(long, default_value = "SD")]
        family: Family,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        delta: u8,
        /// Run the bijection and decomposition sweeps at this D.
        #[arg(long)]
        check_props: bool,
        /// Print z(B) for an interval set such as `{[3,5],[4,4]}`.
        #[arg(long)]
        zof: Option<String>,
        #[arg(long, default_value_t = Caps::default().family)]
        family_cap: usize,
        #[arg(long, default_value_t = Caps::default().sweep)]
        sweep_cap: usize,
    },
    /// Dump the embedded hatted tables.
    Goldens {
        /// Restrict to one of S1..S5.
        #[arg(long)]
        group: Option<String>,
    },
}

type CliResult = Result<bool, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink: Box<dyn Write> = match &cli.output.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let fmt = cli.output.format;
    let result = match cli.command {
        Command::Mspace { group } => mspace(&group, fmt, &mut sink),
        Command::Basis { group, variant } => basis(&group, variant, fmt, &mut sink),
        Command::Fourier { group, vector } => fourier(&group, vector.as_deref(), fmt, &mut sink),
        Command::Verify { group, tolerance, variant } => verify(&group, tolerance, variant, fmt, &mut sink),
        Command::Classical { d, family, delta, check_props, zof, family_cap, sweep_cap } => {
            let caps = Caps { family: family_cap, sweep: sweep_cap };
            classical(d, family, delta, check_props, zof.as_deref(), &caps, fmt, &mut sink)
        }
        Command::Goldens { group } => goldens(group.as_deref(), fmt, &mut sink),
    };
    match result.and_then(|ok| sink.flush().map(|_| ok).map_err(Into::into)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn space(group: &str) -> Result<Arc<MSpace>, bipositive::Error> {
    MSpace::parse(group)
}

/// Integers bare, anything else as its `(exponent, numerator, denominator)` list.
fn cell(c: &Cyclo) -> String {
    match c.to_integer() {
        Some(k) => k.to_string(),
        None => {
            let parts: Vec<String> = c.to_triples().iter().map(|(e, n, d)| format!("({e},{n},{d})")).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().flexible(false).from_writer(out)
}

fn mspace(group: &str, fmt: Format, out: &mut dyn Write) -> CliResult {
    let s = space(group)?;
    let rows: Vec<(usize, String, String, String, usize, usize)> = s
        .pairs()
        .map(|m| {
            let k = s.class_of_pair(m);
            (
                m.0,
                s.label(m),
                s.class_label(m).to_string(),
                s.char_label(m).to_string(),
                s.classes.sizes[k],
                s.classes.centralizers[k].order(),
            )
        })
        .collect();
    match fmt {
        Format::Text => {
            writeln!(out, "M({}): {} pairs", s.descriptor(), rows.len())?;
            for (i, label, _, _, size, cent) in &rows {
                writeln!(out, "{i:>4}  {label:<24} class size {size}, |Z| = {cent}")?;
            }
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(i, label, x, rho, size, cent)| {
                    json!({"index": i, "label": label, "x": x, "rho": rho, "class_size": size, "centralizer_order": cent})
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["index", "label", "x", "rho", "class_size", "centralizer_order"])?;
            for (i, label, x, rho, size, cent) in &rows {
                w.write_record([i.to_string(), label.clone(), x.clone(), rho.clone(), size.to_string(), cent.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

/// Splits `s[L,U](Xi)`, or a product of such joined by ` x `, into the
/// lower subgroups, upper subgroups and primitive names.
fn split_source(source: &str) -> (String, String, String) {
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    let mut xis = Vec::new();
    for part in source.split(" x ") {
        let Some(rest) = part.strip_prefix("s[") else {
            return (String::new(), String::new(), source.to_string());
        };
        let mut depth = 0i32;
        let mut comma = None;
        let mut close = None;
        for (i, ch) in rest.char_indices() {
            match ch {
                '<' | '(' | '[' => depth += 1,
                '>' | ')' => depth -= 1,
                ']' if depth == 0 => {
                    close = Some(i);
                    break;
                }
                ']' => depth -= 1,
                ',' if depth == 0 => comma = Some(i),
                _ => {}
            }
        }
        let (Some(c), Some(e)) = (comma, close) else {
            return (String::new(), String::new(), source.to_string());
        };
        lowers.push(rest[..c].to_string());
        uppers.push(rest[c + 1..e].to_string());
        let xi = rest[e + 1..].strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&rest[e + 1..]);
        xis.push(xi.to_string());
    }
    (lowers.join(" x "), uppers.join(" x "), xis.join(" x "))
}

fn basis(group: &str, variant: Variant, fmt: Format, out: &mut dyn Write) -> CliResult {
    let s = space(group)?;
    let elements: Vec<BetaElement> = match variant {
        Variant::Standard => basis_beta(&s.descriptor())?,
        Variant::Primed if s.descriptor() == Descriptor::Sym(5) => variant_basis()?,
        Variant::Primed => return Err(format!("the primed variant is defined for S5 only, not {group}").into()),
    };
    let vectors: Vec<MVector> = elements.iter().map(|b| b.vector.clone()).collect();
    let (iota_check, iota) = check_iota(&s, &vectors);
    let iota = iota.filter(|_| iota_check.passed).ok_or_else(|| iota_check.witness.clone().unwrap_or_default())?;
    let (tri, order) = check_triangular(&s, &vectors, &iota);
    let order = order.ok_or_else(|| tri.witness.clone().unwrap_or_default())?;
    match fmt {
        Format::Text => {
            for &m in &order {
                let b = &elements[iota[m.0]];
                writeln!(out, "hat{} = {} = {}", s.label(m), b.source, b.vector)?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = order
                .iter()
                .map(|&m| {
                    let b = &elements[iota[m.0]];
                    let (lower, upper, xi) = split_source(&b.source);
                    json!({"pair": s.label(m), "lower": lower, "upper": upper, "xi": xi, "vector": b.vector.to_terms()})
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            let mut header: Vec<String> = ["pair", "lower", "upper", "xi"].map(String::from).to_vec();
            header.extend(order.iter().map(|&m| s.label(m)));
            w.write_record(&header)?;
            for &m in &order {
                let b = &elements[iota[m.0]];
                let (lower, upper, xi) = split_source(&b.source);
                let mut row = vec![s.label(m), lower, upper, xi];
                row.extend(order.iter().map(|&n| cell(&b.vector.coeff(n))));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn fourier(group: &str, vector: Option<&str>, fmt: Format, out: &mut dyn Write) -> CliResult {
    let s = space(group)?;
    if let Some(text) = vector {
        let image = MVector::parse(&s, text)?.fourier();
        match fmt {
            Format::Text => writeln!(out, "{image}")?,
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&image.to_terms())?)?,
            Format::Csv => {
                let mut w = csv_writer(out);
                w.write_record(["pair", "coeff"])?;
                for (m, c) in image.terms() {
                    w.write_record([s.label(m), cell(c)])?;
                }
                w.flush()?;
            }
        }
        return Ok(true);
    }
    let a = s.fourier_matrix();
    let n = s.len();
    let labels: Vec<String> = s.pairs().map(|m| s.label(m)).collect();
    match fmt {
        Format::Text => {
            for m in 0..n {
                let row = MVector::basis(&s, MPair(m)).fourier();
                writeln!(out, "A{} = {}", labels[m], row)?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = (0..n)
                .map(|m| json!({"pair": labels[m], "row": (0..n).map(|k| a.entry(m, k)).collect::<Vec<_>>()}))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({"labels": labels, "rows": rows}))?)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            let mut header = vec![String::new()];
            header.extend(labels.iter().cloned());
            w.write_record(&header)?;
            for m in 0..n {
                let mut row = vec![labels[m].clone()];
                row.extend((0..n).map(|k| cell(&a.entry(m, k))));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn verify(group: &str, tolerance: f64, variant: Variant, fmt: Format, out: &mut dyn Write) -> CliResult {
    let desc: Descriptor = group.parse()?;
    let primed = variant == Variant::Primed;
    if primed && desc != Descriptor::Sym(5) {
        return Err(format!("the primed variant is defined for S5 only, not {group}").into());
    }
    let report = verify_group(&desc, tolerance, primed)?;
    match fmt {
        Format::Text => {
            writeln!(out, "{}: |M| = {}", report.group, report.size)?;
            for c in &report.checks {
                writeln!(out, "  {:<24} {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
                if let Some(w) = &c.witness {
                    writeln!(out, "    {w}")?;
                }
            }
            writeln!(out, "  fixed by A: {}", report.fixed_points.join(" "))?;
            writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" })?;
        }
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["check", "passed", "witness"])?;
            for c in &report.checks {
                w.write_record([c.name.clone(), c.passed.to_string(), c.witness.clone().unwrap_or_default()])?;
            }
            w.flush()?;
        }
    }
    Ok(report.passed())
}

#[allow(clippy::too_many_arguments)]
fn classical(
    d: usize,
    family: Family,
    delta: u8,
    check_props: bool,
    zof: Option<&str>,
    caps: &Caps,
    fmt: Format,
    out: &mut dyn Write,
) -> CliResult {
    if let Some(text) = zof {
        let b = IntervalSet::parse(text, d)?;
        let z = z_of(&b)?;
        match fmt {
            Format::Json => {
                let v = json!({"B": b.to_string(), "z": z.to_string(), "M": z.m(), "gaps": z.gaps});
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            }
            _ => writeln!(out, "{z}")?,
        }
        return Ok(true);
    }
    if check_props {
        let sweeps = all_sweeps(d, caps)?;
        let ok = sweeps.iter().all(|s| s.passed());
        match fmt {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&sweeps)?)?,
            Format::Csv => {
                let mut w = csv_writer(out);
                w.write_record(["sweep", "D", "delta", "checked", "passed"])?;
                for s in &sweeps {
                    let delta = s.delta.map(|x| x.to_string()).unwrap_or_default();
                    w.write_record([s.name.clone(), s.d.to_string(), delta, s.checked.to_string(), s.passed().to_string()])?;
                }
                w.flush()?;
            }
            Format::Text => {
                for s in &sweeps {
                    writeln!(out, "{s}")?;
                }
                writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            }
        }
        return Ok(ok);
    }
    let members: Vec<String> = match family {
        Family::SD | Family::SSD | Family::SSDPrim => {
            interval_family(family, d, caps)?.iter().map(|b| b.to_string()).collect()
        }
        Family::F | Family::FF => subspace_family(family, d, caps)?.iter().map(|s| s.to_string()).collect(),
        Family::C => c_subspaces(d, delta, caps)?.iter().map(|s| s.to_string()).collect(),
        Family::TildeC => tilde_c_pairs(d, delta, caps)?.iter().map(|p| p.to_string()).collect(),
        Family::TildeFF => tilde_ff_triples(d, delta, caps)?.iter().map(|t| t.to_string()).collect(),
    };
    match fmt {
        Format::Text => {
            writeln!(out, "{family} at D={d}: {} members", members.len())?;
            for m in &members {
                writeln!(out, "{m}")?;
            }
        }
        Format::Json => {
            let v = json!({"family": family.to_string(), "D": d, "delta": delta, "count": members.len(), "members": members});
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["index", "member"])?;
            for (i, m) in members.iter().enumerate() {
                w.write_record([i.to_string(), m.clone()])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn goldens(group: Option<&str>, fmt: Format, out: &mut dyn Write) -> CliResult {
    let n = match group {
        None => None,
        Some(g) => match g.parse::<Descriptor>()? {
            Descriptor::Sym(n) => Some(n),
            _ => return Err(format!("hatted tables exist for S1..S5 only, not {g}").into()),
        },
    };
    let rows: Vec<_> = golden_rows().iter().filter(|r| n.is_none_or(|n| r.n == n)).collect();
    match fmt {
        Format::Text if n.is_none() => write!(out, "{}", golden_text())?,
        Format::Text => {
            for r in &rows {
                let rhs = r.rhs.as_deref().map(|t| format!(" = {t}")).unwrap_or_default();
                writeln!(out, "S{}: hat{} = s[{},{}]({}){rhs}", r.n, r.lhs, r.lower, r.upper, r.xi)?;
            }
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| json!({"group": format!("S{}", r.n), "lhs": r.lhs, "lower": r.lower, "upper": r.upper, "xi": r.xi, "rhs": r.rhs}))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["group", "lhs", "lower", "upper", "xi", "rhs"])?;
            for r in &rows {
                w.write_record([
                    format!("S{}", r.n),
                    r.lhs.clone(),
                    r.lower.clone(),
                    r.upper.clone(),
                    r.xi.clone(),
                    r.rhs.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}
