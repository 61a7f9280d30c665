use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bipositive")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn mspace_row_counts() {
    for (group, rows) in [("S3", 8), ("V2", 16), ("S3xS2", 32), ("S5", 39)] {
        assert_eq!(json(&["mspace", "--group", group]).as_array().unwrap().len(), rows, "{group}");
    }
}

#[test]
fn mspace_csv_has_a_header_and_one_line_per_pair() {
    let text = stdout(&["mspace", "--group", "S2", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("index,label"));
}

#[test]
fn basis_of_s2_matches_the_table() {
    let rows = json(&["basis", "--group", "S2"]);
    let got: BTreeSet<(String, String)> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["pair"].as_str().unwrap().to_string(), r["xi"].as_str().unwrap().to_string()))
        .collect();
    let want: BTreeSet<(String, String)> =
        [("(1,1)", "(1,1)"), ("(g2,1)", "(1,1)"), ("(1,eps)", "(1,1)"), ("(g2,eps)", "Lambda(-1)")]
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .into();
    assert_eq!(got, want);
    let text = stdout(&["basis", "--group", "S2"]);
    assert!(text.contains("hat(g2,eps) = s[S1,S2](Lambda(-1)) = (1,1)+(g2,eps)"));
}

/// Each row's terms, relabelled and sorted.
fn shapes(group: &str, relabel: &dyn Fn(&str) -> String) -> BTreeSet<Vec<(String, String, String)>> {
    json(&["basis", "--group", group])
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let mut terms: Vec<(String, String, String)> = r["vector"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| (relabel(t["x"].as_str().unwrap()), relabel(t["rho"].as_str().unwrap()), t["coeff"].to_string()))
                .collect();
            terms.sort();
            terms
        })
        .collect()
}

#[test]
fn basis_of_v1_is_the_basis_of_s2_relabelled() {
    let rename = |s: &str| match s {
        "0" => "1".to_string(),
        "x1" => "g2".to_string(),
        "d1" => "eps".to_string(),
        other => other.to_string(),
    };
    assert_eq!(shapes("V1", &rename), shapes("S2", &|s| s.to_string()));
}

#[test]
fn primed_variant_changes_the_g5_rows_only() {
    let base = json(&["basis", "--group", "S5"]);
    let primed = json(&["basis", "--group", "S5", "--variant", "primed"]);
    let by_pair = |v: &serde_json::Value| -> Vec<(String, String)> {
        let mut rows: Vec<(String, String)> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (r["pair"].as_str().unwrap().to_string(), r["vector"].to_string()))
            .collect();
        rows.sort();
        rows
    };
    let changed: Vec<String> = by_pair(&base)
        .into_iter()
        .zip(by_pair(&primed))
        .filter(|(a, b)| a != b)
        .map(|(a, _)| a.0)
        .collect();
    assert!(!changed.is_empty() && changed.len() <= 4, "{changed:?}");
    assert!(changed.iter().all(|p| p.starts_with("(g5,zeta")), "{changed:?}");
    assert!(!run(&["basis", "--group", "S4", "--variant", "primed"]).status.success());
}

#[test]
fn basis_csv_is_unitriangular() {
    let text = stdout(&["basis", "--group", "S4", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header.len(), 4 + 21);
    for (i, row) in reader.records().enumerate() {
        let row = row.unwrap();
        assert_eq!(&row[0], header[4 + i].as_str());
        for j in 0..21 {
            let cell = &row[4 + j];
            match j.cmp(&i) {
                std::cmp::Ordering::Less => assert_eq!(cell, "0", "row {i} col {j}"),
                std::cmp::Ordering::Equal => assert_eq!(cell, "1", "row {i}"),
                std::cmp::Ordering::Greater => assert!(cell.parse::<i64>().unwrap() >= 0),
            }
        }
    }
}

#[test]
fn fourier_of_the_s2_unit() {
    assert_eq!(stdout(&["fourier", "--group", "S2", "(1,1)"]).trim(), "1/2(1,1)+1/2(1,eps)+1/2(g2,1)+1/2(g2,eps)");
    assert_eq!(stdout(&["fourier", "--group", "S2", "(g2,eps)+(1,1)"]).trim(), "(1,1)+(g2,eps)");
}

#[test]
fn fourier_csv_renders_non_integers_as_triples() {
    let text = stdout(&["fourier", "--group", "S2", "--format", "csv"]);
    assert!(text.contains("\"[(0,1,2)]\""));
    assert!(text.contains("\"[(0,-1,2)]\""));
}

#[test]
fn verify_exit_codes() {
    for group in ["S4", "V3", "S2xS2"] {
        let out = run(&["verify", "--group", group]);
        assert!(out.status.success(), "{group}");
        assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("PASS"));
    }
    // the S5 basis is not bipositive; see the README
    let out = run(&["verify", "--group", "S5", "--tolerance", "1e-12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("bipositivity             FAIL"));
}

#[test]
fn verify_json_is_deterministic() {
    assert_eq!(json(&["verify", "--group", "S4"]), json(&["verify", "--group", "S4"]));
}

#[test]
fn classical_listing_and_z() {
    let v = json(&["classical", "--D", "2", "--family", "FF"]);
    assert_eq!(v["count"], 4);
    assert_eq!(stdout(&["classical", "--D", "10", "--zof", "{[3,5],[4,4],[8,10],[9,9]}"]).trim(), "{[1,1],[2,6]}");
    let out = stdout(&["classical", "--D", "10", "--family", "SD", "--check-props"]);
    assert!(out.trim_end().ends_with("PASS"));
    let v = json(&["classical", "--D", "4", "--family", "tildeC", "--delta", "1"]);
    assert!(v["count"].as_u64().unwrap() > 0);
}

#[test]
fn classical_caps_and_bad_input_fail() {
    assert_eq!(run(&["classical", "--D", "18", "--family", "SD"]).status.code(), Some(2));
    assert_eq!(run(&["classical", "--D", "14", "--check-props"]).status.code(), Some(2));
    assert_eq!(run(&["classical", "--D", "4", "--delta", "2"]).status.code(), Some(2));
    assert_eq!(run(&["classical", "--D", "4", "--zof", "{[1,2"]).status.code(), Some(2));
}

#[test]
fn goldens_dump() {
    let rows = json(&["goldens"]);
    assert_eq!(rows.as_array().unwrap().len(), 73);
    let s2 = json(&["goldens", "--group", "S2"]);
    assert_eq!(s2.as_array().unwrap().len(), 4);
    assert!(!run(&["goldens", "--group", "V2"]).status.success());
}

#[test]
fn unknown_flags_and_groups_are_rejected() {
    assert_eq!(run(&["mspace", "--group", "S3", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["mspace", "--group", "S7"]).status.code(), Some(2));
    assert_eq!(run(&["mspace"]).status.code(), Some(2));
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join(format!("bipositive-cli-{}.json", std::process::id()));
    let out = run(&["mspace", "--group", "S2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    std::fs::remove_file(path).unwrap();
}
