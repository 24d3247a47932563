use std::process::{Command, Output};

fn betalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betalab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_beta_prints_seventeen_digits() {
    let o = betalab(&["eval", "beta", "--x", "2", "--x2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.083333333333333329\n");
}

#[test]
fn verify_harmonic_case() {
    let o = betalab(&["verify", "--only", "EQ4H", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.starts_with("EQ4H,") && r.contains(",true,false,")));
}

#[test]
fn series_table_rows() {
    let o = betalab(&["series", "digamma", "--u", "0.5", "--max-terms", "1000", "--every", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|cols| cols.first().is_some_and(|c| c.parse::<u64>().is_ok()))
        .collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[9][0], "1000");
    assert!(rows.iter().all(|r| r.len() == 4));
    assert!(text.contains("terms_used: 1000\n"));
    assert!(text.contains("termination: max_terms\n"));
}

#[test]
fn unknown_series_is_a_usage_error() {
    let o = betalab(&["series", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn failing_verification_exits_one() {
    // A tolerance below the quadrature noise floor cannot be met everywhere.
    let o = betalab(&["verify", "--only", "EQ4", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn formats_agree_on_record_counts() {
    let ids = "SYM,EQ2,EQ4H,LOG2,EQ10";
    let json = stdout(&betalab(&["verify", "--only", ids, "--format", "json"]));
    let csv = stdout(&betalab(&["verify", "--only", ids, "--format", "csv"]));
    let table = stdout(&betalab(&["verify", "--only", ids, "--format", "table"]));

    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert_eq!(doc["counts"]["total"].as_u64().unwrap() as usize, records.len());
    assert_eq!(csv.lines().count(), records.len() + 1);
    let table_rows = table
        .lines()
        .filter(|l| ["SYM ", "EQ2 ", "EQ4H ", "LOG2 ", "EQ10 "].iter().any(|p| l.starts_with(p)))
        .count();
    assert_eq!(table_rows, records.len());
    assert_eq!(doc["informational"].as_array().unwrap().len(), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = betalab(&["verify", "--only", "BU1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["counts"]["passed"], 8);
}

#[test]
fn printed_numbers_round_trip() {
    // EQ3's left side is digamma(u), so the printed value must parse back to
    // exactly what the library computes.
    let text = stdout(&betalab(&["verify", "--only", "EQ3", "--format", "csv"]));
    let mut checked = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let u: f64 = cols[1].parse().unwrap();
        let lhs: f64 = cols[2].parse().unwrap();
        assert_eq!(lhs, betalab_core::special::digamma(u).unwrap(), "{line}");
        assert_eq!(betalab::number::g17(lhs), cols[2]);
        checked += 1;
    }
    assert_eq!(checked, 7);
    let value = stdout(&betalab(&["eval", "digamma", "--x", "0.5"]));
    let parsed: f64 = value.trim().parse().unwrap();
    assert_eq!(parsed, betalab_core::special::digamma(0.5).unwrap());
}
