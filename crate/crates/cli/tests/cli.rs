use std::path::Path;
use std::process::{Command, Output};

use groupdeg::ExactRational;

fn groupdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let o = groupdeg(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), golden(name), "groupdeg {}", args.join(" "));
}

/// Every string that looks like a fraction parses exactly and prints back the same.
fn assert_fraction_round_trip(s: &str) {
    if s.contains('/') || s.parse::<i64>().is_ok() {
        let x: ExactRational = s.parse().unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(x.to_string(), s);
    }
}

#[test]
fn verify_quaternion_sweep_passes() {
    let o = groupdeg(&["verify", "Q", "--n", "3..6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.starts_with("PASS")), "{text}");
    assert_eq!(text, golden("verify_q_3_6.txt"));
}

#[test]
fn ex54_table_matches_golden() {
    assert_golden(
        &["table", "ex54", "--p", "3", "--n", "1", "--format", "csv"],
        "ex54_p3_n1.csv",
    );
    let text = golden("ex54_p3_n1.csv");
    assert!(text.starts_with("group,p,n,alpha,beta,cdeg,ndeg\n"));
    assert!(text.contains("CpC4,3,1,7/12,2/3,7/8,5/8"));
}

#[test]
fn appendix_table_matches_golden() {
    assert_golden(
        &[
            "table", "appendix", "--n", "4", "--p", "3", "--format", "csv",
        ],
        "appendix_n4_p3.csv",
    );
    assert!(golden("appendix_n4_p3.csv").starts_with("property,family,value\n"));
}

#[test]
fn degrees_and_census_match_golden() {
    assert_golden(&["degrees", "SD(16)", "--json"], "degrees_sd16.jsonl");
    assert_golden(&["census", "M(3)", "--format", "csv"], "census_m3.csv");
}

#[test]
fn density_finds_a_single_prime() {
    let o = groupdeg(&["density", "0.8", "--eps", "0.01", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(doc["primes"], serde_json::json!([3]));
    assert_eq!(doc["product"], "4/5");
    assert_eq!(doc["error"], "0");
}

#[test]
fn exhausted_density_reports_best_and_exits_2() {
    let o = groupdeg(&["density", "1/10", "--prime-bound", "100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rec = r.records().next().unwrap().unwrap();
    // All 24 odd primes below 100.
    assert_eq!(rec[2].split(' ').count(), 24);
}

#[test]
fn exit_codes() {
    assert_eq!(groupdeg(&["degrees", "Q(12)"]).status.code(), Some(1));
    assert_eq!(groupdeg(&["census", "Q(1024)"]).status.code(), Some(2));
    assert_eq!(
        groupdeg(&["census", "Q(16)", "--cap", "4096"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(groupdeg(&["verify", "Q(1024)"]).status.code(), Some(2));
    assert_eq!(
        groupdeg(&["verify", "Q(1024)", "--cap", "2048"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        groupdeg(&["verify", "SD", "--n", "3..5"]).status.code(),
        Some(1)
    );
    assert_eq!(
        groupdeg(&["table", "ex54", "--p", "4", "--n", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(groupdeg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(groupdeg(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_cite_a_position() {
    let o = groupdeg(&["degrees", "D(2,3)xQ(8"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column"), "{err}");
}

#[test]
fn two_parameter_families_take_repeated_flags() {
    let o = groupdeg(&[
        "verify", "CpC4", "--p", "3", "--p", "5", "--n", "1..2", "--format", "csv",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let mut specs: Vec<String> = csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| r.unwrap()[0].to_string())
        .collect();
    specs.dedup();
    assert_eq!(specs, ["CpC4(3,1)", "CpC4(3,2)", "CpC4(5,1)", "CpC4(5,2)"]);
}

#[test]
fn json_lines_round_trip_exact_fractions() {
    let o = groupdeg(&["verify", "Dic", "--k", "1..12", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 12);
    for line in text.lines() {
        let report: groupdeg::VerificationReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), line);
        for c in &report.comparisons {
            assert_fraction_round_trip(&c.formula.to_string());
        }
    }
}

#[test]
fn csv_round_trips_exact_fractions() {
    let o = groupdeg(&[
        "table", "ex54", "--p", "3,5,7", "--n", "1..3", "--format", "csv",
    ]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let mut rows = 0;
    for rec in r.records() {
        let rec = rec.unwrap();
        for field in rec.iter().skip(3) {
            assert_fraction_round_trip(field);
        }
        rows += 1;
    }
    assert_eq!(rows, 18);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "D", "--n", "2..6", "--json"][..],
        &["limits", "SD", "--format", "csv"],
        &["density", "2/3", "--json"],
    ] {
        assert_eq!(groupdeg(args).stdout, groupdeg(args).stdout, "{args:?}");
    }
}

#[test]
fn cayley_table_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2xc2.json");
    std::fs::write(
        &path,
        r#"{"order": 4, "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#,
    )
    .unwrap();
    let o = groupdeg(&["census", "--table", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(doc["census"]["total"], 5);
    assert_eq!(doc["degrees"]["beta"], "5/4");

    std::fs::write(&path, r#"{"order": 2, "table": [[0,1],[1,1]]}"#).unwrap();
    assert_eq!(
        groupdeg(&["degrees", "--table", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn limits_probe_gaps_shrink() {
    let o = groupdeg(&[
        "limits",
        "D",
        "--function",
        "beta",
        "--probe",
        "3..12",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let gaps: Vec<ExactRational> = csv::Reader::from_reader(o.stdout.as_slice())
        .records()
        .map(|r| r.unwrap()[5].parse().unwrap())
        .collect();
    assert_eq!(gaps.len(), 10);
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(groupdeg(&["limits", "Dic"]).status.code(), Some(1));
}
