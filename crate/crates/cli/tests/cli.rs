use std::path::Path;
use std::process::{Command, Output};

use ptile_cli::record::{RunRecord, Status};

fn ptile(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptile"))
        .args(args)
        .env("PTILE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_reports_tiling() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptile(
        dir.path(),
        &[
            "verify",
            "Z36",
            "--omega",
            "{0,4,8,9,13,17}",
            "--t",
            "{0,6,12,18,24,30}",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tiling: true\n"));

    let o = ptile(dir.path(), &["verify", "Z8", "--omega", "{0,1}", "--t", "{0,1,2,3}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tiling: false\n"));
}

#[test]
fn tuple_literals_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptile(
        dir.path(),
        &[
            "verify",
            "Z2xZ4",
            "--omega",
            "{(0,0),(1,0)}",
            "--t",
            "{(0,0),(0,1),(0,2),(0,3)}",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tiling: true\n"));
}

#[test]
fn property_upt_fails_on_z36_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = ptile(
        dir.path(),
        &[
            "property",
            "Z36",
            "--check",
            "upt",
            "--certificate-out",
            cert.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("UPT: false\n"), "{out}");
    assert!(out.contains("certificate:"));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(written["verdicts"][0]["holds"], serde_json::json!(false));
    assert_eq!(written["verdicts"][0]["certificate"]["kind"], "counterexample");
}

#[test]
fn classify_known_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptile(dir.path(), &["classify", "Z72"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PT: NotPT (contains Z_{p^3 q^2})\n");
}

#[test]
fn unknown_classification_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptile(dir.path(), &["classify", "Z2^6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("PT: Unknown"));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["verify", "Z5", "--omega", "{0,9}", "--t", "{0}"],
        vec!["verify", "Zx", "--omega", "{0}", "--t", "{0}"],
        vec!["verify", "Z2xZ2", "--omega", "{(0,0,0)}", "--t", "{0}"],
        vec!["bogus"],
        vec!["property", "Z8", "--check", "nonsense"],
        vec!["construct", "p3p2", "--p", "2"],
        vec!["group", "Z5000"],
    ] {
        let o = ptile(dir.path(), &args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn budget_exhaustion_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptile(dir.path(), &["property", "Z16", "--check", "pt", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("PT: unknown"));

    let o = ptile(dir.path(), &["complements", "Z16", "--omega", "{0,1}", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("unknown:"));
}

#[test]
fn json_record_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let o = ptile(dir.path(), &["--json", "property", "Z8", "--check", "pt,upt"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rec: RunRecord = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(rec.command, "property");
    assert_eq!(rec.group, "Z8");
    assert_eq!(rec.status, Status::Computed);
    assert!(rec.key_is_consistent());
    assert_eq!(rec.to_json_line(), text.trim());
}

#[test]
fn cached_and_fresh_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "property", "Z24", "--check", "pt"];
    let fresh = ptile(dir.path(), &args);
    let cached = ptile(dir.path(), &args);
    assert_eq!(fresh.status.code(), Some(0));
    assert_eq!(fresh.stdout, cached.stdout);
    let lines = std::fs::read_to_string(dir.path().join("runs.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 1);

    let uncached = ptile(
        dir.path(),
        &["--no-cache", "--json", "property", "Z24", "--check", "pt"],
    );
    assert_eq!(uncached.stdout, fresh.stdout);
    let lines = std::fs::read_to_string(dir.path().join("runs.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 1);
}

#[test]
fn corrupt_cache_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("runs.jsonl"), "{not json\n\n").unwrap();
    let o = ptile(dir.path(), &["group", "Z12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order: 12"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt"));
    let again = ptile(dir.path(), &["group", "Z12"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn tilings_sample_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str| {
        stdout(&ptile(
            dir.path(),
            &[
                "--no-cache",
                "tilings",
                "Z12",
                "--sample",
                "3",
                "--seed",
                seed,
                "--limit",
                "0",
            ],
        ))
    };
    let a = run("5");
    assert!(a.starts_with("tile classes: "));
    assert!(a.contains("pairs: "));
    assert_eq!(a, run("5"));
}

#[test]
fn every_subcommand_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["group", "Z4xZ2^2"], "invariant factors: [2, 2, 4]"),
        (vec!["complements", "Z8", "--omega", "{0,1}"], "complements: 1"),
        (vec!["periods", "Z8", "--set", "{0,1,4,5}"], "periods: {0,4}"),
        (vec!["zeroset", "Z8", "--set", "{0,1}"], "zero set: {4}"),
        (vec!["spectrum", "Z8", "--omega", "{0,1,2,3}"], "spectrum: {0,2,4,6}"),
        (
            vec!["spectrum", "Z8", "--omega", "{0,1,2,3}", "--t", "{0,4}"],
            "spectral pair: true",
        ),
        (
            vec!["construct", "p2q2"],
            "[holds] no periodic set tiles with both T1 and T2",
        ),
        (vec!["classify", "Z8", "--omega", "{0,1}"], "uniformly periodic: true"),
        (
            vec!["decompose", "Z36", "--omega", "{0,4,8,9,13,17}"],
            "recomposes: true",
        ),
        (
            vec![
                "decompose",
                "Z3^3",
                "--omega",
                "{(0,0,0),(1,0,0),(0,1,0)}",
                "--subgroup-complement",
            ],
            "subgroup complement: {",
        ),
        (vec!["tilings", "Z8"], "pairs: 34"),
    ];
    for (args, needle) in cases {
        let o = ptile(dir.path(), &args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let out = stdout(&o);
        assert!(out.contains(needle), "{args:?}: {out}");
    }
}
