use std::process::{Command, Output};

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records(out: &Output) -> Vec<serde_json::Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

#[test]
fn theorem_scan_has_one_record_per_prime_and_a() {
    let out = carlitz(&[
        "verify",
        "--identity",
        "theorem_1_1",
        "--p-min",
        "3",
        "--p-max",
        "100",
        "--a",
        "1,2,3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 24 * 5);
    assert!(recs.iter().all(|r| r["match"] == true));
    assert!(recs.iter().all(|r| r["identity"] == "theorem_1_1"));
}

#[test]
fn record_shape() {
    let out = carlitz(&[
        "verify",
        "--identity",
        "theorem_1_1",
        "--p-min",
        "5",
        "--p-max",
        "5",
        "--a",
        "3",
        "--no-timing",
    ]);
    assert_eq!(
        stdout(&out),
        "{\"identity\":\"theorem_1_1\",\"p\":5,\"params\":[3],\"modulus\":\"625\",\
         \"lhs\":\"346\",\"rhs\":\"346\",\"match\":true,\"us\":0}\n"
    );
}

#[test]
fn exact_identity_scan_covers_every_n() {
    let out = carlitz(&["verify", "--identity", "exact_1_4", "--n-max", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 50);
    assert!(recs
        .iter()
        .all(|r| r["modulus"] == "0" && r["match"] == true));
    let ns: Vec<u64> = recs
        .iter()
        .map(|r| r["params"][0].as_u64().unwrap())
        .collect();
    assert_eq!(ns, (1..=50).collect::<Vec<_>>());
}

#[test]
fn exact_1_3_notes_the_upper_limit_once() {
    let out = carlitz(&["verify", "--identity", "exact_1_3", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out).len(), 40);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.matches("note:").count(), 1);
}

#[test]
fn default_scan_matches_everything() {
    let out = carlitz(&["verify", "--p-max", "200"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let recs = records(&out);
    for tag in [
        "theorem_1_1",
        "carlitz",
        "morley",
        "lemma_2_1_i",
        "lemma_2_1_ii",
        "lemma_2_2_a",
        "eq_2_9",
        "eq_2_10",
    ] {
        assert!(recs.iter().any(|r| r["identity"] == tag), "{tag} missing");
    }
    // morley needs p >= 5
    assert!(!recs
        .iter()
        .any(|r| r["identity"] == "morley" && r["p"] == 3));
}

#[test]
fn full_identity_set_matches() {
    let out = carlitz(&[
        "verify",
        "--identity",
        "all",
        "--p-max",
        "60",
        "--n-max",
        "10",
        "--a",
        "1..6",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let recs = records(&out);
    assert!(recs.iter().all(|r| r["match"] == true));
    let cd = recs
        .iter()
        .filter(|r| r["identity"] == "chamberland_dilcher" && r["p"] == 7)
        .count();
    assert_eq!(cd, 29);
    assert!(recs.iter().any(|r| r["identity"] == "p3_special"));
}

#[test]
fn records_are_sorted_and_deterministic() {
    let args = [
        "verify",
        "--identity",
        "all",
        "--p-max",
        "40",
        "--n-max",
        "40",
        "--no-timing",
    ];
    let a = carlitz(&args);
    let b = carlitz(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let recs = records(&a);
    let ps: Vec<u64> = recs.iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert!(ps.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn csv_output_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = carlitz(&[
        "verify",
        "--identity",
        "morley",
        "--p-max",
        "13",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("identity,p,params,modulus,lhs,rhs,match,us")
    );
    assert_eq!(lines.next(), Some("morley,5,,125,6,6,true,0"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--p-min", "10", "--p-max", "9"][..],
        &["verify", "--p-min", "1"],
        &["verify", "--jobs", "0"],
        &["verify", "--identity", "theorem_9_9"],
        &["verify", "--a", "0"],
        &["verify", "--format", "xml"],
        &["frobnicate"],
        &["sums", "3"],
        &["sums", "15"],
        &["oracle", "--p-max", "5000"],
        &["oracle", "--oracle-cap", "2000", "--p-max", "1500"],
    ] {
        assert_eq!(carlitz(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.jsonl");
    let out = carlitz(&["verify", "--p-max", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sums_prints_the_profile() {
    let seven = stdout(&carlitz(&["sums", "7"]));
    for line in [
        "even_double(1,2,1) = 1 (mod 7)",
        "even_double(2,1,1) = 5 (mod 7)",
        "B_4 = 3 (mod 7)",
    ] {
        assert!(
            seven.lines().any(|l| l == line),
            "{line} missing from\n{seven}"
        );
    }
    let five = stdout(&carlitz(&["sums", "5"]));
    assert!(five.lines().any(|l| l == "q2 = 3 (mod 125)"), "{five}");
}

#[test]
fn oracle_agrees() {
    let out = carlitz(&["oracle", "--p-max", "101"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).lines().last().unwrap().ends_with("agree"));

    let out = carlitz(&["oracle", "--p-max", "31", "--identity", "lemma_2_2"]);
    assert_eq!(out.status.code(), Some(0));
    let all = carlitz(&["oracle", "--p-max", "31"]);
    let count = |o: &Output| -> u64 {
        stdout(o)
            .lines()
            .last()
            .unwrap()
            .split(' ')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    // a narrower scope compares fewer quantities
    assert!(count(&out) < count(&all));
}
