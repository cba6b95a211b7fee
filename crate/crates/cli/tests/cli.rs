use std::path::PathBuf;
use std::process::Command;

use hyperhom::fixtures;
use hyperhom::hypergraph::Hypergraph;
use hyperhom::io::{parse_hypergraph, Format, HypergraphDocument};
use hyperhom_cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, SCHEMA};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn data_dir() -> String {
    data("")
}

fn hyperhom(args: &[&str]) -> Outcome {
    run(std::iter::once("hyperhom").chain(args.iter().copied()))
}

fn load(name: &str) -> HypergraphDocument {
    parse_hypergraph(&std::fs::read_to_string(data(name)).unwrap(), Format::Plain).unwrap()
}

#[test]
fn sample_files_match_the_fixtures() {
    let ex21 = load("ex21.hg");
    for (name, pair) in fixtures::ex21_pairs() {
        assert_eq!(ex21.pair(Some(name)).unwrap(), pair, "{name}");
    }
    let ex22 = load("ex22.hg");
    for (name, pair) in fixtures::ex22_pairs() {
        assert_eq!(ex22.sub(name).unwrap(), pair.total(), "{name}");
        assert_eq!(ex22.sub("A").unwrap(), pair.sub());
    }
    let ex23 = load("ex23.hg");
    for (name, pair) in fixtures::ex23_pairs() {
        assert_eq!(ex23.pair(Some(name)).unwrap(), pair, "{name}");
    }
    assert_eq!(ex23.values(), &hyperhom::persistence::dimension_values(&fixtures::ex23_h()));
    assert_eq!(load("ex4a.hg").pair(Some("A")).unwrap(), fixtures::ex4a());
    let mv = load("mv.hg");
    let (pairs, union) = fixtures::mv_tetrahedron();
    for (j, p) in pairs.iter().enumerate() {
        assert_eq!(mv.sub(&format!("H{}", j + 1)).unwrap(), p.total());
        assert_eq!(mv.sub(&format!("A{}", j + 1)).unwrap(), p.sub());
    }
    assert_eq!(mv.pair(Some("A")).unwrap(), union);
}

#[test]
fn relative_homology_of_the_first_pair() {
    let out = hyperhom(&["homology", &data("ex21.hg"), "--sub", "A", "--coeff", "z"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "H_0 = Z\nH_1 = 0\nH_2 = 0\n");
}

#[test]
fn inf_sup_check_passes_on_the_first_example() {
    let out = hyperhom(&["verify", &data("ex21.hg"), "--check", "inf-sup-iso"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.starts_with("PASS inf-sup-iso"));
}

#[test]
fn interior_of_the_topology_example() {
    let out = hyperhom(&["topology", &data("ex4a.hg"), "--sub", "A", "--op", "int"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "{{v3},{v0,v1,v3}}\n");
}

#[test]
fn closed_complement_warns_about_the_printed_list() {
    let out = hyperhom(&["topology", &data("ex4a.hg"), "--sub", "A", "--op", "closed-complement"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("{{v0},{v1},{v2},{v0,v1},{v0,v1,v2}}\n"));
    assert!(out.stdout.contains("warning: ex4a-closed-complement"));
}

#[test]
fn mismatching_example_carries_a_warning() {
    let out = hyperhom(&["--output", "json", "homology", &data("ex21.hg"), "--sub", "A'"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["warnings"][0], "ex21-A': stated H_*(H,A) over Z = (Z, 0, 0), computed (0, 0, 0)");
}

#[test]
fn second_example_through_named_totals() {
    let expected = [("H", "0"), ("H'", "0"), ("H''", "Z")];
    for (total, h0) in expected {
        let out = hyperhom(&["homology", &data("ex22.hg"), "--total", total, "--sub", "A"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.starts_with(&format!("H_0 = {h0}\n")), "{total}: {}", out.stdout);
    }
}

#[test]
fn iterated_operators_and_distance() {
    let n2 = hyperhom(&["topology", &data("ex4a.hg"), "--sub", "A", "--op", "n", "--iterate", "2"]);
    assert_eq!(n2.code, EXIT_OK);
    let cor = hyperhom(&["topology", &data("ex4a.hg"), "--sub", "A", "--op", "cor"]);
    assert_eq!(cor.code, EXIT_OK);
    let d = hyperhom(&["distance", &data("ex4a.hg"), "v2", "{v3}"]);
    assert_eq!(d.stdout, "1\n");
    let bad = hyperhom(&["topology", &data("ex4a.hg"), "--op", "n", "--iterate", "0"]);
    assert_eq!(bad.code, EXIT_INPUT);
}

#[test]
fn reports_match_the_pinned_golden_files() {
    let cases: [(&str, Vec<String>); 3] = [
        ("homology_ex21_A.json", vec!["homology".into(), data("ex21.hg"), "--sub".into(), "A".into()]),
        (
            "topology_ex4a_int.json",
            vec!["topology".into(), data("ex4a.hg"), "--sub".into(), "A".into(), "--op".into(), "int".into()],
        ),
        ("persist_ex23_h1.json", vec!["persist".into(), data("ex23.hg"), "--degree".into(), "1".into()]),
    ];
    for (golden, args) in cases {
        let mut full = vec!["--output".to_string(), "json".into()];
        full.extend(args);
        let out = hyperhom(&full.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.code, EXIT_OK, "{golden}: {}", out.stderr);
        let normalized = out.stdout.replace(&data_dir(), "data/");
        let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", golden].iter().collect();
        assert_eq!(normalized, std::fs::read_to_string(path).unwrap(), "{golden}");
    }
}

#[test]
fn json_reports_carry_the_schema() {
    let out = hyperhom(&["--output", "json", "verify", &data("ex4a.hg"), "--sub", "A", "--check", "les,cell"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["status"], "pass");
    let checks = v["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert_eq!(checks[0]["check"], "les");
    assert_eq!(checks[1]["coefficients"], "z");
}

#[test]
fn barcode_csv_uses_inf_for_infinite_bars() {
    let out = hyperhom(&["--output", "csv", "persist", &data("ex23.hg"), "--degree", "0"]);
    assert_eq!(out.code, EXIT_OK);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("degree,birth,death,multiplicity"));
    assert!(out.stdout.lines().any(|l| l.ends_with(",inf,1")), "{}", out.stdout);
}

#[test]
fn skeleta_rank_invariant_cell() {
    let out = hyperhom(&["--output", "csv", "persist", &data("ex23.hg"), "--degree", "2", "--rank-invariant"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.lines().any(|l| l == "2,1,2,4,4,4"), "{}", out.stdout);
}

#[test]
fn core_neighborhood_filtration() {
    let out = hyperhom(&[
        "persist",
        &data("ex4a.hg"),
        "--filtration",
        "core-neighborhood",
        "--sub",
        "A",
        "--relative",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.starts_with("H_0 barcode over q (relative):"));
    let missing = hyperhom(&["persist", &data("ex4a.hg"), "--filtration", "core-neighborhood"]);
    assert_eq!(missing.code, EXIT_INPUT);
}

#[test]
fn sequence_checks_on_sample_files() {
    let ok = |args: &[&str]| {
        let out = hyperhom(args);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}{}", out.stdout, out.stderr);
        out
    };
    ok(&["verify", &data("ex23.hg"), "--sub", "A'", "--inner", "A'''", "--check", "les-triple,subadd"]);
    ok(&["verify", &data("ex4a.hg"), "--sub", "A", "--check", "persistent-les", "--kmax", "2"]);
    ok(&["verify", &data("ex23.hg"), "--check", "th1,cell", "--coeff", "zp:3"]);
    ok(&["verify", &data("ex23.hg"), "--check", "topology-axioms"]);
    let mv = ok(&["verify", &data("mv.hg"), "--check", "mv", "--left", "H1:A1", "--right", "H2:A2"]);
    assert!(mv.stdout.starts_with("PASS mv"));
}

#[test]
fn failed_hypothesis_is_not_a_failure() {
    // The two edges meet in a vertex that neither total contains.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.hg");
    std::fs::write(&path, "a\nb\nc\na b\nb c\n[L]\na b\n[R]\nb c\n").unwrap();
    let out = hyperhom(&["verify", path.to_str().unwrap(), "--check", "mv", "--left", "L:", "--right", "R:"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.starts_with("NOT-APPLICABLE mv"), "{}", out.stdout);
}

#[test]
fn paper_examples_fail_on_the_known_mismatches() {
    let out = hyperhom(&["verify", "--check", "paper-examples"]);
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    assert!(out.stdout.starts_with("FAIL paper-examples: 24 of 31 cases match"));
    assert_eq!(out.stdout.matches("warning: ").count(), 8);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, r#"{"edges": [["a"], ["a", "b"]], "subs": {"A": [["c"]]}}"#).unwrap();
    let out = hyperhom(&["homology", bad_json.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("subs.A[0]"), "{}", out.stderr);

    let dup = dir.path().join("dup.hg");
    std::fs::write(&dup, "a\na b\nb a\n").unwrap();
    let out = hyperhom(&["homology", dup.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    for args in [
        vec!["homology", "/nonexistent/file.hg"],
        vec!["homology", &data("ex21.hg"), "--sub", "Nope"],
        vec!["homology", &data("ex21.hg"), "--coeff", "zp:4"],
        vec!["frobnicate"],
        vec!["homology", &data("ex21.hg"), "--bogus"],
        vec!["verify", "--check", "les"],
        vec!["verify", &data("ex21.hg"), "--check", "les", "--coeff", "z"],
        vec!["--threads", "0", "verify", "--check", "paper-examples"],
    ] {
        let out = hyperhom(&args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn sublevel_values_from_a_plain_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vals.hg");
    std::fs::write(&path, "a : 0\nb : 0\na b : 0.5\n").unwrap();
    let out = hyperhom(&["--output", "csv", "persist", path.to_str().unwrap(), "--degree", "0"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "degree,birth,death,multiplicity\n0,0,0.5,1\n0,0,inf,1\n");
    let h = parse_hypergraph("a b : 0.5", Format::Plain).unwrap();
    assert_eq!(h.hypergraph(), &Hypergraph::from_ids(&[&[0, 1]]));
}

#[test]
fn binary_exit_codes_and_thread_settings() {
    let bin = env!("CARGO_BIN_EXE_hyperhom");
    let status = |cmd: &mut Command| cmd.output().unwrap().status.code();
    assert_eq!(status(Command::new(bin).arg("--help")), Some(EXIT_OK));
    assert_eq!(status(Command::new(bin).arg("--version")), Some(EXIT_OK));
    assert_eq!(status(Command::new(bin).args(["nope"])), Some(EXIT_INPUT));
    assert_eq!(
        status(Command::new(bin).args(["topology", &data("ex4a.hg"), "--sub", "A", "--op", "int"])),
        Some(EXIT_OK)
    );
    let one = Command::new(bin)
        .args(["--output", "json", "verify", "--check", "paper-examples"])
        .env("HYPERHOM_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(bin)
        .args(["--threads", "4", "--output", "json", "verify", "--check", "paper-examples"])
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(EXIT_CHECK_FAILED));
    let strip = |o: &std::process::Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["command"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&one), strip(&four));
}
