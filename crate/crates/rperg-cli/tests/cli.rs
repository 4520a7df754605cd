use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn rperg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rperg"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn write_bowtie(dir: &Path) -> String {
    let path = dir.join("bowtie.txt");
    fs::write(&path, "0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn learn_then_generate_is_deterministic() {
    let dir = tempdir().unwrap();
    let input = write_bowtie(dir.path());
    let grammar_a = dir.path().join("a.json");
    let grammar_b = dir.path().join("b.json");
    for out in [&grammar_a, &grammar_b] {
        let r = rperg(&["learn", "--input", &input, "--output", out.to_str().unwrap(), "--seed", "3"]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    assert_eq!(fs::read(&grammar_a).unwrap(), fs::read(&grammar_b).unwrap());

    let gen_a = dir.path().join("gen-a");
    let gen_b = dir.path().join("gen-b");
    for out in [&gen_a, &gen_b] {
        let r = rperg(&[
            "generate",
            "--grammar",
            grammar_a.to_str().unwrap(),
            "--model",
            "ergm2",
            "--nodes",
            "25",
            "--count",
            "3",
            "--seed",
            "11",
            "--output-dir",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    for i in 0..3 {
        let a = fs::read(gen_a.join(format!("gen-ergm2-{i}.txt"))).unwrap();
        let b = fs::read(gen_b.join(format!("gen-ergm2-{i}.txt"))).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "generation must be byte-identical under a fixed seed");
    }
}

#[test]
fn ergm1_and_chung_lu_models_run() {
    let dir = tempdir().unwrap();
    let input = write_bowtie(dir.path());
    let grammar = dir.path().join("g.json");
    assert!(rperg(&["learn", "--input", &input, "--output", grammar.to_str().unwrap()])
        .status
        .success());
    let out = dir.path().join("gen");
    let r = rperg(&[
        "generate",
        "--grammar",
        grammar.to_str().unwrap(),
        "--model",
        "ergm1",
        "--p",
        "0.7",
        "--count",
        "2",
        "--seed",
        "4",
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(out.join("gen-ergm1-0.txt").exists());

    let r = rperg(&[
        "generate",
        "--model",
        "chung-lu",
        "--degrees-from",
        &input,
        "--count",
        "1",
        "--seed",
        "4",
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(out.join("gen-chung-lu-0.txt").exists());
}

#[test]
fn metrics_against_self_reports_zero_distances() {
    let dir = tempdir().unwrap();
    let input = write_bowtie(dir.path());
    let out = dir.path().join("report.csv");
    let r = rperg(&[
        "metrics",
        "--graph",
        &input,
        "--against",
        &input,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("metric,x,y\n"));
    assert!(csv.contains("\nnetwork_value_distance,0\n"));
    assert!(csv.contains("\ngcd,0\n"));
    assert!(csv.contains("degree_distribution,2,4"));
}

#[test]
fn compare_writes_summary_and_mean_reports() {
    let dir = tempdir().unwrap();
    let input = write_bowtie(dir.path());
    let out = dir.path().join("cmp");
    let r = rperg(&[
        "compare",
        "--input",
        &input,
        "--count",
        "2",
        "--seed",
        "7",
        "--nodes",
        "12",
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(
        lines[0],
        "generator,mean_network_value_distance,mean_gcd,mean_global_clustering"
    );
    assert!(lines.iter().any(|l| l.starts_with("original,")));
    assert!(lines.iter().any(|l| l.starts_with("rperg,")));
    assert!(lines.iter().any(|l| l.starts_with("chung-lu,")));
    assert!(out.join("grammar.json").exists());
    assert!(out.join("original-metrics.csv").exists());
    assert!(out.join("rperg-mean-metrics.csv").exists());
    assert!(out.join("chung-lu-mean-metrics.csv").exists());
    assert!(out.join("rperg-0.txt").exists());
    assert!(out.join("chung-lu-1.txt").exists());
}

#[test]
fn exit_codes_distinguish_usage_and_data_errors() {
    // missing input file: data error, exit 3
    let dir = tempdir().unwrap();
    let r = rperg(&[
        "learn",
        "--input",
        "/nonexistent/graph.txt",
        "--output",
        dir.path().join("g.json").to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(3));

    // malformed edge list: data error, exit 3
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1\nnot numbers\n").unwrap();
    let r = rperg(&[
        "learn",
        "--input",
        bad.to_str().unwrap(),
        "--output",
        dir.path().join("g.json").to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 2"));

    // unknown flag: usage error, exit 2
    let r = rperg(&["learn", "--definitely-not-a-flag"]);
    assert_eq!(r.status.code(), Some(2));

    // invalid generator parameter: data error, exit 3
    let input = write_bowtie(dir.path());
    let grammar = dir.path().join("g2.json");
    assert!(rperg(&["learn", "--input", &input, "--output", grammar.to_str().unwrap()])
        .status
        .success());
    let r = rperg(&[
        "generate",
        "--grammar",
        grammar.to_str().unwrap(),
        "--model",
        "ergm1",
        "--p",
        "1.5",
        "--count",
        "1",
        "--seed",
        "1",
        "--output-dir",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(3));
}
