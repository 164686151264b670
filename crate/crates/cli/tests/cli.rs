use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigUint;
use quintic_genus::polycore::arith::is_prime;
use serde_json::Value;

fn quintic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(args: &[&str]) -> Vec<Value> {
    let mut all = vec!["--format", "records"];
    all.extend_from_slice(args);
    let o = quintic(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{args:?}: {e}: {l}")))
        .collect()
}

fn corpus_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quintic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SUBCOMMANDS: [&[&str]; 16] = [
    &[],
    &["genus"],
    &["local"],
    &["local", "enumerate-q5"],
    &["local", "mass"],
    &["local", "split"],
    &["density"],
    &["density", "genus-one"],
    &["density", "average"],
    &["density", "lower-bound"],
    &["density", "sieve"],
    &["density", "screen"],
    &["density", "bhargava"],
    &["corpus", "run"],
    &["corpus", "stats"],
    &["corpus", "screen"],
];

#[test]
fn help_everywhere() {
    for sub in SUBCOMMANDS {
        let mut args = sub.to_vec();
        args.push("--help");
        let o = quintic(&args);
        assert_eq!(o.status.code(), Some(0), "{sub:?}");
        let text = stdout(&o);
        for flag in ["--format", "--seed", "--workers"] {
            assert!(text.contains(flag), "{sub:?} help lacks {flag}");
        }
    }
    assert!(stdout(&quintic(&["density", "sieve", "--help"])).contains("--Y"));
    assert!(stdout(&quintic(&["genus", "--help"])).contains("--poly"));
}

#[test]
fn usage_errors() {
    assert_eq!(
        quintic(&["genus", "--poly", "x^5 - 11", "--nope"]).status.code(),
        Some(1)
    );
    assert_eq!(quintic(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(quintic(&["genus", "--poly", "x^5"]).status.code(), Some(1));
    assert_eq!(
        quintic(&["--format", "xml", "genus", "--poly", "x^5 - 11"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn io_error_exit() {
    assert_eq!(
        quintic(&["corpus", "run", "/definitely/not/here"]).status.code(),
        Some(3)
    );
}

/// The first prime above `start` that is 3 mod 10.
fn prime_after(start: BigUint) -> BigUint {
    let mut q = &start - (&start % 10u32) + 3u32;
    while !is_prime(&q) {
        q += 10u32;
    }
    q
}

#[test]
fn factorization_abort_exit() {
    // x^5 + Nx + N with N = 2pq for 31-digit primes p, q: Eisenstein at 2,
    // and the discriminant keeps (pq)^4 out of reach of trial division
    // and rho.
    let base = BigUint::from(10u32).pow(30);
    let n = prime_after(&base * 2u32) * prime_after(&base * 5u32) * 2u32;
    let poly = format!("{n},{n},0,0,0,1");
    let o = quintic(&["genus", "--poly", &poly]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("factorization-timeout"));
}

#[test]
fn genus_command() {
    let text = stdout(&quintic(&["genus", "--poly", "x^5 - 11"]));
    assert!(
        text.lines()
            .any(|l| l.starts_with("genus number") && l.trim_end().ends_with(" 5")),
        "{text}"
    );
    let r = records(&["genus", "--poly", "x^5 - 341"]);
    assert_eq!(r[0]["genus"], 25);
    assert_eq!(r[0]["ramification_product"], serde_json::json!([11, 31]));
}

#[test]
fn local_commands() {
    let text = stdout(&quintic(&["local", "mass", "-p", "7"]));
    assert!(text.starts_with("mass 2857/2401"), "{text}");
    assert!(text.contains("agrees"));
    let r = records(&["local", "mass", "-p", "11", "--condition", "totally-ramified"]);
    assert_eq!(r[0]["classes"], 5);
    let r = records(&["local", "split", "--poly", "x^5 - 11", "-p", "11"]);
    assert_eq!(r[0]["parts"], serde_json::json!([{"e": 5, "f": 1}]));
    assert_eq!(quintic(&["local", "mass", "-p", "3"]).status.code(), Some(1));
}

#[test]
fn density_commands() {
    let text = stdout(&quintic(&["density", "genus-one", "--digits", "8"]));
    assert!(text.starts_with("genus-one 0.99993"), "{text}");
    assert!(text.contains(" in [") && text.contains("cutoff"));
    let r = records(&["density", "genus-one", "--digits", "8"]);
    let v: f64 = r[0]["value"].as_str().unwrap().parse().unwrap();
    assert!((v - 0.999935).abs() < 5e-7);
    for args in [
        &["density", "average"][..],
        &["density", "lower-bound", "--k", "2"],
        &["density", "sieve", "--Y", "100"],
        &["density", "screen"],
        &["density", "bhargava", "--i", "0"],
    ] {
        let r = records(args);
        assert_eq!(r.len(), 1, "{args:?}");
        let lo: f64 = r[0]["low"].as_str().unwrap().parse().unwrap();
        let hi: f64 = r[0]["high"].as_str().unwrap().parse().unwrap();
        assert!(0.0 < lo && lo <= hi, "{args:?}");
    }
}

#[test]
fn enumerate_q5_records() {
    let r = records(&["local", "enumerate-q5"]);
    assert_eq!(r.len(), 25);
    let reps: Vec<&str> = r.iter().map(|v| v["representative"].as_str().unwrap()).collect();
    let mut sorted = reps.clone();
    sorted.sort_by_key(|s| s.split(',').map(|c| c.parse::<i64>().unwrap()).collect::<Vec<_>>());
    assert_eq!(reps, sorted);
}

#[test]
fn corpus_commands() {
    let table = corpus_file(
        "t.txt",
        "# sample\n-1,-1,0,0,0,1\n-11,0,0,0,0,1\n399,14,35,0,0,1\nnot a line\n",
    );
    let table_s = table.to_str().unwrap();
    let out = corpus_file("out.jsonl", "");
    let o = quintic(&["corpus", "run", table_s, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
    let persisted = std::fs::read_to_string(&out).unwrap();
    assert_eq!(persisted.lines().count(), 3);
    for line in persisted.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert!(keys.len() >= 8);
    }
    let stats = records(&["corpus", "stats", out.to_str().unwrap()]);
    assert_eq!(stats[0]["rows"][3]["total"], 3);
    assert_eq!(stats[0]["rows"][3]["mean"], "7/3");
    let text = stdout(&quintic(&["corpus", "stats", table_s]));
    assert!(text.contains("0.999935"), "{text}");
    let screened = records(&["corpus", "screen", out.to_str().unwrap()]);
    assert_eq!(screened.len(), 1);
    assert_eq!(screened[0]["poly"], "399,14,35,0,0,1");
    let capped = records(&["corpus", "stats", out.to_str().unwrap(), "--x-cap", "1"]);
    assert_eq!(capped[0]["empty"], true);
}
