use std::process::Command;

use montyhall::cli::{self, SWEEP_CSV_HEADER};
use serde_json::Value;

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("montyhall").chain(args.iter().copied());
    let lookup = |k: &str| {
        env.iter()
            .find(|(name, _)| *name == k)
            .map(|(_, v)| v.to_string())
    };
    let status = cli::execute(argv, lookup, &mut out, &mut err);
    Run {
        status,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_env(args, &[])
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

const CLASSIC: [&str; 8] = [
    "--doors",
    "3",
    "--prizes",
    "1",
    "--opened",
    "1",
    "--revealed",
    "0",
];
const HUNDRED_DOORS: [&str; 8] = [
    "--doors",
    "100",
    "--prizes",
    "37",
    "--opened",
    "3",
    "--revealed",
    "2",
];

fn args<'a>(cmd: &'a str, config: &[&'a str], rest: &[&'a str]) -> Vec<&'a str> {
    std::iter::once(cmd)
        .chain(config.iter().copied())
        .chain(rest.iter().copied())
        .collect()
}

#[test]
fn analyze_classic_informed() {
    let r = run(&args("analyze", &CLASSIC, &["--host", "informed"]));
    assert_eq!(r.status, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["schema"], cli::ANALYZE_SCHEMA);
    assert_eq!(v["switch"]["fraction"], "2/3");
    assert_eq!(v["switch"]["decimal"], "0.66667");
    assert_eq!(v["stay"]["fraction"], "1/3");
    assert_eq!(v["config"]["host"], "informed");
    assert!(v.get("likelihoods").is_none());
}

#[test]
fn analyze_hundred_doors_random() {
    let r = run(&args("analyze", &HUNDRED_DOORS, &["--host", "random"]));
    assert_eq!(r.status, 0);
    let v = json(&r);
    assert_eq!(v["stay"]["fraction"], "35/97");
    assert_eq!(v["switch"]["fraction"], "35/97");
    assert_eq!(v["switch"]["decimal"], "0.36082");
    assert_eq!(v["bayes_posterior_stay"]["fraction"], "35/97");
    assert!(v["likelihoods"]["marginal"]["fraction"].is_string());
}

#[test]
fn analyze_rejects_invalid_config() {
    let r = run(&[
        "analyze",
        "--doors",
        "3",
        "--prizes",
        "1",
        "--opened",
        "2",
        "--revealed",
        "0",
        "--host",
        "informed",
    ]);
    assert_eq!(r.status, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("NO_SWITCH_TARGET"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["analyze", "--doors", "3"]).status, 2);
    assert_eq!(run(&["frobnicate"]).status, 2);
    assert_eq!(run(&["verify", "--max-doors", "2"]).status, 2);
    assert_eq!(run(&["verify", "--max-doors", "9"]).status, 2);
    let r = run(&args(
        "simulate",
        &CLASSIC,
        &["--host", "informed", "--trials", "0", "--seed", "1"],
    ));
    assert_eq!(r.status, 2);
    assert_eq!(run(&["--help"]).status, 0);
}

#[test]
fn verify_three_doors() {
    let r = run(&["verify", "--max-doors", "3"]);
    assert_eq!(r.status, 0);
    let v = json(&r);
    assert_eq!(v["status"], "all configs passed");
    let cases = v["cases"].as_array().unwrap();
    let classic = cases
        .iter()
        .find(|c| {
            c["config"]["doors"] == 3
                && c["config"]["prizes"] == 1
                && c["config"]["opened"] == 1
                && c["config"]["revealed"] == 0
                && c["config"]["host"] == "informed"
        })
        .unwrap();
    assert_eq!(classic["oracle_switch"], "2/3");
    assert_eq!(classic["analytic_switch"], "2/3");
}

#[test]
fn simulate_reports_summary() {
    let r = run(&args(
        "simulate",
        &CLASSIC,
        &["--host", "random", "--trials", "20000", "--seed", "5"],
    ));
    assert_eq!(r.status, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["seed_source"], "flag");
    assert_eq!(v["accepted_trials"], 20000);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for res in results {
        let rate = res["win_rate"].as_f64().unwrap();
        assert!(
            res["ci_low"].as_f64().unwrap() <= rate && rate <= res["ci_high"].as_f64().unwrap()
        );
        assert_eq!(res["theoretical"]["fraction"], "1/2");
    }
    assert_eq!(v["analytic_event_probability"]["fraction"], "2/3");
    assert!(v["rejected_trials"].as_u64().unwrap() > 0);
}

#[test]
fn simulate_seed_precedence() {
    let base = args(
        "simulate",
        &CLASSIC,
        &[
            "--host",
            "informed",
            "--trials",
            "1000",
            "--strategy",
            "stay",
        ],
    );
    let from_env = run_with_env(&base, &[(cli::SEED_ENV, "99")]);
    assert_eq!(json(&from_env)["seed"], 99);
    assert_eq!(json(&from_env)["seed_source"], "env");

    let mut flagged = base.clone();
    flagged.extend(["--seed", "3"]);
    let flag_wins = run_with_env(&flagged, &[(cli::SEED_ENV, "99")]);
    assert_eq!(json(&flag_wins)["seed"], 3);

    let drawn = run(&base);
    assert_eq!(json(&drawn)["seed_source"], "random");
    assert!(drawn.stderr.contains("--seed"));

    let bad = run_with_env(&base, &[(cli::SEED_ENV, "abc")]);
    assert_eq!(bad.status, 2);
}

#[test]
fn simulate_is_byte_identical() {
    let a = run(&args(
        "simulate",
        &HUNDRED_DOORS,
        &[
            "--host",
            "informed",
            "--trials",
            "30000",
            "--seed",
            "7",
            "--threads",
            "1",
        ],
    ));
    let b = run(&args(
        "simulate",
        &HUNDRED_DOORS,
        &[
            "--host",
            "informed",
            "--trials",
            "30000",
            "--seed",
            "7",
            "--threads",
            "3",
        ],
    ));
    assert_eq!(a.status, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_doors_informed() {
    let r = run(&[
        "sweep",
        "--prizes",
        "1",
        "--opened",
        "1",
        "--revealed",
        "0",
        "--host",
        "informed",
        "--vary",
        "doors",
        "--from",
        "3",
        "--to",
        "10",
    ]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], SWEEP_CSV_HEADER);
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[1], "3,informed,1/3,2/3,0.33333,0.66667");
    assert_eq!(lines[2], "4,informed,1/4,3/8,0.25000,0.37500");
    assert_eq!(lines[3], "5,informed,1/5,4/15,0.20000,0.26667");
}

#[test]
fn sweep_revealed_keeps_informed_stay() {
    let r = run(&[
        "sweep", "--doors", "100", "--prizes", "37", "--opened", "3", "--host", "informed",
        "--vary", "revealed", "--from", "0", "--to", "2",
    ]);
    assert_eq!(r.status, 0);
    for line in r.stdout.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2], "37/100");
        assert_eq!(cols[4], "0.37000");
    }
}

#[test]
fn sweep_flags_invalid_points() {
    let r = run(&[
        "sweep",
        "--doors",
        "5",
        "--prizes",
        "1",
        "--revealed",
        "1",
        "--host",
        "informed",
        "--vary",
        "opened",
        "--from",
        "1",
        "--to",
        "3",
    ]);
    // every point needs r = 1 > m - 1 = 0
    assert_eq!(r.status, 2);
    let r = run(&[
        "sweep",
        "--doors",
        "6",
        "--prizes",
        "4",
        "--revealed",
        "0",
        "--host",
        "both",
        "--vary",
        "opened",
        "--from",
        "1",
        "--to",
        "5",
    ]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines.contains(&"1,informed,2/3,5/6,0.66667,0.83333"));
    assert!(lines.contains(&"2,informed,INFORMED_INFEASIBLE,INFORMED_INFEASIBLE,,"));
    assert!(lines.contains(&"2,random,1/1,1/1,1.00000,1.00000"));
    assert!(lines.contains(&"3,random,EVENT_IMPOSSIBLE,EVENT_IMPOSSIBLE,,"));
    assert!(lines.contains(&"5,random,NO_SWITCH_TARGET,NO_SWITCH_TARGET,,"));
    assert!(r.stderr.contains("INFORMED_INFEASIBLE"));
    assert_eq!(
        run(&["sweep", "--prizes", "1", "--vary", "doors", "--from", "3", "--to", "4"]).status,
        2,
        "missing template flags"
    );
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_montyhall");
    let ok = Command::new(bin)
        .args(args("analyze", &CLASSIC, &["--host", "informed"]))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["switch"]["fraction"], "2/3");

    let bad = Command::new(bin)
        .args([
            "analyze",
            "--doors",
            "3",
            "--prizes",
            "1",
            "--opened",
            "1",
            "--revealed",
            "1",
            "--host",
            "informed",
        ])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("INFORMED_INFEASIBLE"));

    let limit = Command::new(bin)
        .args([
            "simulate",
            "--doors",
            "41",
            "--prizes",
            "20",
            "--opened",
            "20",
            "--revealed",
            "20",
        ])
        .args(["--host", "random", "--trials", "1", "--seed", "0"])
        .output()
        .unwrap();
    assert_eq!(limit.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&limit.stderr).contains("REJECTION_LIMIT"));
}
