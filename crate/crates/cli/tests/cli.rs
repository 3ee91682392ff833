use std::process::{Command, Output};

use segre_core::grassmann::CorollaryReport;
use segre_core::replay::ReplayReport;
use segre_core::sweep::SweepReport;
use segre_core::SecantReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segre-secant"))
        .args(args)
        .env_remove("SEGRE_SECANT_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(out: &Output) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(out.stdout.as_slice())
        .records()
        .collect::<Result<_, _>>()
        .unwrap()
}

#[test]
fn dim_reports_the_defective_plane_cubic_case() {
    let out = run(&["dim", "--n", "2", "--m", "1", "--a", "3", "--b", "1", "--s", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "segre-secant/1");
    assert_eq!(v["command"], "dim");
    assert_eq!(v["report"]["expected_dim"], 19);
    assert_eq!(v["report"]["computed_dim"], 18);
    assert_eq!(v["report"]["defect"], 1);
    assert_eq!(v["classification"]["rule"], "main-theorem");
}

#[test]
fn dim_of_the_quadric_surface() {
    let out = run(&["dim", "--n", "1", "--m", "1", "--a", "1", "--b", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["computed_dim"], 2);
}

#[test]
fn cross_check_agrees_on_both_routes() {
    let out = run(&[
        "dim", "--n", "3", "--m", "1", "--a", "2", "--b", "2", "--s", "5", "--cross-check", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(&row[7], "23");
    }
    assert_eq!(&rows[0][13], "terracini");
    assert_eq!(&rows[1][13], "affine-reduction");
}

#[test]
fn csv_header_is_fixed() {
    let out = run(&["verify", "--n", "1", "--a", "1", "--b", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "n,m,a,b,s,N,expected_dim,computed_dim,defect,rule,prime,seed,trials,method"
    );
}

#[test]
fn verify_quadric_window() {
    let out = run(&["verify", "--n", "1..4", "--a", "2", "--b", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("discrepancies 0"), "{stderr}");
    for n in 1..=4usize {
        let defective: Vec<usize> = csv_rows(&out)
            .iter()
            .filter(|r| r[0].parse::<usize>().unwrap() == n && &r[8] != "0")
            .map(|r| r[4].parse().unwrap())
            .collect();
        assert_eq!(defective, (n + 2..=2 * n + 1).collect::<Vec<_>>());
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["verify", "--s", ""]).status.code(), Some(1));
    assert_eq!(run(&["replay", "--n-max", "2"]).status.code(), Some(1));
    assert_eq!(run(&["dim", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["dim", "--n", "0", "--m", "1", "--a", "1", "--b", "1", "--s", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--a", "3..1"]).status.code(), Some(1));
    assert_eq!(run(&["dim", "--n", "1", "--m", "1", "--a", "1", "--b", "1", "--s", "1", "--primes", "10"]).status.code(), Some(1));
    let sizing = run(&["dim", "--n", "3", "--m", "1", "--a", "4", "--b", "1", "--s", "14", "--budget", "100"]);
    assert_eq!(sizing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&sizing.stderr).contains("X(3,1,4,1)"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn replay_passes_and_round_trips() {
    let out = run(&["replay", "--n-max", "6", "--a-max", "8", "--b-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let report: ReplayReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert!(report.all_pass);
    assert_eq!(report.cells.len(), 120);
    assert_eq!(serde_json::to_value(&report).unwrap(), v["report"]);
}

#[test]
fn grassmann_corollary_has_one_defective_cell() {
    let out = run(&["grassmann", "--n-max", "3", "--a-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let report: CorollaryReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert!(report.holds);
    let cells: Vec<_> = report.defective.iter().map(|c| (c.n, c.a, c.s, c.defect, c.dim)).collect();
    assert_eq!(cells, vec![(2, 3, 5, 1, 15)]);
}

#[test]
fn grassmann_single_query() {
    let out = run(&["grassmann", "--n", "3", "--a", "3", "--k", "1", "--s", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["dim"], 26);
    assert_eq!(v["report"]["defect"], 0);
}

#[test]
fn numerology_reports_thresholds() {
    let out = run(&["numerology", "--n", "3", "--m", "1", "--a", "4", "--b", "1", "--computed"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["numerology"]["q"], 14);
    assert_eq!(v["numerology"]["r"], 0);
    assert_eq!(v["e"], 14);
    assert_eq!(v["computed_estar"], 14);
}

#[test]
fn output_is_byte_identical_and_seed_falls_back_to_env() {
    let args = ["verify", "--n", "1..2", "--a", "1..3", "--b", "1..2", "--seed", "7"];
    let first = run(&args);
    assert_eq!(first.stdout, run(&args).stdout);
    let threaded = run(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(first.stdout, threaded.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_segre-secant"))
        .args(&args[..args.len() - 2])
        .env("SEGRE_SECANT_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(first.stdout, via_env.stdout);
}

#[test]
fn verify_json_round_trips() {
    let out = run(&["verify", "--n", "1..2", "--a", "1..3", "--b", "1..2"]);
    let v = json(&out);
    let report: SweepReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert_eq!(report.summary.discrepancies, 0);
    assert_eq!(serde_json::to_value(&report).unwrap(), v["report"]);

    let out = run(&["dim", "--n", "2", "--m", "2", "--a", "2", "--b", "1", "--s", "3"]);
    let v = json(&out);
    let report: SecantReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), v["report"]);
    assert!(v["classification"].is_null());
}

#[test]
fn tiny_prime_discrepancies_exit_two() {
    // Over F_2 random points are far from generic, so ranks collapse.
    let out = run(&["verify", "--primes", "2", "--trials", "1", "--n", "2..3", "--a", "3", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let report: SweepReport = serde_json::from_value(json(&out)["report"].clone()).unwrap();
    assert!(report.summary.discrepancies > 0);
}
