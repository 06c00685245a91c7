use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use clap::Parser;
use monkeysim::fixtures::{table06_rows, TABLE04_ATTEMPTS, TABLE04_SECONDS};
use monkeysim::ScaledDecimal;
use monkeysim_cli::Cli;

fn monkeysim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monkeysim")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> anyhow::Result<String> {
    let cli = Cli::try_parse_from(std::iter::once("monkeysim").chain(args.iter().copied()))?;
    let mut out = Vec::new();
    monkeysim_cli::run(&cli, &mut out)?;
    Ok(String::from_utf8(out)?)
}

fn records(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path).unwrap().records().map(Result::unwrap).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn table04_lists() -> (String, String) {
    (
        TABLE04_ATTEMPTS.map(|v| v.to_string()).join(","),
        TABLE04_SECONDS.map(|v| v.to_string()).join(","),
    )
}

#[test]
fn simulate_single_symbol_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim");
    run(&["simulate", "--target", "a", "--alphabet", "a", "--iterations", "3", "--no-timing", "--out", path(&out)])
        .unwrap();
    let rows = records(&out.join("measurements.csv"));
    assert_eq!(rows.len(), 4);
    for row in &rows[..3] {
        assert_eq!(&row[1], "1");
        assert_eq!(&row[2], "1");
    }
    assert_eq!(&rows[3][0], "average");
    assert_eq!(rows[3][2].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn comma_outside_alphabet_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let output = monkeysim(&[
        "simulate", "--target", "To be,", "--max-prefix", "6", "--alphabet", "letters+space", "--out",
        path(&dir.path().join("x")),
    ]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("','"), "{stderr}");
    assert!(stderr.contains("position 5"), "{stderr}");
}

#[test]
fn extend_alphabet_accepts_punctuation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ext");
    run(&[
        "simulate", "--target", ",", "--alphabet", "ab", "--extend-alphabet", "--iterations", "2", "--no-timing",
        "--out", path(&out),
    ])
    .unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["alphabet_size"], 3);
}

#[test]
fn measurement_table_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t02");
    run(&[
        "simulate", "--target", "To be", "--alphabet", "To be", "--iterations", "10", "--max-prefix", "5",
        "--out", path(&out),
    ])
    .unwrap();
    let text = fs::read_to_string(out.join("measurements.csv")).unwrap();
    assert!(text.starts_with("test,prefix_len,attempts,elapsed_seconds,seed\n"));
    assert!(!text.contains('\r'));
    let rows = records(&out.join("measurements.csv"));
    assert_eq!(rows.len(), 10 * 5 + 5);
    let averages: Vec<_> = rows.iter().filter(|r| &r[0] == "average").collect();
    assert_eq!(averages.len(), 5);
    for (i, row) in averages.iter().enumerate() {
        assert_eq!(row[1].parse::<usize>().unwrap(), i + 1);
        assert!(row[2].parse::<f64>().unwrap() >= 1.0);
    }
    for row in rows.iter().filter(|r| &r[0] != "average") {
        assert!(row[2].parse::<u64>().unwrap() >= 1);
        assert!(row[3].parse::<f64>().unwrap() >= 0.0);
        assert_eq!(&row[4], "42");
    }
}

#[test]
fn manifest_lists_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("proj");
    let (attempts, times) = table04_lists();
    run(&["project", "--attempts", &attempts, "--times", &times, "--out", path(&out)]).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "project");
    let outputs: Vec<&str> = manifest["outputs"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    for name in ["projection.csv", "projection.json", "attempts_log10.csv", "seconds_log10.csv", "figure03_full.csv"] {
        assert!(outputs.contains(&name), "{name} missing from {outputs:?}");
    }
    for name in outputs {
        assert!(out.join(name).is_file(), "{name} not written");
    }
}

#[test]
fn paper_style_matches_published_projection() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ps");
    let (attempts, times) = table04_lists();
    run(&["project", "--attempts", &attempts, "--times", &times, "--paper-style", "--out", path(&out)]).unwrap();
    let rows = records(&out.join("projection.csv"));
    assert_eq!(rows.len(), 41);
    let parse = |s: &str| -> ScaledDecimal { s.replace(',', ".").replace('E', "e").parse().unwrap() };
    assert!(rows[5][2].contains(','), "comma decimal mark expected: {:?}", &rows[5][2]);
    for published in table06_rows().unwrap() {
        let row = &rows[published.prefix_len - 1];
        for (col, reference) in [(2, published.attempts), (3, published.seconds), (4, published.hours)] {
            let err = parse(&row[col]).relative_error(&reference);
            assert!(err <= 0.02, "prefix {} column {col}: {} vs {reference}", published.prefix_len, &row[col]);
        }
    }
}

#[test]
fn short_target_has_no_extrapolation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("short");
    run(&["project", "--attempts", "1,2,4", "--times", "1,2,4", "--target", "abc", "--out", path(&out)]).unwrap();
    let rows = records(&out.join("projection.csv"));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| &r[5] == "measured"));
    assert_eq!(rows[2][2].parse::<ScaledDecimal>().unwrap().to_f64(), 4.0);
}

#[test]
fn one_base_point_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = run(&["project", "--attempts", "53", "--times", "0.1", "--out", path(&dir.path().join("one"))]).unwrap_err();
    assert!(format!("{err:#}").contains("at least 2"), "{err:#}");
}

#[test]
fn project_reads_simulated_measurements() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    run(&["simulate", "--max-prefix", "2", "--iterations", "5", "--out", path(&sim)]).unwrap();
    let proj = dir.path().join("proj");
    let csv = sim.join("measurements.csv");
    run(&["project", "--measurements", path(&csv), "--out", path(&proj)]).unwrap();
    assert_eq!(records(&proj.join("projection.csv")).len(), 41);

    let untimed = dir.path().join("untimed");
    run(&["simulate", "--max-prefix", "2", "--iterations", "5", "--no-timing", "--out", path(&untimed)]).unwrap();
    let err = run(&[
        "project", "--measurements", path(&untimed.join("measurements.csv")), "--out", path(&dir.path().join("p2")),
    ])
    .unwrap_err();
    assert!(format!("{err:#}").contains("--no-timing"), "{err:#}");
}

#[test]
fn prob_output() {
    let output = monkeysim(&["prob", "--alphabet-size", "52", "--length", "41"]);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("success_probability 4.404e-71"), "{stdout}");
    assert!(stdout.contains("expected_attempts 2.271e70"), "{stdout}");
    assert!(run(&["prob", "--alphabet-size", "2", "--length", "1"]).unwrap().contains("5.0e-1"));
    assert!(!monkeysim(&["prob", "--alphabet-size", "0", "--length", "3"]).status.success());
}

#[test]
fn census_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let count = |text: &str, name: &str| -> usize {
        let file = dir.path().join("corpus.txt");
        fs::write(&file, text).unwrap();
        let printed = run(&["census", "--file", path(&file)]).unwrap();
        let line = printed.lines().find(|l| l.starts_with(name)).unwrap();
        line.split_whitespace().nth(1).unwrap().parse().unwrap()
    };
    for name in ["raw", "newlines-excluded", "whitespace-collapsed", "letters-and-space"] {
        assert_eq!(count("", name), 0);
    }
    assert_eq!(count("To be", "raw"), 5);
    let missing = monkeysim(&["census", "--file", path(&dir.path().join("nope.txt"))]);
    assert!(!missing.status.success());
    assert!(!monkeysim(&["census"]).status.success());
}

#[test]
fn use_paper_data_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = |name: &str| -> Vec<(String, Vec<u8>)> {
        let out = dir.path().join(name);
        run(&["report", "--use-paper-data", "--out", path(&out)]).unwrap();
        let mut files: Vec<_> = fs::read_dir(&out)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
            })
            .collect();
        files.sort();
        files
    };
    let first = bundle("a");
    assert_eq!(first, bundle("b"));
    let summary = String::from_utf8(first.iter().find(|(n, _)| n == "summary.txt").unwrap().1.clone()).unwrap();
    for value in ["2.68e69", "2.95e66", "8.18e62"] {
        assert!(summary.contains(value), "{value} missing from summary:\n{summary}");
    }
}

#[test]
fn fresh_report_finishes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fresh");
    let start = Instant::now();
    run(&["report", "--seed", "42", "--max-prefix", "3", "--throughput-seconds", "0.05", "--out", path(&out)]).unwrap();
    assert!(start.elapsed() < Duration::from_secs(60));
    for name in ["measurements.csv", "projection.csv", "summary.txt", "census.txt", "manifest.json"] {
        assert!(out.join(name).is_file(), "{name} not written");
    }
    // projected time is attempts over a measured positive rate, so it grows with the prefix
    let rows = records(&out.join("projection.csv"));
    let seconds: Vec<ScaledDecimal> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(seconds.windows(2).all(|w| w[0] < w[1]));
}
