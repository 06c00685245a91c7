//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.
//!
//! The optional five-character replication (about 4e9 candidates) runs only
//! when `MONKEYSIM_SLOW=1` is set.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use clap::Parser;
use monkeysim::analytics::{expected_attempts, growth_factor, success_probability};
use monkeysim::fixtures::{TABLE04_ATTEMPTS, TABLE04_SECONDS};
use monkeysim::simulator::{run_experiment, ExperimentConfig};
use monkeysim::{Alphabet, ScaledDecimal, TargetText};
use monkeysim_cli::Cli;

struct Check {
    detail: String,
    ok: bool,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check {
        detail: detail.into(),
        ok,
    }
}

fn sd(text: &str) -> ScaledDecimal {
    text.parse().unwrap()
}

fn run_cli(args: &[&str]) -> anyhow::Result<String> {
    let cli = Cli::try_parse_from(std::iter::once("monkeysim").chain(args.iter().copied()))?;
    let mut out = Vec::new();
    monkeysim_cli::run(&cli, &mut out)?;
    Ok(String::from_utf8(out)?)
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut rows = csv_rows(&fs::read_to_string(path).unwrap());
    rows.remove(0);
    rows
}

fn within(value: &ScaledDecimal, reference: &str, tolerance: f64) -> (bool, f64) {
    let err = value.relative_error(&sd(reference));
    (err <= tolerance, err)
}

fn ac1_probability() -> Vec<Check> {
    let start = Instant::now();
    let line = success_probability(52, 41).unwrap();
    let soliloquy = success_probability(52, 1520).unwrap();
    let elapsed = start.elapsed();
    vec![
        check(
            line.exponent() == -71 && (line.mantissa() - 4.404).abs() <= 0.002,
            format!("(1/52)^41 = {line} (want 4.404 +- 0.002 e-71)"),
        ),
        check(
            soliloquy.exponent() == -2609 && (soliloquy.mantissa() - 4.73).abs() <= 0.01,
            format!("(1/52)^1520 = {soliloquy} (want 4.73 +- 0.01 e-2609)"),
        ),
        check(elapsed < Duration::from_millis(100), format!("runtime {elapsed:?}")),
    ]
}

fn ac2_headline(dir: &Path) -> Vec<Check> {
    let out = dir.join("ac2");
    let attempts = TABLE04_ATTEMPTS.map(|v| v.to_string()).join(",");
    let times = TABLE04_SECONDS.map(|v| v.to_string()).join(",");
    let start = Instant::now();
    let printed = run_cli(&["project", "--attempts", &attempts, "--times", &times, "--out", out.to_str().unwrap()]);
    let elapsed = start.elapsed();
    let printed = match printed {
        Ok(p) => p,
        Err(e) => return vec![check(false, format!("project failed: {e:#}"))],
    };
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("projection.json")).unwrap()).unwrap();
    let last = json.as_array().unwrap().last().unwrap();
    let mut checks = vec![check(last["prefix_len"] == 41, format!("final row is prefix {}", last["prefix_len"]))];
    for (field, reference) in [("attempts", "2.68e69"), ("seconds", "2.95e66"), ("hours", "8.18e62")] {
        let value = sd(last[field].as_str().unwrap());
        let (ok, err) = within(&value, reference, 0.01);
        checks.push(check(ok, format!("{field} {value} vs {reference} (rel err {err:.4}, tol 0.01)")));
    }
    checks.push(check(printed.contains("2.68e69"), "stdout reports the final attempts"));
    checks.push(check(elapsed < Duration::from_secs(1), format!("runtime {elapsed:?}")));
    checks
}

fn ac3_table06(dir: &Path) -> Vec<Check> {
    let out = dir.join("ac3");
    let attempts = TABLE04_ATTEMPTS.map(|v| v.to_string()).join(",");
    let times = TABLE04_SECONDS.map(|v| v.to_string()).join(",");
    if let Err(e) = run_cli(&["project", "--attempts", &attempts, "--times", &times, "--out", out.to_str().unwrap()]) {
        return vec![check(false, format!("project failed: {e:#}"))];
    }
    let rows = read_csv(&out.join("projection.csv"));
    [(6, "1.70e10"), (8, "4.10e13"), (10, "9.89e16"), (20, "8.11e33"), (25, "4.73e40")]
        .into_iter()
        .map(|(len, reference)| {
            let row = &rows[len - 1];
            let value = sd(&row[2]);
            let (ok, err) = within(&value, reference, 0.02);
            check(
                ok,
                format!("prefix {len} {:?}: {value} vs {reference} (rel err {err:.4}, tol 0.02)", row[1]),
            )
        })
        .collect()
}

fn ac4_growth_factors() -> Vec<Check> {
    let attempts = growth_factor(&TABLE04_ATTEMPTS).unwrap();
    let times = growth_factor(&TABLE04_SECONDS).unwrap();
    vec![
        check((attempts - 49.134).abs() <= 0.001, format!("attempts factor {attempts:.6} (want 49.134 +- 0.001)")),
        check((times - 57.798).abs() <= 0.001, format!("time factor {times:.6} (want 57.798 +- 0.001)")),
    ]
}

fn experiment(alphabet: Alphabet, target: &str, max_prefix: usize, iterations: usize, seed: u64) -> ExperimentConfig {
    let mut config = ExperimentConfig::new(TargetText::new(target).unwrap(), alphabet);
    config.max_prefix_length = max_prefix;
    config.iterations = iterations;
    config.seed = seed;
    config
}

fn ac5_small_alphabet() -> Vec<Check> {
    let start = Instant::now();
    let table = run_experiment(&experiment(Alphabet::new(['a', 'b']).unwrap(), "ab", 2, 10_000, 5)).unwrap();
    let elapsed = start.elapsed();
    let mean = table.attempts_averages[1];
    vec![
        check((3.90..=4.10).contains(&mean), format!("mean attempts {mean:.4} over 10000 trials (want [3.90, 4.10])")),
        check(elapsed < Duration::from_secs(1), format!("runtime {elapsed:?}")),
    ]
}

fn replication_checks(max_prefix: usize, iterations: usize, seed: u64) -> Vec<Check> {
    let start = Instant::now();
    let table = run_experiment(&experiment(Alphabet::letters_and_space(), "To be", max_prefix, iterations, seed)).unwrap();
    let elapsed = start.elapsed();
    let mut checks: Vec<Check> = table
        .attempts_averages
        .iter()
        .enumerate()
        .map(|(i, &mean)| {
            let expected = 53f64.powi(i as i32 + 1);
            let band = 3.0 * expected / (iterations as f64).sqrt();
            check(
                (mean - expected).abs() <= band && !table.trials.iter().any(|r| r[i].budget_exceeded),
                format!("n={}: mean {mean:.1} vs 53^n = {expected} +- {band:.1}", i + 1),
            )
        })
        .collect();
    checks.push(check(elapsed < Duration::from_secs(120), format!("runtime {elapsed:?} (target under 120 s)")));
    checks
}

fn ac6_replication() -> Vec<Check> {
    replication_checks(4, 100, 6)
}

fn ac7_reciprocity() -> Vec<Check> {
    let mut worst = 0.0f64;
    for a in 2..=100u64 {
        for n in 1..=50u64 {
            let sum = expected_attempts(a, n).unwrap().log10() + success_probability(a, n).unwrap().log10();
            worst = worst.max(sum.abs());
        }
    }
    vec![check(worst <= 1e-12, format!("max |log10(E) + log10(P)| = {worst:e} over A in 2..=100, n in 1..=50"))]
}

fn ac8_determinism(dir: &Path) -> Vec<Check> {
    let simulate = |name: &str, workers: &str| -> Vec<u8> {
        let out = dir.join(name);
        run_cli(&[
            "simulate", "--target", "To be", "--alphabet", "letters+space", "--max-prefix", "3", "--iterations", "10",
            "--seed", "42", "--workers", workers, "--no-timing", "--out", out.to_str().unwrap(),
        ])
        .unwrap();
        fs::read(out.join("measurements.csv")).unwrap()
    };
    let first = simulate("ac8-a", "1");
    let second = simulate("ac8-b", "1");
    let parallel = simulate("ac8-c", "8");
    let attempts = |csv: &[u8]| -> Vec<String> {
        csv_rows(std::str::from_utf8(csv).unwrap()).into_iter().map(|r| r[..3].join(",")).collect()
    };
    vec![
        check(first == second, "same seed, --no-timing: byte-identical CSV"),
        check(attempts(&first) == attempts(&parallel), "--workers 1 vs --workers 8: identical attempt counts"),
        check(first == parallel, "--workers 1 vs --workers 8: byte-identical CSV"),
    ]
}

fn ac9_census() -> Vec<Check> {
    let printed = match run_cli(&["census", "--bundled-hamlet"]) {
        Ok(p) => p,
        Err(e) => return vec![check(false, format!("census failed: {e:#}"))],
    };
    // direct counts of the bundled file
    let text = monkeysim::fixtures::HAMLET_SOLILOQUY;
    let oracle = [
        ("raw", text.chars().count()),
        ("newlines-excluded", text.lines().map(|l| l.chars().count()).sum::<usize>()),
        ("whitespace-collapsed", text.split_whitespace().collect::<Vec<_>>().join(" ").chars().count()),
        ("letters-and-space", text.chars().filter(|c| c.is_ascii_alphabetic() || *c == ' ').count()),
    ];
    oracle
        .into_iter()
        .map(|(name, count)| {
            let flag = if count == 1520 { "yes" } else { "no" };
            let line = printed.lines().find(|l| l.split_whitespace().next() == Some(name));
            let fields: Vec<&str> = line.map(|l| l.split_whitespace().collect()).unwrap_or_default();
            check(
                fields == [name, count.to_string().as_str(), flag],
                format!("{name}: reported {:?}, direct count {count} ({flag})", line.unwrap_or("missing")),
            )
        })
        .collect()
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let mut criteria: Vec<(&str, &str, Box<dyn Fn() -> Vec<Check>>)> = vec![
        ("AC1", "probability reproduction", Box::new(ac1_probability)),
        ("AC2", "headline projection reproduction", Box::new(|| ac2_headline(dir.path()))),
        ("AC3", "projection spot checks at prefixes 6, 8, 10, 20, 25", Box::new(|| ac3_table06(dir.path()))),
        ("AC4", "growth-factor unit values", Box::new(ac4_growth_factors)),
        ("AC5", "small-alphabet statistical oracle", Box::new(ac5_small_alphabet)),
        ("AC6", "desk-scale replication, A=53, n=1..4, 100 trials", Box::new(ac6_replication)),
        ("AC7", "reciprocity invariant", Box::new(ac7_reciprocity)),
        ("AC8", "determinism", Box::new(|| ac8_determinism(dir.path()))),
        ("AC9", "census of the bundled corpus", Box::new(ac9_census)),
    ];
    if std::env::var("MONKEYSIM_SLOW").is_ok_and(|v| v == "1") {
        criteria.push(("AC6+", "extended replication, A=53, n=5, 10 trials", Box::new(|| replication_checks(5, 10, 7))));
    }

    let mut failed = Vec::new();
    for (id, title, run) in &criteria {
        let checks = run();
        let passed = checks.iter().all(|c| c.ok);
        println!("[{}] {id} {title}", if passed { "PASS" } else { "FAIL" });
        for c in &checks {
            println!("         {} {}", if c.ok { "ok  " } else { "MISS" }, c.detail);
        }
        if !passed {
            failed.push(*id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria failed: {}", failed.len(), criteria.len(), failed.join(", "));
        std::process::exit(1);
    }
}
