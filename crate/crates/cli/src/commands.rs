use std::fs;
use std::io::Write;

use anyhow::{bail, ensure, Context, Result};
use monkeysim::analytics::{build_projection_table, convert_time, expected_attempts, success_probability, TimeBreakdown};
use monkeysim::census::{corpus_census, CensusReport};
use monkeysim::fixtures;
use monkeysim::simulator::{run_experiment, ExperimentConfig};
use monkeysim::tables::{
    projection_json, read_measurement_averages, write_figure_series, write_log10_series, write_measurements_csv,
    write_projection_csv, NumberStyle,
};
use monkeysim::{Alphabet, GrowthModel, MeasurementTable, ProjectionTable, TargetText};
use serde_json::json;

use crate::args::{CensusArgs, ProbArgs, ProjectArgs, SimulateArgs, SimulationFlags, TimeConstants};
use crate::manifest::{Bundle, RunManifest};

pub const MEASUREMENTS_CSV: &str = "measurements.csv";
pub const PROJECTION_CSV: &str = "projection.csv";
pub const PROJECTION_JSON: &str = "projection.json";
pub const ATTEMPTS_SERIES: &str = "attempts_log10.csv";
pub const SECONDS_SERIES: &str = "seconds_log10.csv";
/// Rows in the tail figure.
const TAIL_ROWS: usize = 5;

pub(crate) fn experiment_config(target: &str, flags: &SimulationFlags) -> Result<ExperimentConfig> {
    let target = TargetText::new(target).context("invalid --target")?;
    let alphabet = Alphabet::parse(&flags.alphabet).context("invalid --alphabet")?;
    let mut config = ExperimentConfig::new(target, alphabet);
    if let Some(max_prefix) = flags.max_prefix {
        config.max_prefix_length = max_prefix;
    }
    config.iterations = flags.iterations;
    config.seed = flags.seed;
    config.attempt_budget = Some(flags.budget);
    if let Some(workers) = flags.workers {
        config.worker_count = workers;
    }
    if flags.extend_alphabet {
        config.max_prefix_length = config.max_prefix_length.min(config.target.len());
        config.extend_alphabet_to_target();
    }
    config.validate().with_context(|| {
        format!(
            "cannot simulate {:?} with alphabet {:?}",
            config.target.prefix(config.max_prefix_length.min(config.target.len())).unwrap_or_default(),
            flags.alphabet
        )
    })?;
    Ok(config)
}

pub(crate) fn simulation_json(config: &ExperimentConfig, flags: &SimulationFlags) -> serde_json::Value {
    json!({
        "target": config.target.as_str(),
        "alphabet": flags.alphabet,
        "alphabet_symbols": config.alphabet.as_string(),
        "alphabet_size": config.alphabet.size(),
        "extend_alphabet": flags.extend_alphabet,
        "max_prefix": config.max_prefix_length,
        "iterations": config.iterations,
        "seed": config.seed,
        "budget": config.attempt_budget,
        "workers": config.worker_count,
        "no_timing": flags.no_timing,
    })
}

pub(crate) fn run_simulation(config: &ExperimentConfig, no_timing: bool) -> Result<MeasurementTable> {
    let table = run_experiment(config)?;
    Ok(if no_timing { table.without_timing() } else { table })
}

pub(crate) fn print_averages(out: &mut dyn Write, config: &ExperimentConfig, table: &MeasurementTable) -> Result<()> {
    writeln!(out, "{:<8}{:<12}{:>18}{:>16}", "prefix", "text", "mean_attempts", "mean_seconds")?;
    for ((len, attempts), seconds) in table.prefix_lengths.iter().zip(&table.attempts_averages).zip(&table.time_averages) {
        let text = format!("{:?}", config.target.prefix(*len)?);
        writeln!(out, "{len:<8}{text:<12}{attempts:>18}{seconds:>16.3}")?;
    }
    Ok(())
}

pub(crate) fn warn_budget(table: &MeasurementTable) {
    let flagged = table.budget_exceeded_cells();
    if !flagged.is_empty() {
        eprintln!(
            "warning: attempt budget exhausted in {} trial(s) (test, prefix_len): {:?}; their attempts are lower bounds",
            flagged.len(),
            flagged
        );
    }
}

pub fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let config = experiment_config(&args.target, &args.simulation)?;
    let table = run_simulation(&config, args.simulation.no_timing)?;

    let mut bundle = Bundle::create(&args.out)?;
    bundle.write_with(MEASUREMENTS_CSV, |w| write_measurements_csv(&table, w))?;
    let mut manifest = RunManifest::new("simulate", simulation_json(&config, &args.simulation));
    manifest.budget_exceeded_cells = table.budget_exceeded_cells();
    bundle.finish(manifest)?;

    print_averages(out, &config, &table)?;
    warn_budget(&table);
    Ok(())
}

/// Base series for `project`, with a description of where it came from.
fn project_bases(args: &ProjectArgs) -> Result<(Vec<f64>, Vec<f64>, String)> {
    if let Some(path) = &args.measurements {
        let file = fs::File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
        let averages = read_measurement_averages(file).with_context(|| format!("cannot parse {}", path.display()))?;
        let expected: Vec<usize> = (1..=averages.prefix_lengths.len()).collect();
        ensure!(
            averages.prefix_lengths == expected,
            "{}: average rows must cover prefix lengths 1..={} without gaps, found {:?}",
            path.display(),
            expected.len(),
            averages.prefix_lengths
        );
        if let Some(len) = averages.seconds.iter().position(|&s| s <= 0.0) {
            bail!(
                "{}: mean elapsed time for prefix length {} is zero (was it written with --no-timing?); \
                 pass --attempts and --times instead",
                path.display(),
                len + 1
            );
        }
        Ok((averages.attempts, averages.seconds, path.display().to_string()))
    } else if !args.attempts.is_empty() {
        ensure!(
            args.attempts.len() == args.times.len(),
            "--attempts has {} values but --times has {}",
            args.attempts.len(),
            args.times.len()
        );
        Ok((args.attempts.clone(), args.times.clone(), "command line".to_string()))
    } else {
        bail!("provide --measurements <csv> or --attempts <list> --times <list>")
    }
}

pub(crate) fn growth_model(attempts: Vec<f64>, times: Vec<f64>) -> Result<GrowthModel> {
    ensure!(attempts.len() >= 2, "need at least 2 base points to estimate growth, got {}", attempts.len());
    Ok(GrowthModel::estimate(attempts, times)?)
}

pub(crate) fn number_style(paper_style: bool) -> NumberStyle {
    if paper_style {
        NumberStyle::Comma
    } else {
        NumberStyle::Plain
    }
}

/// Projection CSV and JSON, the two log10 series and the three figure files.
pub(crate) fn write_projection_outputs(bundle: &mut Bundle, table: &ProjectionTable, style: NumberStyle) -> Result<()> {
    bundle.write_with(PROJECTION_CSV, |w| write_projection_csv(table, style, w))?;
    bundle.write(PROJECTION_JSON, projection_json(table)? + "\n")?;
    bundle.write_with(ATTEMPTS_SERIES, |w| {
        write_log10_series("log10_attempts", table.rows.iter().map(|r| (r.prefix_len, r.attempts)), w)
    })?;
    bundle.write_with(SECONDS_SERIES, |w| {
        write_log10_series("log10_seconds", table.rows.iter().map(|r| (r.prefix_len, r.seconds)), w)
    })?;
    let measured: Vec<_> = table.rows.iter().filter(|r| r.region == monkeysim::Region::Measured).collect();
    bundle.write_with("figure01_measured.csv", |w| write_figure_series(measured.iter().copied(), w))?;
    let tail_start = table.rows.len().saturating_sub(TAIL_ROWS);
    bundle.write_with("figure02_tail.csv", |w| write_figure_series(&table.rows[tail_start..], w))?;
    bundle.write_with("figure03_full.csv", |w| write_figure_series(&table.rows, w))?;
    Ok(())
}

pub(crate) fn time_breakdown(table: &ProjectionTable, constants: &TimeConstants) -> Result<TimeBreakdown> {
    let last = table.last().context("projection is empty")?;
    Ok(convert_time(last.seconds, constants.year_seconds, constants.universe_age_years)?)
}

pub(crate) fn print_projection(
    out: &mut dyn Write,
    model: &GrowthModel,
    table: &ProjectionTable,
    breakdown: &TimeBreakdown,
) -> Result<()> {
    let last = table.last().context("projection is empty")?;
    writeln!(out, "attempts growth factor: {:.6}", model.attempts_growth_factor)?;
    writeln!(out, "time growth factor:     {:.6}", model.time_growth_factor)?;
    writeln!(out, "final row ({} characters, {:?}):", last.prefix_len, last.text_part)?;
    writeln!(out, "  attempts:            {}", last.attempts)?;
    writeln!(out, "  seconds:             {}", breakdown.seconds)?;
    writeln!(out, "  hours:               {}", breakdown.hours)?;
    writeln!(out, "  years:               {}  (year = {} s)", breakdown.years, breakdown.year_length_seconds)?;
    writeln!(
        out,
        "  x age of universe:   {}  (age = {} years)",
        breakdown.universe_age_ratio, breakdown.universe_age_years
    )?;
    Ok(())
}

pub fn project(args: &ProjectArgs, out: &mut dyn Write) -> Result<()> {
    let (attempts, times, source) = project_bases(args)?;
    let target = TargetText::new(args.target.as_str()).context("invalid --target")?;
    let model = growth_model(attempts, times)?;
    let table = build_projection_table(&model, &target)?;
    let breakdown = time_breakdown(&table, &args.constants)?;

    let mut bundle = Bundle::create(&args.out)?;
    write_projection_outputs(&mut bundle, &table, number_style(args.paper_style))?;
    let config = json!({
        "source": source,
        "attempts_base": model.attempts_base,
        "times_base": model.times_base,
        "attempts_growth_factor": model.attempts_growth_factor,
        "time_growth_factor": model.time_growth_factor,
        "target": target.as_str(),
        "paper_style": args.paper_style,
        "year_seconds": args.constants.year_seconds,
        "universe_age_years": args.constants.universe_age_years,
    });
    bundle.finish(RunManifest::new("project", config))?;

    print_projection(out, &model, &table, &breakdown)
}

pub fn prob(args: &ProbArgs, out: &mut dyn Write) -> Result<()> {
    ensure!(args.alphabet_size >= 1, "--alphabet-size must be positive, got {}", args.alphabet_size);
    ensure!(args.length >= 1, "--length must be positive, got {}", args.length);
    let p = success_probability(args.alphabet_size, args.length)?;
    let e = expected_attempts(args.alphabet_size, args.length)?;
    writeln!(out, "success_probability {:.*}", args.digits, p)?;
    writeln!(out, "expected_attempts {:.*}", args.digits, e)?;
    Ok(())
}

pub(crate) fn render_census(report: &CensusReport) -> String {
    let mut text = format!("{:<22}{:>8}  equals {}\n", "normalization", "count", report.reference_length);
    for entry in &report.counts {
        text += &format!(
            "{:<22}{:>8}  {}\n",
            entry.normalization.name(),
            entry.count,
            if entry.matches_reference { "yes" } else { "no" }
        );
    }
    text
}

pub fn census(args: &CensusArgs, out: &mut dyn Write) -> Result<()> {
    let text = match &args.source.file {
        Some(path) => fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?,
        None => fixtures::HAMLET_SOLILOQUY.to_string(),
    };
    out.write_all(render_census(&corpus_census(&text)).as_bytes())?;
    Ok(())
}
