//! The `report` command: simulate (or load the published averages), project,
//! compute probabilities, count the corpus, and write a plain-text summary.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use monkeysim::analytics::{build_projection_table, success_probability, times_from_throughput, TimeBreakdown};
use monkeysim::census::{corpus_census, CensusReport, Normalization};
use monkeysim::fixtures::{self, headline};
use monkeysim::model::HAMLET_PHRASE;
use monkeysim::simulator::measure_throughput;
use monkeysim::tables::write_measurements_csv;
use monkeysim::{GrowthModel, ProjectionTable, ScaledDecimal, TargetText};
use serde_json::json;

use crate::args::ReportArgs;
use crate::commands::{
    experiment_config, growth_model, number_style, print_projection, render_census, run_simulation, simulation_json,
    time_breakdown, warn_budget, write_projection_outputs, MEASUREMENTS_CSV,
};
use crate::manifest::{Bundle, RunManifest};

pub const SUMMARY_TXT: &str = "summary.txt";
/// Alphabet size of the closed-form probabilities (letters only).
const FORMULA_ALPHABET: u64 = 52;

struct Inputs {
    model: GrowthModel,
    description: String,
    config: serde_json::Value,
    budget_exceeded_cells: Vec<(usize, usize)>,
    simulated_alphabet: Option<u64>,
}

fn published_inputs() -> Inputs {
    Inputs {
        model: fixtures::table04_growth_model(),
        description: "published averages for prefixes 1..=5".to_string(),
        config: json!({ "source": "bundled table04_averages.csv" }),
        budget_exceeded_cells: Vec::new(),
        simulated_alphabet: None,
    }
}

fn simulated_inputs(args: &ReportArgs, bundle: &mut Bundle, out: &mut dyn Write) -> Result<Inputs> {
    let config = experiment_config(&args.target, &args.simulation)?;
    let table = run_simulation(&config, args.simulation.no_timing)?;
    bundle.write_with(MEASUREMENTS_CSV, |w| write_measurements_csv(&table, w))?;
    crate::commands::print_averages(out, &config, &table)?;
    warn_budget(&table);

    // Per-trial wall clocks are too noisy for the smallest prefixes, so the
    // time series comes from attempts divided by the measured typing rate.
    let rates = table
        .prefix_lengths
        .iter()
        .map(|&len| Ok(measure_throughput(&config.alphabet, len, args.throughput_seconds)?.rate()))
        .collect::<Result<Vec<f64>>>()?;
    let times = times_from_throughput(&table.attempts_averages, &rates)?;
    let model = growth_model(table.attempts_averages.clone(), times)?;

    let mut sim = simulation_json(&config, &args.simulation);
    sim["throughput_seconds"] = json!(args.throughput_seconds);
    sim["measured_rates_per_second"] = json!(rates);
    Ok(Inputs {
        model,
        description: format!(
            "simulated means over {} iterations for prefixes 1..={}, seed {}",
            config.iterations, config.max_prefix_length, config.seed
        ),
        config: json!({ "source": "simulation", "simulation": sim }),
        budget_exceeded_cells: table.budget_exceeded_cells(),
        simulated_alphabet: Some(config.alphabet.size() as u64),
    })
}

fn summary(
    target: &TargetText,
    inputs: &Inputs,
    table: &ProjectionTable,
    breakdown: &TimeBreakdown,
    census: &CensusReport,
    compare_published: bool,
) -> Result<String> {
    let last = table.last().context("projection is empty")?;
    let mut s = String::new();
    writeln!(s, "Projection to {:?} ({} characters)", target.as_str(), target.len())?;
    writeln!(s, "  base: {}", inputs.description)?;
    writeln!(s, "  attempts growth factor: {:.6}", inputs.model.attempts_growth_factor)?;
    writeln!(s, "  time growth factor:     {:.6}", inputs.model.time_growth_factor)?;
    writeln!(s)?;

    let rows: [(&str, ScaledDecimal, &str); 5] = [
        ("attempts", last.attempts, headline::ATTEMPTS),
        ("seconds", breakdown.seconds, headline::SECONDS),
        ("hours", breakdown.hours, headline::HOURS),
        ("years", breakdown.years, headline::YEARS),
        ("x age of universe", breakdown.universe_age_ratio, headline::UNIVERSE_AGE_RATIO),
    ];
    if compare_published {
        writeln!(s, "  {:<20}{:>12}{:>12}", "full phrase", "computed", "published")?;
    } else {
        writeln!(s, "  {:<20}{:>12}", "full phrase", "computed")?;
    }
    for (label, value, published) in rows {
        let computed = format!("{value:.3}");
        if compare_published {
            writeln!(s, "  {label:<20}{computed:>12}{published:>12}")?;
        } else {
            writeln!(s, "  {label:<20}{computed:>12}")?;
        }
    }
    writeln!(
        s,
        "  year = {} s, universe age = {} years",
        breakdown.year_length_seconds, breakdown.universe_age_years
    )?;
    if compare_published {
        let published_seconds: ScaledDecimal = headline::SECONDS.parse()?;
        let published_years: ScaledDecimal = headline::YEARS.parse()?;
        let implied_year = published_seconds.checked_div(published_years)?;
        writeln!(
            s,
            "  note: the published years figure implies a year of {implied_year:.3} s, about 1/1000 of any \
             calendar year; the computed years and universe-age ratio use the year length above"
        )?;
    }
    writeln!(s)?;

    writeln!(s, "Success probability of one uniformly typed candidate")?;
    let corpus_len = census.count(Normalization::Raw) as u64;
    let mut cases = vec![(FORMULA_ALPHABET, target.len() as u64, "target")];
    if let Some(size) = inputs.simulated_alphabet.filter(|&a| a != FORMULA_ALPHABET) {
        cases.push((size, target.len() as u64, "target, simulated alphabet"));
    }
    if corpus_len > 0 {
        cases.push((FORMULA_ALPHABET, corpus_len, "corpus"));
    }
    for (a, n, what) in cases {
        let p = success_probability(a, n)?;
        let published = match (compare_published, a, n) {
            (true, 52, 41) => format!("  (published {})", headline::LINE_PROBABILITY),
            (true, 52, 1520) => format!("  (published {})", headline::SOLILOQUY_PROBABILITY),
            _ => String::new(),
        };
        writeln!(s, "  (1/{a})^{n:<6} {:<14}[{what}]{published}", p.to_string())?;
    }
    writeln!(s)?;
    writeln!(s, "Corpus census")?;
    for line in render_census(census).lines() {
        writeln!(s, "  {line}")?;
    }
    Ok(s)
}

pub fn report(args: &ReportArgs, out: &mut dyn Write) -> Result<()> {
    let target = TargetText::new(args.target.as_str()).context("invalid --target")?;
    let corpus = match &args.corpus {
        Some(path) => fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?,
        None => fixtures::HAMLET_SOLILOQUY.to_string(),
    };
    let mut bundle = Bundle::create(&args.out)?;

    let inputs = if args.use_paper_data {
        published_inputs()
    } else {
        simulated_inputs(args, &mut bundle, out)?
    };
    let table = build_projection_table(&inputs.model, &target)?;
    let breakdown = time_breakdown(&table, &args.constants)?;
    write_projection_outputs(&mut bundle, &table, number_style(args.paper_style))?;

    let census = corpus_census(&corpus);
    bundle.write("census.txt", render_census(&census))?;
    let compare_published = args.use_paper_data && target.as_str() == HAMLET_PHRASE;
    let text = summary(&target, &inputs, &table, &breakdown, &census, compare_published)?;
    bundle.write(SUMMARY_TXT, &text)?;

    let mut config = json!({
        "use_paper_data": args.use_paper_data,
        "target": target.as_str(),
        "paper_style": args.paper_style,
        "year_seconds": args.constants.year_seconds,
        "universe_age_years": args.constants.universe_age_years,
        "corpus": args.corpus.as_ref().map_or("bundled hamlet_folio1_soliloquy.txt".to_string(), |p| p.display().to_string()),
        "attempts_base": inputs.model.attempts_base,
        "times_base": inputs.model.times_base,
        "attempts_growth_factor": inputs.model.attempts_growth_factor,
        "time_growth_factor": inputs.model.time_growth_factor,
    });
    config["inputs"] = inputs.config.clone();
    let mut manifest = RunManifest::new("report", config);
    manifest.budget_exceeded_cells = inputs.budget_exceeded_cells.clone();
    bundle.finish(manifest)?;

    print_projection(out, &inputs.model, &table, &breakdown)?;
    Ok(())
}
