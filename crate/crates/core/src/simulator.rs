//! Random typing: candidate generation, prefix trials and experiments.
//!
//! A prefix trial types fresh candidates of a fixed length, each character
//! drawn uniformly from the alphabet, until one equals the target prefix.
//! Nothing carries over between candidates. An experiment runs one trial per
//! (iteration, prefix length) cell, each on its own ChaCha8 stream so the
//! attempt counts depend only on the seed and never on scheduling.

use std::time::Instant;

use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Alphabet, MeasurementTable, TargetText, TrialRecord};

pub const DEFAULT_ITERATIONS: usize = 10;
pub const DEFAULT_MAX_PREFIX: usize = 5;
pub const DEFAULT_ATTEMPT_BUDGET: u64 = 10_000_000_000;
pub const DEFAULT_SEED: u64 = 42;

/// A deterministic random stream identified by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    /// The stream owned by one experiment cell. `iteration` is 1-based.
    pub fn for_trial(seed: u64, iteration: usize, prefix_length: usize) -> Self {
        Self::new(seed, trial_stream_id(iteration, prefix_length))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

pub fn trial_stream_id(iteration: usize, prefix_length: usize) -> u64 {
    ((iteration as u64) << 32) | (prefix_length as u64 & 0xFFFF_FFFF)
}

fn symbol_distribution(alphabet: &Alphabet) -> Uniform<u32> {
    Uniform::new(0, alphabet.size() as u32).expect("alphabets are nonempty")
}

/// Types `count` candidates of `wanted.len()` symbols and returns how many
/// of them equal `wanted`. Every symbol of every candidate is drawn.
#[inline]
fn type_candidates(rng: &mut ChaCha8Rng, symbols: &Uniform<u32>, wanted: &[u32], count: u64) -> u64 {
    let mut hits = 0;
    for _ in 0..count {
        let mut matched = true;
        for &want in wanted {
            matched &= symbols.sample(rng) == want;
        }
        hits += matched as u64;
    }
    hits
}

/// Draws `length` symbols uniformly and independently from `alphabet`.
pub fn generate_candidate(alphabet: &Alphabet, length: usize, rng: &mut RngStream) -> String {
    let symbols = symbol_distribution(alphabet);
    (0..length)
        .map(|_| alphabet.symbol(symbols.sample(&mut rng.rng) as usize))
        .collect()
}

/// How a prefix trial ended. Both variants carry the full record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrialOutcome {
    Matched(TrialRecord),
    /// The budget ran out first; `attempts` equals the budget.
    BudgetExceeded(TrialRecord),
}

impl TrialOutcome {
    pub fn record(&self) -> &TrialRecord {
        match self {
            TrialOutcome::Matched(record) | TrialOutcome::BudgetExceeded(record) => record,
        }
    }

    pub fn into_record(self) -> TrialRecord {
        *self.record()
    }

    pub fn is_matched(&self) -> bool {
        matches!(self, TrialOutcome::Matched(_))
    }
}

/// Types candidates of `prefix_length` characters until one equals the
/// target's prefix of that length.
pub fn run_prefix_trial(
    target: &TargetText,
    prefix_length: usize,
    alphabet: &Alphabet,
    rng: &mut RngStream,
    budget: Option<u64>,
) -> Result<TrialOutcome> {
    if prefix_length == 0 {
        return Err(Error::InvalidConfig("prefix length must be at least 1".into()));
    }
    if budget == Some(0) {
        return Err(Error::InvalidConfig("attempt budget must be at least 1".into()));
    }
    target.check_prefix(prefix_length, alphabet)?;
    let wanted: Vec<u32> = target.chars()[..prefix_length]
        .iter()
        .map(|&ch| alphabet.index_of(ch).expect("checked above") as u32)
        .collect();
    let symbols = symbol_distribution(alphabet);
    let limit = budget.unwrap_or(u64::MAX);

    let start = Instant::now();
    let mut attempts = 0u64;
    let mut matched = false;
    while attempts < limit {
        attempts += 1;
        if type_candidates(&mut rng.rng, &symbols, &wanted, 1) == 1 {
            matched = true;
            break;
        }
    }
    let record = TrialRecord {
        prefix_length,
        attempts,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        seed: rng.seed,
        stream_id: rng.stream_id,
        budget_exceeded: !matched,
    };
    Ok(if matched {
        TrialOutcome::Matched(record)
    } else {
        TrialOutcome::BudgetExceeded(record)
    })
}

/// Everything needed to reproduce an experiment.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub target: TargetText,
    pub alphabet: Alphabet,
    pub max_prefix_length: usize,
    pub iterations: usize,
    pub seed: u64,
    pub attempt_budget: Option<u64>,
    pub worker_count: usize,
}

impl ExperimentConfig {
    /// Ten iterations over prefixes 1..=5 (capped at the target length).
    pub fn new(target: TargetText, alphabet: Alphabet) -> Self {
        let max_prefix_length = DEFAULT_MAX_PREFIX.min(target.len());
        ExperimentConfig {
            target,
            alphabet,
            max_prefix_length,
            iterations: DEFAULT_ITERATIONS,
            seed: DEFAULT_SEED,
            attempt_budget: Some(DEFAULT_ATTEMPT_BUDGET),
            worker_count: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    /// Adds any character of the simulated prefix that the alphabet lacks.
    pub fn extend_alphabet_to_target(&mut self) {
        let prefix = self
            .target
            .prefix(self.max_prefix_length.min(self.target.len()))
            .expect("bounded by target length");
        self.alphabet = self.alphabet.extended_with(&prefix);
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        if self.worker_count == 0 {
            return Err(Error::InvalidConfig("worker count must be at least 1".into()));
        }
        if self.max_prefix_length == 0 {
            return Err(Error::InvalidConfig("max prefix length must be at least 1".into()));
        }
        if self.attempt_budget == Some(0) {
            return Err(Error::InvalidConfig("attempt budget must be at least 1".into()));
        }
        self.target.check_prefix(self.max_prefix_length, &self.alphabet)
    }
}

/// Runs every (iteration, prefix length) cell, fanning out over
/// `worker_count` threads. Cells whose budget runs out stay in the table
/// with `budget_exceeded` set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<MeasurementTable> {
    config.validate()?;
    let prefix_lengths: Vec<usize> = (1..=config.max_prefix_length).collect();
    let cells: Vec<(usize, usize)> = (1..=config.iterations)
        .flat_map(|iteration| prefix_lengths.iter().map(move |&len| (iteration, len)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start workers: {e}")))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(iteration, len)| {
                let mut rng = RngStream::for_trial(config.seed, iteration, len);
                run_prefix_trial(&config.target, len, &config.alphabet, &mut rng, config.attempt_budget)
                    .map(TrialOutcome::into_record)
            })
            .collect::<Result<_>>()
    })?;

    let trials = records
        .chunks(prefix_lengths.len())
        .map(<[TrialRecord]>::to_vec)
        .collect();
    MeasurementTable::from_trials(prefix_lengths, trials)
}

/// Candidates typed and the wall-clock time it took.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Throughput {
    pub candidates: u64,
    pub elapsed_seconds: f64,
}

impl Throughput {
    /// Candidates per second.
    pub fn rate(&self) -> f64 {
        self.candidates as f64 / self.elapsed_seconds.max(f64::MIN_POSITIVE)
    }
}

const THROUGHPUT_BATCH: u64 = 4096;
const THROUGHPUT_SEED: u64 = 0x6d6f_6e6b_6579;

fn throughput_setup(alphabet: &Alphabet, length: usize) -> Result<(ChaCha8Rng, Uniform<u32>, Vec<u32>)> {
    if length == 0 {
        return Err(Error::InvalidConfig("candidate length must be at least 1".into()));
    }
    Ok((
        ChaCha8Rng::seed_from_u64(THROUGHPUT_SEED),
        symbol_distribution(alphabet),
        vec![0; length],
    ))
}

/// Types and compares candidates of `length` symbols for about
/// `duration_seconds` and reports the rate achieved.
pub fn measure_throughput(alphabet: &Alphabet, length: usize, duration_seconds: f64) -> Result<Throughput> {
    if !(duration_seconds > 0.0 && duration_seconds.is_finite()) {
        return Err(Error::InvalidConstant {
            name: "duration_seconds",
            value: duration_seconds,
        });
    }
    let (mut rng, symbols, wanted) = throughput_setup(alphabet, length)?;
    let start = Instant::now();
    let mut candidates = 0u64;
    loop {
        std::hint::black_box(type_candidates(&mut rng, &symbols, &wanted, THROUGHPUT_BATCH));
        candidates += THROUGHPUT_BATCH;
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed >= duration_seconds {
            return Ok(Throughput {
                candidates,
                elapsed_seconds: elapsed,
            });
        }
    }
}

/// Times a fixed workload of exactly `candidates` candidates.
pub fn measure_throughput_fixed(alphabet: &Alphabet, length: usize, candidates: u64) -> Result<Throughput> {
    if candidates == 0 {
        return Err(Error::InvalidConfig("workload must be at least one candidate".into()));
    }
    let (mut rng, symbols, wanted) = throughput_setup(alphabet, length)?;
    let start = Instant::now();
    std::hint::black_box(type_candidates(&mut rng, &symbols, &wanted, candidates));
    Ok(Throughput {
        candidates,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}
