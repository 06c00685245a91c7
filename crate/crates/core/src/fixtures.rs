//! Bundled reference data.
//!
//! The files under `data/` are transcribed from the published study this
//! toolkit reproduces:
//!
//! * `table02_attempts.csv`: attempts for 'T'..'To be' over ten tests.
//! * `table03_seconds.csv`: the matching wall-clock seconds.
//! * `table04_averages.csv`: the averages used as projection input.
//! * `table06_projection.csv`: the published projection to 25 characters,
//!   three significant figures.
//! * `hamlet_folio1_soliloquy.txt`: the First Folio (1623) soliloquy,
//!   spelling kept as printed, no trailing newline.

use crate::decimal::ScaledDecimal;
use crate::error::{Error, Result};
use crate::model::GrowthModel;

pub const TABLE02_CSV: &str = include_str!("../data/table02_attempts.csv");
pub const TABLE03_CSV: &str = include_str!("../data/table03_seconds.csv");
pub const TABLE04_CSV: &str = include_str!("../data/table04_averages.csv");
pub const TABLE06_CSV: &str = include_str!("../data/table06_projection.csv");
pub const HAMLET_SOLILOQUY: &str = include_str!("../data/hamlet_folio1_soliloquy.txt");

/// Mean attempts for prefixes of length 1..=5.
pub const TABLE04_ATTEMPTS: [f64; 5] = [60.0, 3101.0, 159174.0, 8096722.0, 345380940.0];
/// Mean seconds for prefixes of length 1..=5.
pub const TABLE04_SECONDS: [f64; 5] = [0.0001, 0.0060, 0.3600, 22.3550, 1097.5000];

/// Stated length of the bundled soliloquy, in characters.
pub const REFERENCE_CORPUS_LENGTH: usize = 1520;

/// Published headline figures for the full 41 character phrase.
pub mod headline {
    pub const ATTEMPTS: &str = "2.68e69";
    pub const SECONDS: &str = "2.95e66";
    pub const HOURS: &str = "8.18e62";
    /// Not reproducible from the seconds figure with any standard year
    /// length; reported next to the computed value.
    pub const YEARS: &str = "9.32e55";
    pub const UNIVERSE_AGE_RATIO: &str = "6.75e45";
    pub const LINE_PROBABILITY: &str = "4.404e-71";
    pub const SOLILOQUY_PROBABILITY: &str = "4.730e-2609";
}

pub fn table04_growth_model() -> GrowthModel {
    GrowthModel::estimate(TABLE04_ATTEMPTS.to_vec(), TABLE04_SECONDS.to_vec()).expect("bundled data is valid")
}

/// One row of the published projection table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub prefix_len: usize,
    pub attempts: ScaledDecimal,
    pub seconds: ScaledDecimal,
    pub hours: ScaledDecimal,
}

pub fn table06_rows() -> Result<Vec<PublishedRow>> {
    let mut reader = csv::Reader::from_reader(TABLE06_CSV.as_bytes());
    reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| Error::Data(e.to_string()))?;
            let field = |i: usize| record.get(i).ok_or_else(|| Error::Data("short row".into()));
            Ok(PublishedRow {
                prefix_len: field(0)?.parse().map_err(|_| Error::Data("bad prefix_len".into()))?,
                attempts: field(1)?.parse()?,
                seconds: field(2)?.parse()?,
                hours: field(3)?.parse()?,
            })
        })
        .collect()
}

/// The ten-test attempt matrix (rows = tests, columns = prefix lengths 1..=5).
pub fn table02_attempts() -> Result<Vec<Vec<u64>>> {
    parse_matrix(TABLE02_CSV, |s| s.parse::<u64>().ok())
}

/// The ten-test seconds matrix.
pub fn table03_seconds() -> Result<Vec<Vec<f64>>> {
    parse_matrix(TABLE03_CSV, |s| s.parse::<f64>().ok())
}

fn parse_matrix<T>(text: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Vec<Vec<T>>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Data(e.to_string()))?;
        if record.get(0) == Some("average") {
            continue;
        }
        rows.push(
            record
                .iter()
                .skip(1)
                .map(|cell| parse(cell).ok_or_else(|| Error::Data(format!("bad cell {cell:?}"))))
                .collect::<Result<_>>()?,
        );
    }
    Ok(rows)
}
