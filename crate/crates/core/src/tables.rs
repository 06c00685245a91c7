//! CSV and JSON encodings of measurement and projection tables.
//!
//! All CSV output is UTF-8, comma separated, LF terminated, with dot decimal
//! numbers unless [`NumberStyle::Comma`] is requested for the numeric cells.

use std::io::{Read, Write};

use crate::decimal::ScaledDecimal;
use crate::error::{Error, Result};
use crate::model::{MeasurementTable, ProjectionRow, ProjectionTable};

pub const MEASUREMENT_HEADER: [&str; 5] = ["test", "prefix_len", "attempts", "elapsed_seconds", "seed"];
pub const PROJECTION_HEADER: [&str; 6] = ["prefix_len", "text_part", "attempts", "seconds", "hours", "region"];

/// How projection numbers are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberStyle {
    /// `<mantissa>e<exponent>`, four significant digits.
    #[default]
    Plain,
    /// Three significant digits, comma decimal mark, `E+NN` exponent, as in
    /// spreadsheet exports: `1,70E+10`.
    Comma,
}

impl NumberStyle {
    pub fn format(self, value: &ScaledDecimal) -> String {
        match self {
            NumberStyle::Plain => value.to_string(),
            NumberStyle::Comma => value.to_comma_string(3),
        }
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Data(e.to_string())
}

/// One row per trial (tests numbered from 1), then one `average` row per
/// prefix length.
pub fn write_measurements_csv<W: Write>(table: &MeasurementTable, out: W) -> Result<()> {
    let mut writer = csv_writer(out);
    writer.write_record(MEASUREMENT_HEADER).map_err(csv_err)?;
    let seed = table.trials.first().and_then(|r| r.first()).map_or(0, |c| c.seed);
    for (i, row) in table.trials.iter().enumerate() {
        for cell in row {
            writer
                .write_record([
                    (i + 1).to_string(),
                    cell.prefix_length.to_string(),
                    cell.attempts.to_string(),
                    cell.elapsed_seconds.to_string(),
                    cell.seed.to_string(),
                ])
                .map_err(csv_err)?;
        }
    }
    for ((len, attempts), seconds) in table
        .prefix_lengths
        .iter()
        .zip(&table.attempts_averages)
        .zip(&table.time_averages)
    {
        writer
            .write_record([
                "average".to_string(),
                len.to_string(),
                attempts.to_string(),
                seconds.to_string(),
                seed.to_string(),
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(csv_err)
}

/// The `average` rows of a measurement CSV, ordered by prefix length.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredAverages {
    pub prefix_lengths: Vec<usize>,
    pub attempts: Vec<f64>,
    pub seconds: Vec<f64>,
}

pub fn read_measurement_averages<R: Read>(input: R) -> Result<MeasuredAverages> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().collect::<Vec<_>>() != MEASUREMENT_HEADER {
        return Err(Error::Data(format!("unexpected measurement header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        if &record[0] != "average" {
            continue;
        }
        let number = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|_| Error::Data(format!("row {}: bad number {:?}", line + 2, &record[i])))
        };
        let len: usize = record[1]
            .parse()
            .map_err(|_| Error::Data(format!("row {}: bad prefix_len {:?}", line + 2, &record[1])))?;
        rows.push((len, number(2)?, number(3)?));
    }
    if rows.is_empty() {
        return Err(Error::Data("measurement file has no average rows".into()));
    }
    rows.sort_by_key(|r| r.0);
    Ok(MeasuredAverages {
        prefix_lengths: rows.iter().map(|r| r.0).collect(),
        attempts: rows.iter().map(|r| r.1).collect(),
        seconds: rows.iter().map(|r| r.2).collect(),
    })
}

pub fn write_projection_csv<W: Write>(table: &ProjectionTable, style: NumberStyle, out: W) -> Result<()> {
    let mut writer = csv_writer(out);
    writer.write_record(PROJECTION_HEADER).map_err(csv_err)?;
    for row in &table.rows {
        writer
            .write_record([
                row.prefix_len.to_string(),
                row.text_part.clone(),
                style.format(&row.attempts),
                style.format(&row.seconds),
                style.format(&row.hours),
                row.region.as_str().to_string(),
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(csv_err)
}

pub fn projection_json(table: &ProjectionTable) -> Result<String> {
    serde_json::to_string_pretty(table).map_err(csv_err)
}

/// `(prefix_len, log10(value))` pairs under a two-column header.
pub fn write_log10_series<W: Write>(
    value_column: &str,
    points: impl IntoIterator<Item = (usize, ScaledDecimal)>,
    out: W,
) -> Result<()> {
    let mut writer = csv_writer(out);
    writer.write_record(["prefix_len", value_column]).map_err(csv_err)?;
    for (len, value) in points {
        writer
            .write_record([len.to_string(), format!("{:.6}", value.log10())])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(csv_err)
}

/// Plot-ready rows: `prefix_len,text_part,log10_attempts,log10_seconds`.
pub fn write_figure_series<'a, W: Write>(rows: impl IntoIterator<Item = &'a ProjectionRow>, out: W) -> Result<()> {
    let mut writer = csv_writer(out);
    writer
        .write_record(["prefix_len", "text_part", "log10_attempts", "log10_seconds"])
        .map_err(csv_err)?;
    for row in rows {
        writer
            .write_record([
                row.prefix_len.to_string(),
                row.text_part.clone(),
                format!("{:.6}", row.attempts.log10()),
                format!("{:.6}", row.seconds.log10()),
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(csv_err)
}
