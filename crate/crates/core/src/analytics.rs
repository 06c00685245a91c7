//! Closed-form probabilities and the growth-factor extrapolation.
//!
//! The extrapolation takes a short measured series (mean attempts or seconds
//! for prefixes of length 1..k), averages the ratios between neighbours, and
//! multiplies forward one prefix length at a time:
//!
//! ```text
//! g = (1 / (k - 1)) * sum_{i=2..k} v[i] / v[i-1]
//! v[n] = v[n-1] * g          for n > k
//! ```
//!
//! Growth factors stay in `f64` (the measured series spans about 1e-4..1e9).
//! Projected values are [`ScaledDecimal`] throughout, since a 41 character
//! target lands near 1e69 attempts.

use serde::{Deserialize, Serialize};

use crate::decimal::ScaledDecimal;
use crate::error::{Error, Result};
use crate::model::{GrowthModel, ProjectionRow, ProjectionTable, Region, TargetText};

/// Julian year, in seconds.
pub const JULIAN_YEAR_SECONDS: f64 = 31_557_600.0;
/// Age of the universe, in years.
pub const UNIVERSE_AGE_YEARS: f64 = 1.38e10;
pub const SECONDS_PER_HOUR: u64 = 3600;

fn check_positive_counts(alphabet_size: u64, n: u64) -> Result<()> {
    if alphabet_size == 0 {
        return Err(Error::InvalidConstant { name: "alphabet_size", value: 0.0 });
    }
    if n == 0 {
        return Err(Error::InvalidConstant { name: "length", value: 0.0 });
    }
    Ok(())
}

/// Probability `(1/A)^n` that a single uniformly typed candidate of `n`
/// symbols equals a fixed target.
pub fn success_probability(alphabet_size: u64, n: u64) -> Result<ScaledDecimal> {
    check_positive_counts(alphabet_size, n)?;
    ScaledDecimal::int_pow(alphabet_size, n).recip()
}

/// Mean number of candidates until the first match, `A^n`.
pub fn expected_attempts(alphabet_size: u64, n: u64) -> Result<ScaledDecimal> {
    check_positive_counts(alphabet_size, n)?;
    Ok(ScaledDecimal::int_pow(alphabet_size, n))
}

/// Mean of the consecutive ratios `values[i] / values[i - 1]`.
pub fn growth_factor(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::TooFewValues(values.len()));
    }
    if let Some((index, &value)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
    {
        return Err(Error::NonPositive { index, value });
    }
    let ratios: f64 = values.windows(2).map(|w| w[1] / w[0]).sum();
    Ok(ratios / (values.len() - 1) as f64)
}

/// Echoes `base`, then keeps multiplying the last value by `factor` until the
/// series has `total_length` entries.
pub fn project_series(base: &[f64], factor: f64, total_length: usize) -> Result<Vec<ScaledDecimal>> {
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::InvalidConstant { name: "growth factor", value: factor });
    }
    if base.is_empty() {
        if total_length == 0 {
            return Ok(Vec::new());
        }
        return Err(Error::TooFewValues(0));
    }
    if total_length < base.len() {
        return Err(Error::InvalidConfig(format!(
            "projection length {total_length} is shorter than the {} measured values",
            base.len()
        )));
    }
    let step = ScaledDecimal::from_f64(factor)?;
    let mut series = base
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            ScaledDecimal::from_f64(value).map_err(|_| Error::NonPositive { index, value })
        })
        .collect::<Result<Vec<_>>>()?;
    while series.len() < total_length {
        let next = *series.last().expect("base is nonempty") * step;
        series.push(next);
    }
    Ok(series)
}

impl GrowthModel {
    /// Estimates both growth factors from equally long base series.
    pub fn estimate(attempts_base: Vec<f64>, times_base: Vec<f64>) -> Result<Self> {
        if attempts_base.len() != times_base.len() {
            return Err(Error::Data(format!(
                "attempts has {} values but times has {}",
                attempts_base.len(),
                times_base.len()
            )));
        }
        let attempts_growth_factor = growth_factor(&attempts_base)?;
        let time_growth_factor = growth_factor(&times_base)?;
        Ok(GrowthModel {
            attempts_base,
            times_base,
            attempts_growth_factor,
            time_growth_factor,
        })
    }
}

/// One row per prefix of `target`: measured rows echo the base series, the
/// rest follow the geometric progression.
pub fn build_projection_table(model: &GrowthModel, target: &TargetText) -> Result<ProjectionTable> {
    let measured = model.attempts_base.len();
    if measured == 0 || measured != model.times_base.len() {
        return Err(Error::Data("base series must be nonempty and of equal length".into()));
    }
    if target.len() < measured {
        return Err(Error::PrefixTooLong {
            requested: measured,
            available: target.len(),
        });
    }
    let attempts = project_series(&model.attempts_base, model.attempts_growth_factor, target.len())?;
    let seconds = project_series(&model.times_base, model.time_growth_factor, target.len())?;
    let hour = ScaledDecimal::from(SECONDS_PER_HOUR);

    let rows = attempts
        .into_iter()
        .zip(seconds)
        .enumerate()
        .map(|(i, (attempts, seconds))| {
            let prefix_len = i + 1;
            Ok(ProjectionRow {
                prefix_len,
                text_part: target.prefix(prefix_len)?,
                attempts,
                seconds,
                hours: seconds.checked_div(hour)?,
                region: if prefix_len <= measured {
                    Region::Measured
                } else {
                    Region::Extrapolated
                },
            })
        })
        .collect::<Result<_>>()?;
    Ok(ProjectionTable { rows })
}

/// Base time series derived from attempt means and measured typing rates,
/// `seconds[i] = attempts[i] / rate[i]`.
pub fn times_from_throughput(attempts: &[f64], rates: &[f64]) -> Result<Vec<f64>> {
    if attempts.len() != rates.len() {
        return Err(Error::Data("one rate is needed per attempts value".into()));
    }
    attempts
        .iter()
        .zip(rates)
        .map(|(&a, &rate)| {
            if rate > 0.0 && rate.is_finite() {
                Ok(a / rate)
            } else {
                Err(Error::InvalidConstant { name: "throughput", value: rate })
            }
        })
        .collect()
}

/// Seconds needed to type `attempts` candidates at `rate` candidates/second.
pub fn seconds_at_rate(attempts: ScaledDecimal, rate: f64) -> Result<ScaledDecimal> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::InvalidConstant { name: "throughput", value: rate });
    }
    attempts.checked_div(ScaledDecimal::from_f64(rate)?)
}

/// A duration expressed in several units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeBreakdown {
    pub seconds: ScaledDecimal,
    pub hours: ScaledDecimal,
    pub years: ScaledDecimal,
    /// `years / universe_age_years`.
    pub universe_age_ratio: ScaledDecimal,
    pub year_length_seconds: f64,
    pub universe_age_years: f64,
}

pub fn convert_time(seconds: ScaledDecimal, year_length_seconds: f64, universe_age_years: f64) -> Result<TimeBreakdown> {
    let positive = |name, value: f64| {
        if value > 0.0 && value.is_finite() {
            ScaledDecimal::from_f64(value)
        } else {
            Err(Error::InvalidConstant { name, value })
        }
    };
    let year = positive("year_length_seconds", year_length_seconds)?;
    let universe = positive("universe_age_years", universe_age_years)?;
    let years = seconds.checked_div(year)?;
    Ok(TimeBreakdown {
        seconds,
        hours: seconds.checked_div(ScaledDecimal::from(SECONDS_PER_HOUR))?,
        years,
        universe_age_ratio: years.checked_div(universe)?,
        year_length_seconds,
        universe_age_years,
    })
}
