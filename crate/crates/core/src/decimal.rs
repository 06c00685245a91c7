//! Base-10 numbers with an exact integer exponent.
//!
//! The quantities this crate deals with run from roughly `10^-2609` (the chance
//! of typing a whole soliloquy) up to `10^69` (attempts needed for one line),
//! far outside what `f64` can hold. [`ScaledDecimal`] keeps a 36 digit integer
//! mantissa next to an `i64` exponent so neither end saturates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of significant decimal digits carried by every nonzero value.
pub const WORKING_DIGITS: u32 = 36;

const MANTISSA_LOW: u128 = 10u128.pow(WORKING_DIGITS - 1);
const MANTISSA_HIGH: u128 = 10u128.pow(WORKING_DIGITS);

/// Significant digits used when printing without an explicit precision.
pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    /// `digits * 10^(exponent - 35)` with `digits` in `[10^35, 10^36)`.
    Normal { digits: u128, exponent: i64 },
}

/// A nonnegative number written as `mantissa x 10^exponent`, `mantissa` in
/// `[1, 10)`.
///
/// Arithmetic truncates to [`WORKING_DIGITS`] significant digits. Zero is its
/// own variant and never carries a mantissa.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledDecimal(Repr);

impl ScaledDecimal {
    pub const ZERO: ScaledDecimal = ScaledDecimal(Repr::Zero);
    pub const ONE: ScaledDecimal = ScaledDecimal(Repr::Normal {
        digits: MANTISSA_LOW,
        exponent: 0,
    });

    /// Builds `value * 10^exp10`, truncating `value` to the working precision.
    fn from_scaled_integer(value: BigUint, exp10: i64) -> Self {
        if value == BigUint::ZERO {
            return Self::ZERO;
        }
        let width = value.to_str_radix(10).len() as i64;
        let shift = width - WORKING_DIGITS as i64;
        let digits = match shift.cmp(&0) {
            Ordering::Greater => value / BigUint::from(10u32).pow(shift as u32),
            Ordering::Less => value * BigUint::from(10u32).pow((-shift) as u32),
            Ordering::Equal => value,
        };
        let digits = u128::try_from(digits).expect("normalized mantissa fits in u128");
        debug_assert!((MANTISSA_LOW..MANTISSA_HIGH).contains(&digits));
        ScaledDecimal(Repr::Normal {
            digits,
            exponent: exp10 + width - 1,
        })
    }

    /// Converts a finite, nonnegative `f64` using its shortest round-trip
    /// decimal form, so `0.0001` becomes exactly `1e-4`.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(value));
        }
        if value < 0.0 {
            return Err(Error::Negative(value.to_string()));
        }
        if value == 0.0 {
            return Ok(Self::ZERO);
        }
        format!("{value:e}").parse()
    }

    /// Returns `10^log10_value`.
    pub fn from_log10(log10_value: f64) -> Result<Self> {
        if !log10_value.is_finite() {
            return Err(Error::NonFinite(log10_value));
        }
        if log10_value.abs() >= 9.0e15 {
            return Err(Error::OutOfRange(log10_value));
        }
        let mut whole = log10_value.floor();
        let mut mantissa = 10f64.powf(log10_value - whole);
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            whole += 1.0;
        } else if mantissa < 1.0 {
            mantissa *= 10.0;
            whole -= 1.0;
        }
        let scaled = Self::from_f64(mantissa)?;
        Ok(scaled.shift_exponent(whole as i64))
    }

    /// Exact `base^exp` up to mantissa truncation, by square-and-multiply.
    pub fn int_pow(base: u64, exp: u64) -> Self {
        let mut result = Self::ONE;
        let mut square = Self::from(base);
        let mut remaining = exp;
        while remaining > 0 {
            if remaining & 1 == 1 {
                result = result * square;
            }
            remaining >>= 1;
            if remaining > 0 {
                square = square * square;
            }
        }
        result
    }

    /// Multiplies by `10^delta`.
    pub fn shift_exponent(self, delta: i64) -> Self {
        match self.0 {
            Repr::Zero => self,
            Repr::Normal { digits, exponent } => ScaledDecimal(Repr::Normal {
                digits,
                exponent: exponent + delta,
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    /// Mantissa in `[1, 10)`, or `0.0` for zero.
    pub fn mantissa(&self) -> f64 {
        match self.0 {
            Repr::Zero => 0.0,
            Repr::Normal { digits, .. } => digits as f64 / MANTISSA_LOW as f64,
        }
    }

    /// All working digits of the mantissa as an integer in `[10^35, 10^36)`.
    pub fn mantissa_digits(&self) -> u128 {
        match self.0 {
            Repr::Zero => 0,
            Repr::Normal { digits, .. } => digits,
        }
    }

    pub fn exponent(&self) -> i64 {
        match self.0 {
            Repr::Zero => 0,
            Repr::Normal { exponent, .. } => exponent,
        }
    }

    /// Base-10 logarithm; `-inf` for zero.
    pub fn log10(&self) -> f64 {
        match self.0 {
            Repr::Zero => f64::NEG_INFINITY,
            Repr::Normal { digits, exponent } => {
                ((digits as f64).log10() - (WORKING_DIGITS - 1) as f64) + exponent as f64
            }
        }
    }

    /// Nearest `f64`; overflows to infinity and underflows to zero.
    pub fn to_f64(&self) -> f64 {
        match self.0 {
            Repr::Zero => 0.0,
            Repr::Normal { digits, exponent } => {
                format!("{digits}e{}", exponent - (WORKING_DIGITS as i64 - 1))
                    .parse()
                    .unwrap_or(f64::NAN)
            }
        }
    }

    /// `self / divisor`, truncated to the working precision.
    pub fn checked_div(self, divisor: Self) -> Result<Self> {
        let (d_digits, d_exp) = match divisor.0 {
            Repr::Zero => return Err(Error::DivisionByZero),
            Repr::Normal { digits, exponent } => (digits, exponent),
        };
        match self.0 {
            Repr::Zero => Ok(Self::ZERO),
            Repr::Normal { digits, exponent } => {
                let numerator =
                    BigUint::from(digits) * BigUint::from(10u32).pow(WORKING_DIGITS);
                let quotient = numerator / BigUint::from(d_digits);
                Ok(Self::from_scaled_integer(
                    quotient,
                    exponent - d_exp - WORKING_DIGITS as i64,
                ))
            }
        }
    }

    pub fn recip(self) -> Result<Self> {
        Self::ONE.checked_div(self)
    }

    /// `|self / reference - 1|`, the relative error against `reference`.
    pub fn relative_error(&self, reference: &Self) -> f64 {
        if reference.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let ratio = self.checked_div(*reference).expect("nonzero divisor");
        (ratio.to_f64() - 1.0).abs()
    }

    /// Rounds half-up to `significant` digits, returning the digit string and
    /// the (possibly carried) exponent.
    fn rounded(&self, significant: usize) -> (String, i64) {
        let significant = significant.clamp(1, WORKING_DIGITS as usize) as u32;
        match self.0 {
            Repr::Zero => ("0".repeat(significant as usize), 0),
            Repr::Normal { digits, exponent } => {
                let divisor = 10u128.pow(WORKING_DIGITS - significant);
                let mut kept = digits / divisor;
                if (digits % divisor) * 2 >= divisor {
                    kept += 1;
                }
                let mut exponent = exponent;
                if kept == 10u128.pow(significant) {
                    kept /= 10;
                    exponent += 1;
                }
                (kept.to_string(), exponent)
            }
        }
    }

    /// `d.ddd` mantissa with exactly `significant` digits and the exponent.
    fn split_mantissa(&self, significant: usize, decimal_mark: char) -> (String, i64) {
        let (digits, exponent) = self.rounded(significant);
        let mut mantissa = digits[..1].to_string();
        if digits.len() > 1 {
            mantissa.push(decimal_mark);
            mantissa.push_str(&digits[1..]);
        }
        (mantissa, exponent)
    }

    /// Fixed `significant`-digit form, e.g. `4.730e-2609`.
    pub fn to_sci_string(&self, significant: usize) -> String {
        let (mantissa, exponent) = self.split_mantissa(significant, '.');
        format!("{mantissa}e{exponent}")
    }

    /// Spreadsheet-style form with a comma decimal mark, e.g. `1,70E+10`.
    pub fn to_comma_string(&self, significant: usize) -> String {
        let (mantissa, exponent) = self.split_mantissa(significant, ',');
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{mantissa}E{sign}{:02}", exponent.unsigned_abs())
    }
}

/// Prints `<mantissa>e<exponent>` with the formatter precision read as the
/// number of significant digits (default 4). Trailing zeros are dropped but
/// one fractional digit is always kept: `4.404e-71`, `5.0e-1`.
impl fmt::Display for ScaledDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let significant = f.precision().unwrap_or(DEFAULT_SIGNIFICANT_DIGITS).max(2);
        let (mut mantissa, exponent) = self.split_mantissa(significant, '.');
        while mantissa.ends_with('0') && !mantissa.ends_with(".0") {
            mantissa.pop();
        }
        write!(f, "{mantissa}e{exponent}")
    }
}

impl fmt::Debug for ScaledDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScaledDecimal({})", self.to_sci_string(WORKING_DIGITS as usize))
    }
}

impl FromStr for ScaledDecimal {
    type Err = Error;

    /// Accepts plain or exponent decimal literals: `60`, `1097.5000`, `1e-4`,
    /// `4.404e-71`.
    fn from_str(input: &str) -> Result<Self> {
        let bad = || Error::Parse(input.to_string());
        let trimmed = input.trim();
        let unsigned = trimmed.strip_prefix('+').unwrap_or(trimmed);
        if unsigned.starts_with('-') {
            return Err(Error::Negative(input.to_string()));
        }
        let (mantissa, exp) = match unsigned.find(['e', 'E']) {
            Some(at) => (
                &unsigned[..at],
                unsigned[at + 1..].parse::<i64>().map_err(|_| bad())?,
            ),
            None => (unsigned, 0),
        };
        let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all_digits = format!("{whole}{frac}");
        let significant = all_digits.trim_start_matches('0');
        if significant.is_empty() {
            return Ok(Self::ZERO);
        }
        let value = BigUint::parse_bytes(significant.as_bytes(), 10).ok_or_else(bad)?;
        let exp10 = exp
            .checked_sub(frac.len() as i64)
            .ok_or_else(bad)?;
        Ok(Self::from_scaled_integer(value, exp10))
    }
}

impl From<u64> for ScaledDecimal {
    fn from(value: u64) -> Self {
        Self::from_scaled_integer(BigUint::from(value), 0)
    }
}

impl std::ops::Mul for ScaledDecimal {
    type Output = ScaledDecimal;

    fn mul(self, rhs: Self) -> Self {
        match (self.0, rhs.0) {
            (Repr::Normal { digits: a, exponent: ea }, Repr::Normal { digits: b, exponent: eb }) => {
                let product = BigUint::from(a) * BigUint::from(b);
                let unit = WORKING_DIGITS as i64 - 1;
                Self::from_scaled_integer(product, (ea - unit) + (eb - unit))
            }
            _ => Self::ZERO,
        }
    }
}

impl PartialOrd for ScaledDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScaledDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (Repr::Zero, Repr::Zero) => Ordering::Equal,
            (Repr::Zero, _) => Ordering::Less,
            (_, Repr::Zero) => Ordering::Greater,
            (Repr::Normal { digits: a, exponent: ea }, Repr::Normal { digits: b, exponent: eb }) => {
                ea.cmp(&eb).then(a.cmp(&b))
            }
        }
    }
}

impl Serialize for ScaledDecimal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ScaledDecimal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `10^log10_value`.
pub fn scaled_from_log10(log10_value: f64) -> Result<ScaledDecimal> {
    ScaledDecimal::from_log10(log10_value)
}

pub fn scaled_mul(a: ScaledDecimal, b: ScaledDecimal) -> ScaledDecimal {
    a * b
}

/// `base^exp` with an exact exponent.
pub fn scaled_int_pow(base: u64, exp: u64) -> ScaledDecimal {
    ScaledDecimal::int_pow(base, exp)
}
