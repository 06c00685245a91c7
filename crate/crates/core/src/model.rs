//! Shared domain types: alphabets, targets, trial measurements and projections.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decimal::ScaledDecimal;
use crate::error::{Error, Result};

/// The 52 ASCII letters, lowercase first.
pub const ASCII_LETTERS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// The phrase every projection extrapolates towards by default.
pub const HAMLET_PHRASE: &str = "To be, or not to be, that is the Question";

/// Named alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphabetPreset {
    /// 52 letters plus the space character (A = 53), what the reference
    /// typing loop draws from.
    #[serde(rename = "letters+space")]
    LettersSpace,
    /// The 52 letters alone (A = 52), the size used by the closed-form
    /// probabilities.
    Letters,
}

impl AlphabetPreset {
    pub fn name(self) -> &'static str {
        match self {
            AlphabetPreset::LettersSpace => "letters+space",
            AlphabetPreset::Letters => "letters",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "letters+space" => Some(AlphabetPreset::LettersSpace),
            "letters" => Some(AlphabetPreset::Letters),
            _ => None,
        }
    }
}

/// An ordered set of distinct symbols that candidates are drawn from.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, usize>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &ch) in symbols.iter().enumerate() {
            if index.insert(ch, i).is_some() {
                return Err(Error::DuplicateSymbol(ch));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn preset(preset: AlphabetPreset) -> Self {
        let symbols = match preset {
            AlphabetPreset::LettersSpace => format!("{ASCII_LETTERS} "),
            AlphabetPreset::Letters => ASCII_LETTERS.to_string(),
        };
        Alphabet::new(symbols.chars()).expect("preset alphabets are valid")
    }

    pub fn letters_and_space() -> Self {
        Self::preset(AlphabetPreset::LettersSpace)
    }

    pub fn letters() -> Self {
        Self::preset(AlphabetPreset::Letters)
    }

    /// Resolves a preset name, or treats the argument as an explicit list of
    /// symbols.
    pub fn parse(spec: &str) -> Result<Self> {
        match AlphabetPreset::from_name(spec) {
            Some(preset) => Ok(Self::preset(preset)),
            None => Alphabet::new(spec.chars()),
        }
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn contains(&self, ch: char) -> bool {
        self.index.contains_key(&ch)
    }

    pub fn index_of(&self, ch: char) -> Option<usize> {
        self.index.get(&ch).copied()
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    /// Appends every character of `text` that is not yet a member, in order
    /// of first appearance.
    pub fn extended_with(&self, text: &str) -> Self {
        let mut symbols = self.symbols.clone();
        for ch in text.chars() {
            if !symbols.contains(&ch) {
                symbols.push(ch);
            }
        }
        Alphabet::new(symbols).expect("extension keeps symbols distinct")
    }

    pub fn as_string(&self) -> String {
        self.symbols.iter().collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("symbols", &self.as_string())
            .field("size", &self.size())
            .finish()
    }
}

/// The text a typing experiment tries to reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetText {
    text: String,
    chars: Vec<char>,
}

impl TargetText {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() {
            return Err(Error::EmptyTarget);
        }
        let chars = text.chars().collect();
        Ok(TargetText { text, chars })
    }

    pub fn hamlet_phrase() -> Self {
        TargetText::new(HAMLET_PHRASE).expect("phrase is nonempty")
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Length in characters, not bytes.
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    /// The first `length` characters.
    pub fn prefix(&self, length: usize) -> Result<String> {
        if length > self.len() {
            return Err(Error::PrefixTooLong {
                requested: length,
                available: self.len(),
            });
        }
        Ok(self.chars[..length].iter().collect())
    }

    /// Checks the first `length` characters against `alphabet`, reporting the
    /// first character that can never be typed.
    pub fn check_prefix(&self, length: usize, alphabet: &Alphabet) -> Result<()> {
        if length > self.len() {
            return Err(Error::PrefixTooLong {
                requested: length,
                available: self.len(),
            });
        }
        match self.chars[..length]
            .iter()
            .enumerate()
            .find(|(_, ch)| !alphabet.contains(**ch))
        {
            Some((position, &ch)) => Err(Error::OutOfAlphabet { ch, position }),
            None => Ok(()),
        }
    }

    /// Whether every character of the whole text is a member of `alphabet`.
    pub fn is_valid_for(&self, alphabet: &Alphabet) -> bool {
        self.chars.iter().all(|&ch| alphabet.contains(ch))
    }
}

/// One prefix trial: how many candidates it took and how long.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub prefix_length: usize,
    /// Candidates generated, the successful one included.
    pub attempts: u64,
    pub elapsed_seconds: f64,
    pub seed: u64,
    pub stream_id: u64,
    /// The attempt budget ran out before a match; `attempts` is a lower
    /// bound.
    pub budget_exceeded: bool,
}

/// Trials indexed by (iteration, prefix length) plus per-column means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementTable {
    pub prefix_lengths: Vec<usize>,
    /// `trials[iteration][column]`.
    pub trials: Vec<Vec<TrialRecord>>,
    pub attempts_averages: Vec<f64>,
    pub time_averages: Vec<f64>,
}

impl MeasurementTable {
    /// Builds the table and computes column means.
    pub fn from_trials(prefix_lengths: Vec<usize>, trials: Vec<Vec<TrialRecord>>) -> Result<Self> {
        if trials.is_empty() {
            return Err(Error::Data("measurement table needs at least one iteration".into()));
        }
        if prefix_lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Data("prefix lengths must be strictly increasing".into()));
        }
        for row in &trials {
            if row.len() != prefix_lengths.len() {
                return Err(Error::Data(format!(
                    "row has {} cells, expected {}",
                    row.len(),
                    prefix_lengths.len()
                )));
            }
        }
        let mut table = MeasurementTable {
            prefix_lengths,
            trials,
            attempts_averages: Vec::new(),
            time_averages: Vec::new(),
        };
        table.recompute_averages();
        Ok(table)
    }

    fn recompute_averages(&mut self) {
        let rows = self.trials.len() as f64;
        let columns = self.prefix_lengths.len();
        self.attempts_averages = (0..columns)
            .map(|c| self.trials.iter().map(|r| r[c].attempts as f64).sum::<f64>() / rows)
            .collect();
        self.time_averages = (0..columns)
            .map(|c| self.trials.iter().map(|r| r[c].elapsed_seconds).sum::<f64>() / rows)
            .collect();
    }

    pub fn iterations(&self) -> usize {
        self.trials.len()
    }

    /// Zeroes every wall-clock value so the table depends only on the seed.
    pub fn without_timing(mut self) -> Self {
        for cell in self.trials.iter_mut().flatten() {
            cell.elapsed_seconds = 0.0;
        }
        self.recompute_averages();
        self
    }

    /// `(iteration, prefix_length)` of every cell whose budget ran out.
    pub fn budget_exceeded_cells(&self) -> Vec<(usize, usize)> {
        self.trials
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .filter(|cell| cell.budget_exceeded)
                    .map(move |cell| (i + 1, cell.prefix_length))
            })
            .collect()
    }

    pub fn attempts_column(&self, column: usize) -> Vec<u64> {
        self.trials.iter().map(|row| row[column].attempts).collect()
    }
}

/// Measured base series and the growth factors estimated from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthModel {
    pub attempts_base: Vec<f64>,
    pub times_base: Vec<f64>,
    pub attempts_growth_factor: f64,
    pub time_growth_factor: f64,
}

/// Whether a projection row was measured or extrapolated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Measured,
    Extrapolated,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::Measured => "measured",
            Region::Extrapolated => "extrapolated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionRow {
    pub prefix_len: usize,
    pub text_part: String,
    pub attempts: ScaledDecimal,
    pub seconds: ScaledDecimal,
    pub hours: ScaledDecimal,
    pub region: Region,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectionTable {
    pub rows: Vec<ProjectionRow>,
}

impl ProjectionTable {
    pub fn last(&self) -> Option<&ProjectionRow> {
        self.rows.last()
    }

    /// Row for the prefix of `length` characters (1-based).
    pub fn row(&self, length: usize) -> Option<&ProjectionRow> {
        length.checked_sub(1).and_then(|i| self.rows.get(i))
    }
}
