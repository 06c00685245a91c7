//! Character counts of a corpus under several normalization rules.

use serde::Serialize;

use crate::fixtures::REFERENCE_CORPUS_LENGTH;
use crate::model::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Every character as written.
    Raw,
    /// `\n` and `\r` removed.
    NewlinesExcluded,
    /// Whitespace runs replaced by one space, ends trimmed.
    WhitespaceCollapsed,
    /// Only ASCII letters and the space character.
    LettersAndSpace,
}

impl Normalization {
    pub const ALL: [Normalization; 4] = [
        Normalization::Raw,
        Normalization::NewlinesExcluded,
        Normalization::WhitespaceCollapsed,
        Normalization::LettersAndSpace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::NewlinesExcluded => "newlines-excluded",
            Normalization::WhitespaceCollapsed => "whitespace-collapsed",
            Normalization::LettersAndSpace => "letters-and-space",
        }
    }

    pub fn count(self, text: &str) -> usize {
        match self {
            Normalization::Raw => text.chars().count(),
            Normalization::NewlinesExcluded => text.chars().filter(|c| !matches!(c, '\n' | '\r')).count(),
            Normalization::WhitespaceCollapsed => {
                let words: Vec<usize> = text.split_whitespace().map(|w| w.chars().count()).collect();
                words.iter().sum::<usize>() + words.len().saturating_sub(1)
            }
            Normalization::LettersAndSpace => {
                let alphabet = Alphabet::letters_and_space();
                text.chars().filter(|&c| alphabet.contains(c)).count()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalizationCount {
    pub normalization: Normalization,
    pub count: usize,
    /// `count` equals the reference length of 1,520 characters.
    pub matches_reference: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub reference_length: usize,
    pub counts: Vec<NormalizationCount>,
}

impl CensusReport {
    pub fn count(&self, normalization: Normalization) -> usize {
        self.counts
            .iter()
            .find(|c| c.normalization == normalization)
            .map_or(0, |c| c.count)
    }

    pub fn matching(&self) -> impl Iterator<Item = Normalization> + '_ {
        self.counts.iter().filter(|c| c.matches_reference).map(|c| c.normalization)
    }
}

pub fn corpus_census(text: &str) -> CensusReport {
    let counts = Normalization::ALL
        .iter()
        .map(|&normalization| {
            let count = normalization.count(text);
            NormalizationCount {
                normalization,
                count,
                matches_reference: count == REFERENCE_CORPUS_LENGTH,
            }
        })
        .collect();
    CensusReport {
        reference_length: REFERENCE_CORPUS_LENGTH,
        counts,
    }
}
