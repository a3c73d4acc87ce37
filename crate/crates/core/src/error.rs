use alloc::string::String;
use core::fmt;

use crate::gold::Compound;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// No token survived tokenization.
    EmptyParaphrase,
    /// An overlap or self-score was requested for an empty token sequence.
    EmptySequence,
    /// N-grams of different lengths cannot be compared positionwise.
    LengthMismatch {
        gold: usize,
        test: usize,
    },
    InvalidCompound(String),
    NoRecords,
    NoValidParaphrases(Compound),
    EmptyGoldList(Compound),
    /// A gold list whose ranks or frequencies break the ranking rules.
    InconsistentGold {
        compound: Compound,
        reason: &'static str,
    },
    ZeroFrequency(Compound),
    EmptyDataset,
    EmptyTraining,
    DuplicateCompound(Compound),
    InvalidRankParameter(f64),
    ZeroTemplateCount,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyParaphrase => f.write_str("paraphrase has no tokens"),
            Error::EmptySequence => f.write_str("token sequence is empty"),
            Error::LengthMismatch { gold, test } => {
                write!(f, "n-gram length mismatch: gold has {gold} tokens, test has {test}")
            }
            Error::InvalidCompound(s) => write!(f, "invalid compound word {s:?}"),
            Error::NoRecords => f.write_str("no records"),
            Error::NoValidParaphrases(c) => write!(f, "compound '{c}' has no valid paraphrases"),
            Error::EmptyGoldList(c) => write!(f, "gold list for '{c}' is empty"),
            Error::InconsistentGold { compound, reason } => {
                write!(f, "gold list for '{compound}' is inconsistent: {reason}")
            }
            Error::ZeroFrequency(c) => write!(f, "gold entry for '{c}' has frequency 0"),
            Error::EmptyDataset => f.write_str("gold dataset is empty"),
            Error::EmptyTraining => f.write_str("training gold is empty"),
            Error::DuplicateCompound(c) => write!(f, "compound '{c}' appears more than once in submission"),
            Error::InvalidRankParameter(r) => write!(f, "rank parameter R must be positive and finite, got {r}"),
            Error::ZeroTemplateCount => f.write_str("template count k must be positive"),
        }
    }
}

impl core::error::Error for Error {}
