//! Gold-standard construction from crowd-sourced annotations.
//!
//! Identical paraphrases are merged, frequencies counted, and each distinct
//! frequency becomes a rank tier: the most frequent paraphrases get rank 0,
//! and paraphrases given by a single annotator always share the last rank.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::text::{inflection_variants, tokenize, RawParaphrase, TokenSeq};
use crate::{Error, Result};

/// A two-word noun compound, e.g. modifier `air` + head `filter`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Compound {
    modifier: String,
    head: String,
}

impl Compound {
    /// Both words are normalized like paraphrase tokens and must each come
    /// out as exactly one token.
    pub fn new(modifier: &str, head: &str) -> Result<Self> {
        Ok(Compound { modifier: single_word(modifier)?, head: single_word(head)? })
    }

    pub fn modifier(&self) -> &str {
        &self.modifier
    }

    pub fn head(&self) -> &str {
        &self.head
    }
}

fn single_word(word: &str) -> Result<String> {
    match tokenize(word) {
        Ok(seq) if seq.len() == 1 => Ok(seq.tokens()[0].clone()),
        _ => Err(Error::InvalidCompound(word.to_string())),
    }
}

impl fmt::Display for Compound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.modifier, self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub compound: Compound,
    pub paraphrase: RawParaphrase,
    pub annotator: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvalidReason {
    MissingHead,
    MissingModifier,
    NoLinkingPhrase,
    WrongOrder,
    Empty,
}

impl InvalidReason {
    pub fn as_str(self) -> &'static str {
        match self {
            InvalidReason::MissingHead => "missing-head",
            InvalidReason::MissingModifier => "missing-modifier",
            InvalidReason::NoLinkingPhrase => "no-linking-phrase",
            InvalidReason::WrongOrder => "wrong-order",
            InvalidReason::Empty => "empty",
        }
    }
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Ok(())` for a well-formed paraphrase, otherwise the first failed rule.
pub type ValidationVerdict = core::result::Result<(), InvalidReason>;

/// Checks the paraphrase shape `[..] HEAD linking-phrase MODIFIER [..]`.
///
/// Both nouns may appear in any inflectional form; the linking phrase must
/// be non-empty. Determiners count as tokens here.
pub fn validate_paraphrase(compound: &Compound, paraphrase: &str) -> ValidationVerdict {
    let Ok(seq) = tokenize(paraphrase) else {
        return Err(InvalidReason::Empty);
    };
    let heads = positions(&seq, &inflection_variants(&compound.head));
    let modifiers = positions(&seq, &inflection_variants(&compound.modifier));
    if heads.is_empty() {
        return Err(InvalidReason::MissingHead);
    }
    if modifiers.is_empty() {
        return Err(InvalidReason::MissingModifier);
    }
    let first_head = heads[0];
    if modifiers.iter().any(|&m| m > first_head + 1) {
        Ok(())
    } else if modifiers.iter().any(|&m| m == first_head + 1) {
        Err(InvalidReason::NoLinkingPhrase)
    } else {
        Err(InvalidReason::WrongOrder)
    }
}

fn positions(seq: &TokenSeq, forms: &BTreeSet<String>) -> Vec<usize> {
    seq.iter().enumerate().filter(|(_, t)| forms.contains(*t)).map(|(i, _)| i).collect()
}

/// One merged gold paraphrase. Tokens keep their determiners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldEntry {
    pub tokens: TokenSeq,
    pub rank: u32,
    pub frequency: u32,
}

/// Ranked reference paraphrases for one compound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldList {
    compound: Compound,
    entries: Vec<GoldEntry>,
}

impl GoldList {
    /// Checks the ranking rules: ranks run 0..=k without gaps, each rank has
    /// one frequency, and frequency strictly decreases with rank.
    pub fn new(compound: Compound, entries: Vec<GoldEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyGoldList(compound));
        }
        let mut tiers: BTreeMap<u32, u32> = BTreeMap::new();
        for e in &entries {
            if e.frequency == 0 {
                return Err(Error::ZeroFrequency(compound));
            }
            if e.tokens.is_empty() {
                return Err(Error::InconsistentGold { compound, reason: "empty paraphrase" });
            }
            match tiers.insert(e.rank, e.frequency) {
                Some(f) if f != e.frequency => {
                    return Err(Error::InconsistentGold { compound, reason: "one rank holds two frequencies" });
                }
                _ => {}
            }
        }
        if tiers.keys().copied().ne(0..tiers.len() as u32) {
            return Err(Error::InconsistentGold { compound, reason: "ranks are not consecutive from 0" });
        }
        if tiers.values().zip(tiers.values().skip(1)).any(|(hi, lo)| lo >= hi) {
            return Err(Error::InconsistentGold { compound, reason: "frequency does not decrease with rank" });
        }
        Ok(GoldList { compound, entries })
    }

    /// For derived lists (e.g. determiner-stripped copies) that may break
    /// the non-empty token rule.
    pub(crate) fn new_unchecked(compound: Compound, entries: Vec<GoldEntry>) -> Self {
        GoldList { compound, entries }
    }

    pub fn compound(&self) -> &Compound {
        &self.compound
    }

    pub fn entries(&self) -> &[GoldEntry] {
        &self.entries
    }

    pub fn max_rank(&self) -> u32 {
        self.entries.iter().map(|e| e.rank).max().unwrap_or(0)
    }

    /// Number of annotations behind the list, duplicates included.
    pub fn total_frequency(&self) -> u64 {
        self.entries.iter().map(|e| u64::from(e.frequency)).sum()
    }
}

/// Output of [`compile_gold`]: the lists plus the records that were dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledGold {
    pub lists: Vec<GoldList>,
    /// Ill-formed records, with their index in the input.
    pub rejected: Vec<(usize, AnnotationRecord, InvalidReason)>,
}

/// Validates, merges and ranks annotation records, one list per compound.
///
/// Ill-formed paraphrases are filtered out and reported in
/// [`CompiledGold::rejected`]. Lists come out ordered by (modifier, head);
/// entries by (rank, paraphrase).
pub fn compile_gold(records: &[AnnotationRecord]) -> Result<CompiledGold> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let mut counts: BTreeMap<&Compound, BTreeMap<TokenSeq, u32>> = BTreeMap::new();
    let mut rejected = Vec::new();
    for (idx, rec) in records.iter().enumerate() {
        let merged = counts.entry(&rec.compound).or_default();
        if let Err(reason) = validate_paraphrase(&rec.compound, rec.paraphrase.as_str()) {
            rejected.push((idx, rec.clone(), reason));
            continue;
        }
        let Ok(tokens) = rec.paraphrase.tokenize() else { continue };
        *merged.entry(tokens).or_insert(0) += 1;
    }

    let mut lists = Vec::with_capacity(counts.len());
    for (compound, merged) in counts {
        if merged.is_empty() {
            return Err(Error::NoValidParaphrases(compound.clone()));
        }
        lists.push(GoldList::new(compound.clone(), rank_by_frequency(merged))?);
    }
    Ok(CompiledGold { lists, rejected })
}

fn rank_by_frequency(merged: BTreeMap<TokenSeq, u32>) -> Vec<GoldEntry> {
    let tiers: BTreeSet<u32> = merged.values().copied().collect();
    // highest frequency first
    let tiers: Vec<u32> = tiers.into_iter().rev().collect();
    let mut entries: Vec<GoldEntry> = merged
        .into_iter()
        .map(|(tokens, frequency)| {
            let rank = tiers.iter().position(|&f| f == frequency).unwrap_or(0) as u32;
            GoldEntry { tokens, rank, frequency }
        })
        .collect();
    entries.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.tokens.joined().cmp(&b.tokens.joined())));
    entries
}

/// Min / max / average of a per-compound count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    pub min: u64,
    pub max: u64,
    pub avg: f64,
}

impl Spread {
    fn of(counts: &[u64]) -> Spread {
        let min = counts.iter().copied().min().unwrap_or(0);
        let max = counts.iter().copied().max().unwrap_or(0);
        let avg = if counts.is_empty() { 0.0 } else { counts.iter().sum::<u64>() as f64 / counts.len() as f64 };
        Spread { min, max, avg }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetStats {
    pub compounds: usize,
    /// Paraphrases with duplicates.
    pub total: u64,
    pub unique: u64,
    pub per_compound: Spread,
    pub unique_per_compound: Spread,
}

/// Statistics where the raw paraphrase counts come from `raw` (records of
/// compounds absent from `gold` are ignored).
pub fn dataset_stats(gold: &[GoldList], raw: &[AnnotationRecord]) -> DatasetStats {
    let mut per: BTreeMap<&Compound, u64> = gold.iter().map(|g| (g.compound(), 0)).collect();
    for rec in raw {
        if let Some(n) = per.get_mut(&rec.compound) {
            *n += 1;
        }
    }
    let totals: Vec<u64> = gold.iter().map(|g| per[g.compound()]).collect();
    build_stats(gold, totals)
}

/// Statistics from a compiled gold file alone, counting duplicates through
/// each entry's frequency.
pub fn gold_stats(gold: &[GoldList]) -> DatasetStats {
    let totals: Vec<u64> = gold.iter().map(GoldList::total_frequency).collect();
    build_stats(gold, totals)
}

fn build_stats(gold: &[GoldList], totals: Vec<u64>) -> DatasetStats {
    let uniques: Vec<u64> = gold.iter().map(|g| g.entries().len() as u64).collect();
    DatasetStats {
        compounds: gold.len(),
        total: totals.iter().sum(),
        unique: uniques.iter().sum(),
        per_compound: Spread::of(&totals),
        unique_per_compound: Spread::of(&uniques),
    }
}
