//! Rank-weighted scoring of system paraphrase lists against gold lists.
//!
//! A test paraphrase is paired with the gold paraphrase that maximizes
//! `normalized_overlap * R / (R + rank)`. In isomorphic mode each gold entry
//! can be claimed once, first come first served in submission order, and the
//! total is divided by the weight of the whole gold list. In non-isomorphic
//! mode every test paraphrase takes its best gold entry independently and the
//! compound score is their mean.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::gold::{Compound, GoldEntry, GoldList};
use crate::matching::normalized_overlap;
use crate::text::{tokenize, DeterminerSet, RawParaphrase, TokenSeq};
use crate::{Error, Result};

pub const DEFAULT_RANK_R: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Iso,
    NonIso,
    Both,
}

impl Mode {
    pub fn iso(self) -> bool {
        matches!(self, Mode::Iso | Mode::Both)
    }

    pub fn noniso(self) -> bool {
        matches!(self, Mode::NonIso | Mode::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoringConfig {
    rank_r: f64,
    pub determiners: DeterminerSet,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        ScoringConfig { rank_r: DEFAULT_RANK_R, determiners: DeterminerSet::default() }
    }
}

impl ScoringConfig {
    pub fn new(rank_r: f64, determiners: DeterminerSet) -> Result<Self> {
        if !(rank_r.is_finite() && rank_r > 0.0) {
            return Err(Error::InvalidRankParameter(rank_r));
        }
        Ok(ScoringConfig { rank_r, determiners })
    }

    pub fn rank_r(&self) -> f64 {
        self.rank_r
    }
}

/// `R / (R + rank)`: 1 at rank 0, decaying towards 0.
pub fn rank_multiplier(rank: u32, r: f64) -> f64 {
    r / (r + f64::from(rank))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldMatch {
    /// Index into [`GoldList::entries`].
    pub entry: usize,
    pub overlap: f64,
    /// Overlap times the entry's rank multiplier.
    pub weighted: f64,
}

/// Best-scoring gold entry outside `excluded`, or `None` if nothing overlaps.
///
/// Ties go to the lower rank, then to the earlier entry. Both `test` and the
/// gold tokens are expected to be determiner-free already.
pub fn best_gold_match(test: &TokenSeq, gold: &GoldList, excluded: &BTreeSet<usize>, r: f64) -> Option<GoldMatch> {
    let mut best: Option<(GoldMatch, u32)> = None;
    for (idx, entry) in gold.entries().iter().enumerate() {
        if excluded.contains(&idx) {
            continue;
        }
        let overlap = normalized_overlap(test, &entry.tokens);
        let weighted = overlap * rank_multiplier(entry.rank, r);
        if weighted <= 0.0 {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, rank)) => weighted > b.weighted || (weighted == b.weighted && entry.rank < *rank),
        };
        if better {
            best = Some((GoldMatch { entry: idx, overlap, weighted }, entry.rank));
        }
    }
    best.map(|(m, _)| m)
}

/// A compound score with the gold entry chosen for each test paraphrase.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundScore {
    pub score: f64,
    pub matches: Vec<Option<GoldMatch>>,
}

/// Many-to-one matching: mean of each test paraphrase's best weighted score.
pub fn noniso_matching(tests: &[TokenSeq], gold: &GoldList, r: f64) -> CompoundScore {
    let none = BTreeSet::new();
    let matches: Vec<Option<GoldMatch>> = tests.iter().map(|t| best_gold_match(t, gold, &none, r)).collect();
    let score = if tests.is_empty() {
        0.0
    } else {
        // summing in sorted order makes the mean exactly order-independent
        let mut terms: Vec<f64> = matches.iter().map(|m| m.map_or(0.0, |m| m.weighted)).collect();
        terms.sort_by(f64::total_cmp);
        terms.iter().sum::<f64>() / tests.len() as f64
    };
    CompoundScore { score: score.clamp(0.0, 1.0), matches }
}

/// One-to-one greedy matching in submission order, normalized by the summed
/// rank multipliers of every gold entry.
pub fn iso_matching(tests: &[TokenSeq], gold: &GoldList, r: f64) -> CompoundScore {
    let mut consumed = BTreeSet::new();
    let mut matches = Vec::with_capacity(tests.len());
    let mut total = 0.0;
    for t in tests {
        let m = best_gold_match(t, gold, &consumed, r);
        if let Some(m) = m {
            consumed.insert(m.entry);
            total += m.weighted;
        }
        matches.push(m);
    }
    let denom = iso_denominator(gold, r);
    CompoundScore { score: (total / denom).clamp(0.0, 1.0), matches }
}

pub fn iso_denominator(gold: &GoldList, r: f64) -> f64 {
    gold.entries().iter().map(|e| rank_multiplier(e.rank, r)).sum()
}

pub fn score_compound_noniso(tests: &[TokenSeq], gold: &GoldList, r: f64) -> f64 {
    noniso_matching(tests, gold, r).score
}

pub fn score_compound_iso(tests: &[TokenSeq], gold: &GoldList, r: f64) -> f64 {
    iso_matching(tests, gold, r).score
}

/// Ranked paraphrase lists produced by one system, one list per compound.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Submission {
    items: Vec<(Compound, Vec<RawParaphrase>)>,
}

impl Submission {
    pub fn new(items: Vec<(Compound, Vec<RawParaphrase>)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (c, _) in &items {
            if !seen.insert(c) {
                return Err(Error::DuplicateCompound(c.clone()));
            }
        }
        Ok(Submission { items })
    }

    pub fn items(&self) -> &[(Compound, Vec<RawParaphrase>)] {
        &self.items
    }

    pub fn get(&self, compound: &Compound) -> Option<&[RawParaphrase]> {
        self.items.iter().find(|(c, _)| c == compound).map(|(_, p)| p.as_slice())
    }
}

/// Non-fatal issues found while scoring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// Gold compound with no paraphrases in the submission; scored 0.
    MissingCompound(Compound),
    /// Submitted compound that is not in the gold data; ignored.
    UnknownCompound(Compound),
    /// Paraphrase with nothing left after determiner removal; scored 0.
    EmptyParaphrase { compound: Compound, position: usize },
    /// Repeat of an earlier paraphrase for the same compound; dropped.
    DuplicateParaphrase { compound: Compound, position: usize },
    /// Gold paraphrase with nothing left after determiner removal.
    EmptyGoldParaphrase { compound: Compound, entry: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::MissingCompound(c) => write!(f, "no paraphrases submitted for '{c}', scored 0"),
            Warning::UnknownCompound(c) => write!(f, "compound '{c}' is not in the gold data, ignored"),
            Warning::EmptyParaphrase { compound, position } => {
                write!(f, "paraphrase {position} for '{compound}' is empty after determiner removal, scored 0")
            }
            Warning::DuplicateParaphrase { compound, position } => {
                write!(f, "paraphrase {position} for '{compound}' repeats an earlier one, dropped")
            }
            Warning::EmptyGoldParaphrase { compound, entry } => {
                write!(f, "gold paraphrase {entry} for '{compound}' is empty after determiner removal")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParaphraseDiagnostic {
    /// 1-based position in the submitted list.
    pub position: usize,
    /// Tokens as scored, determiners removed.
    pub tokens: TokenSeq,
    pub iso: Option<GoldMatch>,
    pub noniso: Option<GoldMatch>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompoundReport {
    pub compound: Compound,
    pub submitted: bool,
    pub iso: Option<f64>,
    pub noniso: Option<f64>,
    pub paraphrases: Vec<ParaphraseDiagnostic>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub mode: Mode,
    pub rank_r: f64,
    /// In gold-data order.
    pub compounds: Vec<CompoundReport>,
    /// Mean over all gold compounds; `None` if the mode was not requested.
    pub iso: Option<f64>,
    pub noniso: Option<f64>,
    pub warnings: Vec<Warning>,
}

/// Scores a whole submission; compounds missing from it count as 0.
pub fn score_system(
    submission: &Submission,
    gold: &[GoldList],
    mode: Mode,
    config: &ScoringConfig,
) -> Result<ScoreReport> {
    if gold.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let r = config.rank_r();
    let mut warnings = Vec::new();
    let gold_compounds: BTreeSet<&Compound> = gold.iter().map(GoldList::compound).collect();
    for (c, _) in submission.items() {
        if !gold_compounds.contains(c) {
            warnings.push(Warning::UnknownCompound(c.clone()));
        }
    }

    let mut compounds = Vec::with_capacity(gold.len());
    for list in gold {
        let compound = list.compound().clone();
        let stripped = strip_gold(list, &config.determiners, &mut warnings);
        let Some(raw) = submission.get(&compound) else {
            warnings.push(Warning::MissingCompound(compound.clone()));
            compounds.push(CompoundReport {
                compound,
                submitted: false,
                iso: mode.iso().then_some(0.0),
                noniso: mode.noniso().then_some(0.0),
                paraphrases: Vec::new(),
            });
            continue;
        };
        let (positions, tests) = prepare_tests(&compound, raw, &config.determiners, &mut warnings);
        let iso = mode.iso().then(|| iso_matching(&tests, &stripped, r));
        let noniso = mode.noniso().then(|| noniso_matching(&tests, &stripped, r));
        let paraphrases = positions
            .into_iter()
            .zip(tests)
            .enumerate()
            .map(|(i, (position, tokens))| ParaphraseDiagnostic {
                position,
                tokens,
                iso: iso.as_ref().and_then(|s| s.matches[i]),
                noniso: noniso.as_ref().and_then(|s| s.matches[i]),
            })
            .collect();
        compounds.push(CompoundReport {
            compound,
            submitted: true,
            iso: iso.map(|s| s.score),
            noniso: noniso.map(|s| s.score),
            paraphrases,
        });
    }

    let n = compounds.len() as f64;
    let iso = mode.iso().then(|| compounds.iter().filter_map(|c| c.iso).sum::<f64>() / n);
    let noniso = mode.noniso().then(|| compounds.iter().filter_map(|c| c.noniso).sum::<f64>() / n);
    Ok(ScoreReport { mode, rank_r: r, compounds, iso, noniso, warnings })
}

fn strip_gold(list: &GoldList, dets: &DeterminerSet, warnings: &mut Vec<Warning>) -> GoldList {
    let entries = list
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let tokens = dets.strip(&e.tokens);
            if tokens.is_empty() {
                warnings.push(Warning::EmptyGoldParaphrase { compound: list.compound().clone(), entry: i });
            }
            GoldEntry { tokens, rank: e.rank, frequency: e.frequency }
        })
        .collect();
    GoldList::new_unchecked(list.compound().clone(), entries)
}

fn prepare_tests(
    compound: &Compound,
    raw: &[RawParaphrase],
    dets: &DeterminerSet,
    warnings: &mut Vec<Warning>,
) -> (Vec<usize>, Vec<TokenSeq>) {
    let mut seen: BTreeMap<TokenSeq, usize> = BTreeMap::new();
    let mut positions = Vec::new();
    let mut tests = Vec::new();
    for (i, p) in raw.iter().enumerate() {
        let position = i + 1;
        let tokens = tokenize(p.as_str()).map(|t| dets.strip(&t)).unwrap_or_default();
        if seen.contains_key(&tokens) {
            warnings.push(Warning::DuplicateParaphrase { compound: compound.clone(), position });
            continue;
        }
        if tokens.is_empty() {
            warnings.push(Warning::EmptyParaphrase { compound: compound.clone(), position });
        }
        seen.insert(tokens.clone(), position);
        positions.push(position);
        tests.push(tokens);
    }
    (positions, tests)
}

impl ScoreReport {
    /// Per-compound `(iso, noniso)` pairs, for callers that only need numbers.
    pub fn compound_scores(&self) -> Vec<(Option<f64>, Option<f64>)> {
        self.compounds.iter().map(|c| (c.iso, c.noniso)).collect()
    }
}
