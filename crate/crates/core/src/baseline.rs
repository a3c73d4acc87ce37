//! Baseline paraphrase generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::gold::{Compound, GoldList};
use crate::text::{inflection_variants, RawParaphrase};
use crate::{Error, Result};

/// Linking phrases of the fixed baseline, in output order.
pub const NAIVE_TEMPLATES: [&str; 10] = ["of", "in", "for", "with", "on", "about", "has", "to", "used for", "used in"];

/// `H <link> M` for every fixed template, identical for every compound.
pub fn naive_baseline(compound: &Compound) -> Vec<RawParaphrase> {
    NAIVE_TEMPLATES.iter().map(|link| instantiate(compound, link)).collect()
}

fn instantiate(compound: &Compound, link: &str) -> RawParaphrase {
    RawParaphrase::new(format!("{} {} {}", compound.head(), link, compound.modifier()))
        .expect("compound words are non-empty")
}

/// Linking phrases mined from training gold, by total annotator frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateTable {
    /// Sorted by frequency descending, then lexicographically.
    templates: Vec<(String, u64)>,
}

impl TemplateTable {
    pub fn from_gold(training: &[GoldList]) -> Result<Self> {
        if training.is_empty() {
            return Err(Error::EmptyTraining);
        }
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for list in training {
            for entry in list.entries() {
                let words: Vec<&str> = entry.tokens.iter().collect();
                if let Some(link) = linking_phrase(list.compound(), &words) {
                    *counts.entry(link).or_insert(0) += u64::from(entry.frequency);
                }
            }
        }
        let mut templates: Vec<(String, u64)> = counts.into_iter().collect();
        // stable sort keeps the lexicographic order of the BTreeMap within ties
        templates.sort_by_key(|t| core::cmp::Reverse(t.1));
        Ok(TemplateTable { templates })
    }

    pub fn templates(&self) -> &[(String, u64)] {
        &self.templates
    }

    pub fn generate(&self, compound: &Compound, k: usize) -> Result<Vec<RawParaphrase>> {
        if k == 0 {
            return Err(Error::ZeroTemplateCount);
        }
        Ok(self.templates.iter().take(k).map(|(link, _)| instantiate(compound, link)).collect())
    }
}

/// Tokens strictly between the first head occurrence and the first modifier
/// occurrence after it.
fn linking_phrase(compound: &Compound, words: &[&str]) -> Option<String> {
    let heads = inflection_variants(compound.head());
    let modifiers = inflection_variants(compound.modifier());
    let h = words.iter().position(|w| heads.contains(*w))?;
    let m = h + 1 + words[h + 1..].iter().position(|w| modifiers.contains(*w))?;
    (m > h + 1).then(|| words[h + 1..m].join(" "))
}

/// Top-`k` training templates instantiated for `compound`.
pub fn trained_baseline(training: &[GoldList], compound: &Compound, k: usize) -> Result<Vec<RawParaphrase>> {
    TemplateTable::from_gold(training)?.generate(compound, k)
}
