//! Paraphrase normalization: tokenization, determiner removal and the
//! inflectional variants used when validating annotator input.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use unicode_normalization::UnicodeNormalization;

use crate::{Error, Result};

/// Characters stripped from either edge of every token.
const EDGE_PUNCTUATION: &[char] = &['.', ',', ';', ':', '!', '?', '"', '\'', '(', ')'];

/// A paraphrase string as written by an annotator or a system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawParaphrase(String);

impl RawParaphrase {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(Error::EmptyParaphrase);
        }
        Ok(RawParaphrase(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn tokenize(&self) -> Result<TokenSeq> {
        tokenize(&self.0)
    }
}

impl fmt::Display for RawParaphrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Lowercase, punctuation-trimmed word sequence.
///
/// Every token is non-empty and whitespace-free. A sequence may be empty only
/// as the result of [`DeterminerSet::strip`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TokenSeq(Vec<String>);

impl TokenSeq {
    /// Normalizes each word the same way [`tokenize`] does. Words that
    /// normalize to nothing are dropped, so the result may be empty.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut tokens = Vec::new();
        for w in words {
            tokens.extend(normalized_tokens(w.as_ref()));
        }
        TokenSeq(tokens)
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// Tokens joined by single spaces.
    pub fn joined(&self) -> String {
        self.0.join(" ")
    }
}

impl fmt::Display for TokenSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(t)?;
        }
        Ok(())
    }
}

fn normalize_token(raw: &str) -> String {
    // Lowercasing can leave decomposed sequences behind, so compose again.
    let lowered = raw.nfc().collect::<String>().to_lowercase();
    let composed: String = lowered.nfc().collect();
    composed.trim_matches(EDGE_PUNCTUATION).to_string()
}

fn normalized_tokens(raw: &str) -> impl Iterator<Item = String> + '_ {
    raw.split_whitespace().map(normalize_token).filter(|t| !t.is_empty() && !t.contains(char::is_whitespace))
}

/// Splits on whitespace, composes to NFC, lowercases and trims edge
/// punctuation from each token. Internal hyphens and apostrophes survive.
pub fn tokenize(raw: &str) -> Result<TokenSeq> {
    let tokens: Vec<String> = normalized_tokens(raw).collect();
    if tokens.is_empty() {
        return Err(Error::EmptyParaphrase);
    }
    Ok(TokenSeq(tokens))
}

/// Words removed from both sides before scoring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminerSet(BTreeSet<String>);

impl Default for DeterminerSet {
    fn default() -> Self {
        DeterminerSet::new(["a", "an", "the"])
    }
}

impl DeterminerSet {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        DeterminerSet(words.into_iter().flat_map(|w| normalized_tokens(w.as_ref()).collect::<Vec<_>>()).collect())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn strip(&self, seq: &TokenSeq) -> TokenSeq {
        strip_determiners(seq, self)
    }
}

pub fn strip_determiners(seq: &TokenSeq, determiners: &DeterminerSet) -> TokenSeq {
    TokenSeq(seq.0.iter().filter(|t| !determiners.contains(t)).cloned().collect())
}

/// Singular/plural surface forms of a noun: the word itself, `+s`, `+es`,
/// and `y -> ies` after a consonant. Over-generates on purpose; never
/// produces derivational forms.
pub fn inflection_variants(noun: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    out.insert(noun.to_string());
    out.insert(alloc::format!("{noun}s"));
    out.insert(alloc::format!("{noun}es"));
    if let Some(stem) = noun.strip_suffix('y') {
        if stem.chars().last().is_some_and(|c| c.is_alphabetic() && !is_vowel(c)) {
            out.insert(alloc::format!("{stem}ies"));
        }
    }
    out
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn words(seq: &TokenSeq) -> Vec<&str> {
        seq.iter().collect()
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(words(&tokenize("Filter for air.").unwrap()), vec!["filter", "for", "air"]);
        assert_eq!(
            words(&tokenize("a filter that removes impurities from the air").unwrap()),
            vec!["a", "filter", "that", "removes", "impurities", "from", "the", "air"]
        );
        assert_eq!(words(&tokenize("ice-cream  headache").unwrap()), vec!["ice-cream", "headache"]);
    }

    #[test]
    fn tokenize_keeps_internal_apostrophe_and_drops_bare_punctuation() {
        let seq = tokenize("(the) worker's  , area!").unwrap();
        assert_eq!(words(&seq), vec!["the", "worker's", "area"]);
    }

    #[test]
    fn tokenize_composes_unicode() {
        // "cafe" + combining acute vs. precomposed é
        let a = tokenize("CAFE\u{301} area").unwrap();
        let b = tokenize("caf\u{e9} area").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tokenize_rejects_empty() {
        assert_eq!(tokenize("   "), Err(Error::EmptyParaphrase));
        assert_eq!(tokenize(" ... ( ) "), Err(Error::EmptyParaphrase));
        assert!(RawParaphrase::new(" \t").is_err());
    }

    #[test]
    fn strip_examples() {
        let dets = DeterminerSet::default();
        let seq = tokenize("a filter that removes impurities from the air").unwrap();
        assert_eq!(words(&dets.strip(&seq)), vec!["filter", "that", "removes", "impurities", "from", "air"]);
        let seq = tokenize("filter for air").unwrap();
        assert_eq!(dets.strip(&seq), seq);
        let seq = tokenize("the the a").unwrap();
        assert!(dets.strip(&seq).is_empty());
    }

    #[test]
    fn custom_determiners() {
        let dets = DeterminerSet::new(["a", "an", "the", "this", "that", "these", "those"]);
        let seq = tokenize("a filter that removes the dust").unwrap();
        assert_eq!(words(&dets.strip(&seq)), vec!["filter", "removes", "dust"]);
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn inflection_examples() {
        assert_eq!(inflection_variants("filter"), set(&["filter", "filters", "filteres"]));
        assert_eq!(inflection_variants("body"), set(&["body", "bodys", "bodyes", "bodies"]));
        assert_eq!(inflection_variants("air"), set(&["air", "airs", "aires"]));
        // vowel + y takes a plain s
        assert!(!inflection_variants("day").contains("daies"));
        assert!(inflection_variants("box").contains("boxes"));
    }
}
