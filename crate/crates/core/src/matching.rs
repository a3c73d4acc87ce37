//! Fuzzy word matching and the n-gram overlap score between two paraphrases.
//!
//! Words match exactly (1.0) or by a shared prefix of at least three
//! characters, scored `(2|P| / (|a| + |b|))^2`. An n-gram of the test
//! paraphrase matches a same-length gold n-gram when every aligned word pair
//! matches; its score is the positionwise sum. The overlap of two paraphrases
//! sums, over every test n-gram, the best gold n-gram score.

use alloc::vec;
use alloc::vec::Vec;

use crate::text::TokenSeq;
use crate::{Error, Result};

/// Shortest common prefix, in characters, that earns a partial match.
pub const MIN_PREFIX: usize = 3;

/// Similarity of two normalized words in `[0, 1]`.
pub fn word_match(gold: &str, test: &str) -> f64 {
    if gold == test {
        return 1.0;
    }
    let prefix = gold.chars().zip(test.chars()).take_while(|(a, b)| a == b).count();
    if prefix < MIN_PREFIX {
        return 0.0;
    }
    let total = gold.chars().count() + test.chars().count();
    let ratio = 2.0 * prefix as f64 / total as f64;
    ratio * ratio
}

/// Sum of positionwise word matches, or `None` when some position scores 0.
pub fn ngram_match<G, T>(gold: &[G], test: &[T]) -> Result<Option<f64>>
where
    G: AsRef<str>,
    T: AsRef<str>,
{
    if gold.len() != test.len() {
        return Err(Error::LengthMismatch { gold: gold.len(), test: test.len() });
    }
    let mut sum = 0.0;
    for (g, t) in gold.iter().zip(test) {
        let m = word_match(g.as_ref(), t.as_ref());
        if m == 0.0 {
            return Ok(None);
        }
        sum += m;
    }
    Ok(Some(sum))
}

/// Best gold n-gram for one test n-gram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NgramAlignment {
    pub test_start: usize,
    pub len: usize,
    /// Leftmost gold n-gram reaching the best score; `None` if nothing matched.
    pub gold_start: Option<usize>,
    pub score: f64,
}

/// Best match for every test n-gram, ordered by length then start position.
pub fn align_ngrams(test: &TokenSeq, gold: &TokenSeq) -> Vec<NgramAlignment> {
    let t = test.tokens();
    let g = gold.tokens();
    let tl = t.len();
    // best[i * (tl + 1) + n] for the test n-gram of length n starting at i
    let mut best: Vec<(Option<usize>, f64)> = vec![(None, 0.0); tl * (tl + 1)];

    let weights: Vec<Vec<f64>> = t.iter().map(|tw| g.iter().map(|gw| word_match(gw, tw)).collect()).collect();

    // Extending an n-gram pair along its diagonal reuses the running sum, and
    // stops at the first zero since longer n-grams through it cannot match.
    for j in 0..g.len() {
        for i in 0..tl {
            let mut sum = 0.0;
            for n in 1..=(tl - i).min(g.len() - j) {
                let w = weights[i + n - 1][j + n - 1];
                if w == 0.0 {
                    break;
                }
                sum += w;
                let slot = &mut best[i * (tl + 1) + n];
                if slot.0.is_none() || sum > slot.1 {
                    *slot = (Some(j), sum);
                }
            }
        }
    }

    let mut out = Vec::with_capacity(tl * (tl + 1) / 2);
    for n in 1..=tl {
        for i in 0..=(tl - n) {
            let (gold_start, score) = best[i * (tl + 1) + n];
            out.push(NgramAlignment { test_start: i, len: n, gold_start, score });
        }
    }
    out
}

/// Raw (unnormalized) n-gram overlap of `test` against `gold`.
pub fn overlap_score(test: &TokenSeq, gold: &TokenSeq) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(align_ngrams(test, gold).iter().map(|a| a.score).sum())
}

/// Overlap of a sequence with itself: `L(L+1)(L+2)/6` for length `L`, since
/// each n-gram matches itself with score `n` and no match can exceed `n`.
pub fn self_score(seq: &TokenSeq) -> Result<f64> {
    overlap_score(seq, seq)
}

/// Overlap normalized by the larger of the two self-scores, in `[0, 1]`.
///
/// Returns 0.0 when either side is empty. The score is directional: `test`
/// n-grams are searched for in `gold`, not the other way round.
pub fn normalized_overlap(test: &TokenSeq, gold: &TokenSeq) -> f64 {
    if test.is_empty() || gold.is_empty() {
        return 0.0;
    }
    let (Ok(raw), Ok(st), Ok(sg)) = (overlap_score(test, gold), self_score(test), self_score(gold)) else {
        return 0.0;
    };
    (raw / st.max(sg)).clamp(0.0, 1.0)
}
