//! Gold-standard compilation and fuzzy n-gram scoring for free paraphrases of
//! two-word noun compounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, IO and the
//! command-line front end live in the `ncpara` crate.
//!
//! ```
//! use ncpara_core::matching::normalized_overlap;
//! use ncpara_core::text::{tokenize, DeterminerSet};
//!
//! let dets = DeterminerSet::default();
//! let test = dets.strip(&tokenize("a filter for the air").unwrap());
//! let gold = dets.strip(&tokenize("filter for air").unwrap());
//! assert_eq!(normalized_overlap(&test, &gold), 1.0);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baseline;
mod error;
pub mod gold;
pub mod matching;
pub mod scoring;
pub mod text;

pub use error::Error;
pub use gold::{AnnotationRecord, Compound, GoldEntry, GoldList};
pub use scoring::{Mode, ScoreReport, ScoringConfig, Submission};
pub use text::{DeterminerSet, RawParaphrase, TokenSeq};

pub type Result<T, E = Error> = core::result::Result<T, E>;
