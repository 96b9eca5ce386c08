//! Interdisciplinary collaboration indicators derived from the field
//! classification of publication co-authors.
//!
//! Researchers belong to exactly one field of a two-level scheme
//! ([`scheme`]). Publications are linked to their authors' fields
//! ([`corpus`]), field and discipline co-occurrences are counted once per
//! publication ([`metrics`]), and the results are assembled into report
//! tables and edge lists ([`reports`]). [`synth`] generates seeded corpora
//! with planted structure together with brute-force reference counts.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod reports;
pub mod scheme;
pub mod synth;
mod tabular;

pub use corpus::{load_corpus, Corpus, CorpusSummary, LinkReport, LoadOptions};
pub use error::{Error, Result};
pub use scheme::{load_scheme, validate_scheme, FieldScheme};
