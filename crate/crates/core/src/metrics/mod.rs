//! Co-occurrence counts and interdisciplinarity indicators.
//!
//! Counts are whole counts over deduplicated per-publication sets, so a
//! publication contributes at most one to any field, discipline or pair.
//! Ratios stay exact (`Ratio<u64>`) until they are rendered.

mod pairs;
mod profile;
mod spearman;

use std::fmt;

pub use num_rational::Ratio;

pub use pairs::{count_discipline_pairs, count_field_pairs, count_pairs_by, PairCounts, UnitIndex};
pub use profile::{
    apply_headcount_filter, collaboration_profile, collaboration_profiles, correlation_over,
    discipline_summary,
    general_degree, headcount_degree_correlation, CorrelationResult, Decomposition,
    DisciplineSummary, FieldProfile, ProfileParams,
};
pub use spearman::{average_ranks, spearman};

use crate::error::{Error, Result};

pub type Share = Ratio<u64>;

pub fn to_f64(r: &Share) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Unordered pair of distinct codes, stored with `first < second`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    first: String,
    second: String,
}

impl PairKey {
    /// Canonicalizes the pair; `None` for a self-pair.
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Option<PairKey> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(PairKey { first: a, second: b }),
            std::cmp::Ordering::Greater => Some(PairKey { first: b, second: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn first(&self) -> &str {
        &self.first
    }

    pub fn second(&self) -> &str {
        &self.second
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.first, self.second)
    }
}

/// Incidence of a joint count on both members of a pair.
///
/// `d = c/a` is the share of the first member's publications that are
/// joint, `e = c/b` the same for the second member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairStats {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: Share,
    pub e: Share,
    pub avg: Share,
}

impl PairStats {
    /// The same pair seen from the second member.
    pub fn reversed(&self) -> PairStats {
        PairStats {
            a: self.b,
            b: self.a,
            c: self.c,
            d: self.e,
            e: self.d,
            avg: self.avg,
        }
    }
}

pub fn pair_incidence(a: u64, b: u64, c: u64) -> Result<PairStats> {
    if a == 0 || b == 0 {
        return Err(Error::Domain(format!(
            "incidence needs positive totals, got a={a}, b={b}"
        )));
    }
    if c > a.min(b) {
        return Err(Error::Inconsistent {
            first: a,
            second: b,
            joint: c,
        });
    }
    let d = Share::new(c, a);
    let e = Share::new(c, b);
    let avg = (d + e) / 2;
    Ok(PairStats { a, b, c, d, e, avg })
}
