use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use rayon::prelude::*;

use super::PairKey;
use crate::corpus::Corpus;
use crate::scheme::{DisciplineId, FieldId};

/// Dense unit index usable by the pair kernel.
pub trait UnitIndex: Copy + Send + Sync {
    fn unit(self) -> u32;
}

impl UnitIndex for u32 {
    fn unit(self) -> u32 {
        self
    }
}

impl UnitIndex for FieldId {
    fn unit(self) -> u32 {
        self.0
    }
}

impl UnitIndex for DisciplineId {
    fn unit(self) -> u32 {
        self.0
    }
}

/// Joint publication counts keyed by canonical pair, in canonical order.
pub type PairCounts = BTreeMap<PairKey, u64>;

/// Above this many units the dense triangular accumulator is replaced by a hash map.
const DENSE_LIMIT: usize = 1024;

/// Publications per parallel work unit.
const CHUNK: usize = 4096;

/// Counts, for every unordered pair of distinct units, the publications
/// whose unit set contains both.
///
/// `set_of(p)` must return the deduplicated, ascending unit indices of
/// publication `p`. The result is sorted by `(i, j)` with `i < j` and has no
/// zero entries. Partial counts are merged by addition, so the result does
/// not depend on how publications are split across threads.
pub fn count_pairs_by<'a, T, F>(n_pubs: usize, n_units: usize, set_of: F) -> Vec<((u32, u32), u64)>
where
    T: UnitIndex + 'a,
    F: Fn(usize) -> &'a [T] + Sync,
{
    if n_units <= DENSE_LIMIT {
        count_dense(n_pubs, n_units, &set_of)
    } else {
        count_sparse(n_pubs, &set_of)
    }
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    // row-major strict upper triangle
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn count_dense<'a, T, F>(n_pubs: usize, n_units: usize, set_of: &F) -> Vec<((u32, u32), u64)>
where
    T: UnitIndex + 'a,
    F: Fn(usize) -> &'a [T] + Sync,
{
    let cells = n_units * n_units.saturating_sub(1) / 2;
    let starts: Vec<usize> = (0..n_pubs).step_by(CHUNK).collect();
    let totals = starts
        .into_par_iter()
        .map(|start| {
            let mut acc = vec![0u64; cells];
            for p in start..(start + CHUNK).min(n_pubs) {
                let set = set_of(p);
                for (k, &i) in set.iter().enumerate() {
                    for &j in &set[k + 1..] {
                        acc[tri_index(n_units, i.unit() as usize, j.unit() as usize)] += 1;
                    }
                }
            }
            acc
        })
        .reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut out = Vec::new();
    for i in 0..n_units {
        for j in i + 1..n_units {
            let c = totals[tri_index(n_units, i, j)];
            if c > 0 {
                out.push(((i as u32, j as u32), c));
            }
        }
    }
    out
}

fn count_sparse<'a, T, F>(n_pubs: usize, set_of: &F) -> Vec<((u32, u32), u64)>
where
    T: UnitIndex + 'a,
    F: Fn(usize) -> &'a [T] + Sync,
{
    let merged = (0..n_pubs)
        .into_par_iter()
        .with_min_len(CHUNK)
        .fold(HashMap::new, |mut acc: HashMap<(u32, u32), u64>, p| {
            let set = set_of(p);
            for (k, &i) in set.iter().enumerate() {
                for &j in &set[k + 1..] {
                    *acc.entry((i.unit(), j.unit())).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, merge_counts);
    let mut out: Vec<_> = merged.into_iter().collect();
    out.sort_unstable();
    out
}

fn merge_counts<K: Hash + Eq>(mut a: HashMap<K, u64>, b: HashMap<K, u64>) -> HashMap<K, u64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Field-level joint counts over per-publication field sets.
pub fn count_field_pairs(corpus: &Corpus) -> PairCounts {
    let scheme = corpus.scheme();
    let raw = count_pairs_by(corpus.publications().len(), scheme.fields().len(), |p| {
        corpus.field_set_ids(p)
    });
    raw.into_iter()
        .filter_map(|((i, j), c)| {
            let a = &scheme.fields()[i as usize].code;
            let b = &scheme.fields()[j as usize].code;
            PairKey::new(a.as_str(), b.as_str()).map(|k| (k, c))
        })
        .collect()
}

/// Discipline-level joint counts; a publication counts once per discipline pair.
pub fn count_discipline_pairs(corpus: &Corpus) -> PairCounts {
    let scheme = corpus.scheme();
    let raw = count_pairs_by(corpus.publications().len(), scheme.disciplines().len(), |p| {
        corpus.discipline_set_ids(p)
    });
    raw.into_iter()
        .filter_map(|((i, j), c)| {
            let a = &scheme.disciplines()[i as usize].code;
            let b = &scheme.disciplines()[j as usize].code;
            PairKey::new(a.as_str(), b.as_str()).map(|k| (k, c))
        })
        .collect()
}
