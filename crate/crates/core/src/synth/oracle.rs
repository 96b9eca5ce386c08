//! Brute-force reference computations.
//!
//! These walk publication → author → field code strings directly and do not
//! use the corpus's precomputed sets or the metrics kernels.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::metrics::{Decomposition, FieldProfile, PairCounts, PairKey, ProfileParams, Share};

pub const ORACLE_MAX_PUBLICATIONS: usize = 10_000;

fn guard(corpus: &Corpus) -> Result<()> {
    let n = corpus.publications().len();
    if n > ORACLE_MAX_PUBLICATIONS {
        return Err(Error::OracleGuard {
            publications: n,
            limit: ORACLE_MAX_PUBLICATIONS,
        });
    }
    Ok(())
}

fn field_codes(corpus: &Corpus, pub_idx: usize) -> BTreeSet<String> {
    let scheme = corpus.scheme();
    corpus.publications()[pub_idx]
        .authors
        .iter()
        .map(|&r| scheme.field(corpus.researchers()[r as usize].field).code.clone())
        .collect()
}

fn discipline_of(corpus: &Corpus, field: &str) -> String {
    let scheme = corpus.scheme();
    let f = scheme.fields().iter().find(|f| f.code == field).expect("registered field");
    scheme.discipline(f.discipline).code.clone()
}

fn count_pairs(sets: impl Iterator<Item = BTreeSet<String>>) -> PairCounts {
    let mut out = BTreeMap::new();
    for set in sets {
        let v: Vec<&String> = set.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let k = PairKey::new(v[i].as_str(), v[j].as_str()).expect("distinct");
                *out.entry(k).or_insert(0) += 1;
            }
        }
    }
    out
}

pub fn oracle_pair_counts(corpus: &Corpus) -> Result<PairCounts> {
    guard(corpus)?;
    Ok(count_pairs((0..corpus.publications().len()).map(|p| field_codes(corpus, p))))
}

pub fn oracle_discipline_pairs(corpus: &Corpus) -> Result<PairCounts> {
    guard(corpus)?;
    Ok(count_pairs((0..corpus.publications().len()).map(|p| {
        field_codes(corpus, p)
            .iter()
            .map(|f| discipline_of(corpus, f))
            .collect()
    })))
}

fn check_field(corpus: &Corpus, field: &str) -> Result<()> {
    if corpus.scheme().fields().iter().any(|f| f.code == field) {
        Ok(())
    } else {
        Err(Error::UnknownField(field.to_string()))
    }
}

pub fn oracle_degree(corpus: &Corpus, field: &str) -> Result<Share> {
    guard(corpus)?;
    check_field(corpus, field)?;
    let (mut total, mut cross) = (0u64, 0u64);
    for p in 0..corpus.publications().len() {
        let set = field_codes(corpus, p);
        if set.contains(field) {
            total += 1;
            if set.len() > 1 {
                cross += 1;
            }
        }
    }
    if total == 0 {
        return Err(Error::Domain(format!("field '{field}' has no publications")));
    }
    Ok(Share::new(cross, total))
}

pub fn oracle_profile(corpus: &Corpus, field: &str, params: &ProfileParams) -> Result<FieldProfile> {
    guard(corpus)?;
    check_field(corpus, field)?;
    let own = discipline_of(corpus, field);

    let mut headcount = 0;
    let mut universities = BTreeSet::new();
    for r in corpus.researchers() {
        if corpus.scheme().field(r.field).code == field {
            headcount += 1;
            if let Some(u) = &r.university {
                universities.insert(u.clone());
            }
        }
    }

    let (mut total, mut cross_field, mut intra, mut cross_disc) = (0u64, 0u64, 0u64, 0u64);
    let mut joint: BTreeMap<String, u64> = BTreeMap::new();
    for p in 0..corpus.publications().len() {
        let set = field_codes(corpus, p);
        if !set.contains(field) {
            continue;
        }
        total += 1;
        let others: Vec<&String> = set.iter().filter(|g| *g != field).collect();
        if others.is_empty() {
            continue;
        }
        cross_field += 1;
        for g in &others {
            *joint.entry((*g).clone()).or_insert(0) += 1;
        }
        let any_other = others.iter().any(|g| discipline_of(corpus, g) != own);
        let any_same = others.iter().any(|g| discipline_of(corpus, g) == own);
        let cross = match params.decomposition {
            Decomposition::CrossDisciplineFirst => any_other,
            Decomposition::IntraDisciplineFirst => !any_same,
        };
        if cross {
            cross_disc += 1;
        } else {
            intra += 1;
        }
    }
    if total == 0 {
        return Err(Error::Domain(format!("field '{field}' has no publications")));
    }

    let (mut partners, mut partners_over) = (0, 0);
    let mut discs = BTreeSet::new();
    let mut discs_over = BTreeSet::new();
    for (g, c) in &joint {
        let d = *c as f64 / total as f64;
        if d < params.omit_below {
            continue;
        }
        let gd = discipline_of(corpus, g);
        partners += 1;
        let over = d > params.partner_threshold;
        if over {
            partners_over += 1;
        }
        if gd != own {
            if over {
                discs_over.insert(gd.clone());
            }
            discs.insert(gd);
        }
    }

    Ok(FieldProfile {
        field: field.to_string(),
        discipline: own,
        universities_active: universities.len() as u64,
        headcount,
        total_pubs: total,
        cross_field_pubs: cross_field,
        intra_discipline_pubs: intra,
        cross_discipline_pubs: cross_disc,
        partner_fields: partners,
        partner_fields_over_threshold: partners_over,
        partner_disciplines: discs.len() as u64,
        partner_disciplines_over_threshold: discs_over.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::corpus_from_fields;
    use crate::FieldScheme;

    fn chem() -> FieldScheme {
        let mut b = FieldScheme::builder();
        b.discipline("CHIM", "Chemistry").unwrap();
        for f in ["CHIM/01", "CHIM/02", "CHIM/06"] {
            b.field(f, f, "CHIM").unwrap();
        }
        b.build()
    }

    #[test]
    fn worked_example() {
        let c = corpus_from_fields(
            chem(),
            &[
                vec!["CHIM/01", "CHIM/02", "CHIM/01"],
                vec!["CHIM/01", "CHIM/06"],
                vec!["CHIM/01", "CHIM/02", "CHIM/06"],
            ],
        )
        .unwrap();
        let pairs: Vec<(String, u64)> = oracle_pair_counts(&c)
            .unwrap()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(
            pairs,
            [
                ("CHIM/01_CHIM/02".to_string(), 2),
                ("CHIM/01_CHIM/06".to_string(), 2),
                ("CHIM/02_CHIM/06".to_string(), 1)
            ]
        );
        assert_eq!(oracle_degree(&c, "CHIM/01").unwrap(), Share::from_integer(1));
        assert!(oracle_discipline_pairs(&c).unwrap().is_empty());
    }

    #[test]
    fn isolated_and_missing_fields() {
        let c = corpus_from_fields(chem(), &[vec!["CHIM/01"], vec!["CHIM/02", "CHIM/06"]]).unwrap();
        assert_eq!(oracle_degree(&c, "CHIM/01").unwrap(), Share::from_integer(0));
        assert!(matches!(oracle_degree(&c, "NOPE"), Err(Error::UnknownField(_))));
        let single = corpus_from_fields(chem(), &[vec!["CHIM/01", "CHIM/01"]]).unwrap();
        assert!(oracle_pair_counts(&single).unwrap().is_empty());
        assert!(matches!(oracle_degree(&single, "CHIM/02"), Err(Error::Domain(_))));
    }

    #[test]
    fn size_guard() {
        let pubs = vec![vec!["CHIM/01"]; ORACLE_MAX_PUBLICATIONS + 1];
        let c = corpus_from_fields(chem(), &pubs).unwrap();
        assert!(matches!(oracle_pair_counts(&c), Err(Error::OracleGuard { .. })));
    }
}
