use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{spearman, to_f64, Share};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::scheme::{DisciplineId, FieldId};

/// How a cross-field publication that has both a same-discipline partner and
/// an other-discipline partner is assigned to a single bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Decomposition {
    /// Any other-discipline author makes the publication cross-discipline.
    #[default]
    CrossDisciplineFirst,
    /// Any same-discipline partner field makes the publication intra-discipline.
    IntraDisciplineFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    /// Partners whose incidence `d` exceeds this (strictly) are counted in the
    /// `*_over_threshold` counts.
    pub partner_threshold: f64,
    /// Partners with incidence `d` below this are ignored in every partner count.
    pub omit_below: f64,
    pub decomposition: Decomposition,
}

impl Default for ProfileParams {
    fn default() -> Self {
        ProfileParams {
            partner_threshold: 0.10,
            omit_below: 0.0,
            decomposition: Decomposition::default(),
        }
    }
}

/// Interdisciplinarity breakdown of one field.
///
/// Publication counts are exact; `cross_field = intra_discipline + cross_discipline`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldProfile {
    pub field: String,
    pub discipline: String,
    pub universities_active: u64,
    pub headcount: u64,
    pub total_pubs: u64,
    pub cross_field_pubs: u64,
    pub intra_discipline_pubs: u64,
    pub cross_discipline_pubs: u64,
    pub partner_fields: u64,
    pub partner_fields_over_threshold: u64,
    pub partner_disciplines: u64,
    pub partner_disciplines_over_threshold: u64,
}

impl FieldProfile {
    pub fn share_cross_field(&self) -> Share {
        Share::new(self.cross_field_pubs, self.total_pubs)
    }

    pub fn share_intra_discipline(&self) -> Share {
        Share::new(self.intra_discipline_pubs, self.total_pubs)
    }

    pub fn share_cross_discipline(&self) -> Share {
        Share::new(self.cross_discipline_pubs, self.total_pubs)
    }
}

/// Share of a field's publications that include at least one other field.
pub fn general_degree(corpus: &Corpus, field: &str) -> Result<Share> {
    let f = corpus.scheme().field_id(field)?;
    degree_of(corpus, f)
}

pub(crate) fn degree_of(corpus: &Corpus, f: FieldId) -> Result<Share> {
    let pubs = corpus.field_publications(f);
    if pubs.is_empty() {
        return Err(no_publications(corpus, f));
    }
    let cross = pubs
        .iter()
        .filter(|&&p| corpus.field_set_ids(p as usize).len() > 1)
        .count() as u64;
    Ok(Share::new(cross, pubs.len() as u64))
}

fn no_publications(corpus: &Corpus, f: FieldId) -> Error {
    Error::Domain(format!(
        "field '{}' has no publications",
        corpus.scheme().field(f).code
    ))
}

pub fn collaboration_profile(corpus: &Corpus, field: &str, params: &ProfileParams) -> Result<FieldProfile> {
    let f = corpus.scheme().field_id(field)?;
    profile_of(corpus, f, params)
}

/// Profiles of every field with at least one publication, in registry order.
pub fn collaboration_profiles(corpus: &Corpus, params: &ProfileParams) -> Vec<FieldProfile> {
    let ids: Vec<FieldId> = corpus
        .scheme()
        .field_ids()
        .filter(|&f| !corpus.field_publications(f).is_empty())
        .collect();
    ids.par_iter()
        .map(|&f| profile_of(corpus, f, params).expect("field has publications"))
        .collect()
}

pub(crate) fn profile_of(corpus: &Corpus, f: FieldId, params: &ProfileParams) -> Result<FieldProfile> {
    let scheme = corpus.scheme();
    let own = scheme.field_discipline(f);
    let pubs = corpus.field_publications(f);
    if pubs.is_empty() {
        return Err(no_publications(corpus, f));
    }

    let mut joint = vec![0u64; scheme.fields().len()];
    let (mut cross_field, mut intra, mut cross_disc) = (0u64, 0u64, 0u64);
    for &p in pubs {
        let set = corpus.field_set_ids(p as usize);
        if set.len() < 2 {
            continue;
        }
        cross_field += 1;
        let mut other_discipline = false;
        let mut same_discipline = false;
        for &g in set {
            if g == f {
                continue;
            }
            joint[g.index()] += 1;
            if scheme.field_discipline(g) == own {
                same_discipline = true;
            } else {
                other_discipline = true;
            }
        }
        let to_cross = match params.decomposition {
            Decomposition::CrossDisciplineFirst => other_discipline,
            Decomposition::IntraDisciplineFirst => !same_discipline,
        };
        if to_cross {
            cross_disc += 1;
        } else {
            intra += 1;
        }
    }

    let total = pubs.len() as u64;
    let mut partner_fields = 0;
    let mut over = 0;
    let mut disciplines: BTreeSet<DisciplineId> = BTreeSet::new();
    let mut disciplines_over: BTreeSet<DisciplineId> = BTreeSet::new();
    for (g, &c) in joint.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let d = to_f64(&Share::new(c, total));
        if d < params.omit_below {
            continue;
        }
        let gd = scheme.field_discipline(FieldId(g as u32));
        partner_fields += 1;
        if gd != own {
            disciplines.insert(gd);
        }
        if d > params.partner_threshold {
            over += 1;
            if gd != own {
                disciplines_over.insert(gd);
            }
        }
    }

    Ok(FieldProfile {
        field: scheme.field(f).code.clone(),
        discipline: scheme.discipline(own).code.clone(),
        universities_active: corpus.universities(f),
        headcount: corpus.headcount(f),
        total_pubs: total,
        cross_field_pubs: cross_field,
        intra_discipline_pubs: intra,
        cross_discipline_pubs: cross_disc,
        partner_fields,
        partner_fields_over_threshold: over,
        partner_disciplines: disciplines.len() as u64,
        partner_disciplines_over_threshold: disciplines_over.len() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisciplineSummary {
    pub discipline: String,
    pub universities: u64,
    pub staff: u64,
    pub pubs: u64,
    /// Publications whose discipline set has two or more members.
    pub with_other_disciplines: u64,
    /// Publications with two or more distinct fields of this discipline.
    pub cross_field_within: u64,
}

impl DisciplineSummary {
    pub fn share_with_other_disciplines(&self) -> Option<Share> {
        (self.pubs > 0).then(|| Share::new(self.with_other_disciplines, self.pubs))
    }

    pub fn share_cross_field_within(&self) -> Option<Share> {
        (self.pubs > 0).then(|| Share::new(self.cross_field_within, self.pubs))
    }
}

pub fn discipline_summary(corpus: &Corpus, discipline: &str) -> Result<DisciplineSummary> {
    let d = corpus.scheme().discipline_id(discipline)?;
    Ok(summary_of(corpus, d))
}

pub(crate) fn summary_of(corpus: &Corpus, d: DisciplineId) -> DisciplineSummary {
    let scheme = corpus.scheme();
    let (mut pubs, mut other, mut within) = (0u64, 0u64, 0u64);
    for p in 0..corpus.publications().len() {
        let discs = corpus.discipline_set_ids(p);
        if !discs.contains(&d) {
            continue;
        }
        pubs += 1;
        if discs.len() > 1 {
            other += 1;
        }
        let own_fields = corpus
            .field_set_ids(p)
            .iter()
            .filter(|&&f| scheme.field_discipline(f) == d)
            .count();
        if own_fields > 1 {
            within += 1;
        }
    }
    DisciplineSummary {
        discipline: scheme.discipline(d).code.clone(),
        universities: corpus.discipline_universities(d),
        staff: corpus.discipline_headcount(d),
        pubs,
        with_other_disciplines: other,
        cross_field_within: within,
    }
}

/// Fields of `discipline` with strictly more than `min_headcount` researchers.
pub fn apply_headcount_filter(corpus: &Corpus, discipline: &str, min_headcount: u64) -> Result<Vec<FieldId>> {
    let d = corpus.scheme().discipline_id(discipline)?;
    Ok(corpus
        .scheme()
        .members(d)
        .iter()
        .copied()
        .filter(|&f| corpus.headcount(f) > min_headcount)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationResult {
    pub discipline: String,
    pub n: usize,
    pub rho: f64,
}

/// Spearman correlation between headcount and general degree across the
/// publishing fields of a discipline.
pub fn headcount_degree_correlation(corpus: &Corpus, discipline: &str) -> Result<CorrelationResult> {
    let d = corpus.scheme().discipline_id(discipline)?;
    let fields: Vec<FieldId> = corpus
        .scheme()
        .members(d)
        .iter()
        .copied()
        .filter(|&f| !corpus.field_publications(f).is_empty())
        .collect();
    correlation_over(corpus, discipline, &fields)
}

/// Spearman correlation between headcount and general degree over `fields`.
pub fn correlation_over(corpus: &Corpus, discipline: &str, fields: &[FieldId]) -> Result<CorrelationResult> {
    let mut x = Vec::with_capacity(fields.len());
    let mut y = Vec::with_capacity(fields.len());
    for &f in fields {
        x.push(corpus.headcount(f) as f64);
        y.push(to_f64(&degree_of(corpus, f)?));
    }
    let rho = spearman(&x, &y)?;
    Ok(CorrelationResult {
        discipline: discipline.to_string(),
        n: fields.len(),
        rho,
    })
}
