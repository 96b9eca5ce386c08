//! Report tables built from a corpus, and the co-occurrence edge list.
//!
//! Each builder comes in two layers: a corpus-facing function that gathers
//! counts, and a row-facing function that takes directed `(a, b, c)` rows
//! directly so printed count triples can be fed in as fixtures.

mod graph;
mod table;

use std::cmp::Ordering;
use std::collections::HashMap;

use log::warn;

pub use graph::{export_graph, graph_edges, GraphEdge, Level};
pub use table::{percent, percent_tenths, raw, render, Cell, Column, ColumnKind, Format, RenderOptions, ReportTable};

use crate::corpus::Corpus;
use crate::error::Result;
use crate::metrics::{
    self, count_discipline_pairs, count_field_pairs, pair_incidence, to_f64, FieldProfile, PairKey,
    PairStats, ProfileParams, Share,
};
use crate::scheme::FieldId;

/// Directed count triple: `a` publications of `first`, `b` of `second`,
/// `c` joint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRow {
    pub first: String,
    pub second: String,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub cross_discipline: bool,
}

impl PairRow {
    pub fn new(first: &str, second: &str, a: u64, b: u64, c: u64) -> Self {
        PairRow {
            first: first.to_string(),
            second: second.to_string(),
            a,
            b,
            c,
            cross_discipline: false,
        }
    }

    pub fn stats(&self) -> Result<PairStats> {
        pair_incidence(self.a, self.b, self.c)
    }
}

const PAIR_COLUMNS: [(&str, ColumnKind); 7] = [
    ("pair", ColumnKind::Code),
    ("a", ColumnKind::Count),
    ("b", ColumnKind::Count),
    ("c", ColumnKind::Count),
    ("d", ColumnKind::Ratio),
    ("e", ColumnKind::Ratio),
    ("avg", ColumnKind::Ratio),
];

fn stat_cells(stats: Option<&PairStats>) -> [Cell; 3] {
    match stats {
        Some(s) => [Cell::Ratio(s.d), Cell::Ratio(s.e), Cell::Ratio(s.avg)],
        None => [Cell::Empty, Cell::Empty, Cell::Empty],
    }
}

/// Discipline pair row with the per-discipline maximum flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadedPair {
    pub row: PairRow,
    pub stats: Option<PairStats>,
    /// `d` is the highest incidence of `first` over all its pairs.
    pub max_for_first: bool,
    /// `e` is the highest incidence of `second` over all its pairs.
    pub max_for_second: bool,
}

impl ShadedPair {
    pub fn is_mutual(&self) -> bool {
        self.max_for_first && self.max_for_second
    }
}

/// Flags, for every code, the pair(s) in which its own incidence is highest.
///
/// Ties flag every tied pair; a code whose incidences are all zero is not flagged.
pub fn shade_maxima(rows: &[PairRow]) -> Vec<ShadedPair> {
    let stats: Vec<Option<PairStats>> = rows.iter().map(|r| r.stats().ok()).collect();
    let mut best: HashMap<&str, Share> = HashMap::new();
    for (r, s) in rows.iter().zip(&stats) {
        let Some(s) = s else { continue };
        for (code, v) in [(r.first.as_str(), s.d), (r.second.as_str(), s.e)] {
            let slot = best.entry(code).or_insert(v);
            if v > *slot {
                *slot = v;
            }
        }
    }
    let is_max = |code: &str, v: Share| v > Share::from_integer(0) && best.get(code) == Some(&v);
    rows.iter()
        .zip(&stats)
        .map(|(r, s)| ShadedPair {
            row: r.clone(),
            stats: *s,
            max_for_first: s.is_some_and(|s| is_max(&r.first, s.d)),
            max_for_second: s.is_some_and(|s| is_max(&r.second, s.e)),
        })
        .collect()
}

/// Every discipline pair in scheme order, including pairs with no joint publication.
pub fn discipline_pair_rows(corpus: &Corpus) -> Vec<PairRow> {
    let scheme = corpus.scheme();
    let joint = count_discipline_pairs(corpus);
    let totals: Vec<u64> = scheme
        .discipline_ids()
        .map(|d| corpus.discipline_publications(d))
        .collect();
    let ds = scheme.disciplines();
    let mut rows = Vec::new();
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            let c = PairKey::new(ds[i].code.as_str(), ds[j].code.as_str())
                .and_then(|k| joint.get(&k).copied())
                .unwrap_or(0);
            let mut row = PairRow::new(&ds[i].code, &ds[j].code, totals[i], totals[j], c);
            row.cross_discipline = true;
            rows.push(row);
        }
    }
    rows
}

pub fn discipline_pair_table(corpus: &Corpus) -> ReportTable {
    discipline_pair_table_from_rows(&discipline_pair_rows(corpus))
}

pub fn discipline_pair_table_from_rows(rows: &[PairRow]) -> ReportTable {
    let mut cols = PAIR_COLUMNS.to_vec();
    cols.push(("max_first", ColumnKind::Text));
    cols.push(("max_second", ColumnKind::Text));
    let mut t = ReportTable::new("Interdisciplinarity between disciplines", &cols);
    t.note("level", "discipline");
    let flag = |b: bool| Cell::Text(if b { "*" } else { "" }.into());
    for s in shade_maxima(rows) {
        let [d, e, avg] = stat_cells(s.stats.as_ref());
        t.push(vec![
            Cell::Code(format!("{}-{}", s.row.first, s.row.second)),
            Cell::Count(s.row.a),
            Cell::Count(s.row.b),
            Cell::Count(s.row.c),
            d,
            e,
            avg,
            flag(s.max_for_first),
            flag(s.max_for_second),
        ]);
    }
    t
}

/// Every realized field pair in canonical order.
pub fn field_pair_table(corpus: &Corpus) -> ReportTable {
    let mut t = ReportTable::new("Field pairs", &PAIR_COLUMNS);
    t.note("level", "field");
    for (k, c) in count_field_pairs(corpus) {
        let a = field_total(corpus, k.first());
        let b = field_total(corpus, k.second());
        let s = pair_incidence(a, b, c).ok();
        let [d, e, avg] = stat_cells(s.as_ref());
        t.push(vec![Cell::Code(k.to_string()), Cell::Count(a), Cell::Count(b), Cell::Count(c), d, e, avg]);
    }
    t
}

fn field_total(corpus: &Corpus, code: &str) -> u64 {
    corpus
        .scheme()
        .field_id(code)
        .map(|f| corpus.field_publications(f).len() as u64)
        .unwrap_or(0)
}

/// Directed rows `(field, partner)` for every partner with a joint publication.
pub fn partner_rows(corpus: &Corpus, field: &str) -> Result<Vec<PairRow>> {
    let scheme = corpus.scheme();
    let f = scheme.field_id(field)?;
    let own = scheme.field_discipline(f);
    let pubs = corpus.field_publications(f);
    let mut joint: HashMap<FieldId, u64> = HashMap::new();
    for &p in pubs {
        for &g in corpus.field_set_ids(p as usize) {
            if g != f {
                *joint.entry(g).or_insert(0) += 1;
            }
        }
    }
    let mut rows: Vec<PairRow> = joint
        .into_iter()
        .map(|(g, c)| PairRow {
            first: scheme.field(f).code.clone(),
            second: scheme.field(g).code.clone(),
            a: pubs.len() as u64,
            b: corpus.field_publications(g).len() as u64,
            c,
            cross_discipline: scheme.field_discipline(g) != own,
        })
        .collect();
    rows.sort_by(|x, y| x.second.cmp(&y.second));
    Ok(rows)
}

/// Descending `d`, then descending joint count, then codes ascending.
fn by_incidence(x: &PairRow, y: &PairRow) -> Ordering {
    let dx = Share::new(x.c, x.a.max(1));
    let dy = Share::new(y.c, y.a.max(1));
    dy.cmp(&dx)
        .then(y.c.cmp(&x.c))
        .then_with(|| x.first.cmp(&y.first))
        .then_with(|| x.second.cmp(&y.second))
}

pub fn field_pair_ranking(corpus: &Corpus, field: &str, top_n: usize) -> Result<ReportTable> {
    let rows = partner_rows(corpus, field)?;
    let mut t = rank_pairs(rows, top_n);
    t.note("field", field);
    Ok(t)
}

/// Sorts directed rows by incidence for the first member and keeps `top_n`.
pub fn rank_pairs(mut rows: Vec<PairRow>, top_n: usize) -> ReportTable {
    rows.retain(|r| r.a > 0 && r.c > 0);
    rows.sort_by(by_incidence);
    rows.truncate(top_n);
    let mut t = ReportTable::new("Top pairings by incidence", &PAIR_COLUMNS);
    t.note("top_n", top_n);
    for r in rows {
        let s = r.stats().ok();
        let [d, e, avg] = stat_cells(s.as_ref());
        t.push(vec![
            Cell::Code(format!("{}_{}", r.first, r.second)),
            Cell::Count(r.a),
            Cell::Count(r.b),
            Cell::Count(r.c),
            d,
            e,
            avg,
        ]);
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdParams {
    /// Pairs are listed when `d` is strictly greater than this.
    pub min_d: f64,
    pub cross_discipline_only: bool,
    /// The first field needs at least this many publications.
    pub min_first_pubs: u64,
}

impl Default for ThresholdParams {
    fn default() -> Self {
        ThresholdParams {
            min_d: 0.10,
            cross_discipline_only: false,
            min_first_pubs: 100,
        }
    }
}

/// Both directions of every realized field pair.
pub fn directed_field_rows(corpus: &Corpus) -> Vec<PairRow> {
    let scheme = corpus.scheme();
    let mut rows = Vec::new();
    for (k, c) in count_field_pairs(corpus) {
        let (fa, fb) = match (scheme.field_id(k.first()), scheme.field_id(k.second())) {
            (Ok(a), Ok(b)) => (a, b),
            _ => continue,
        };
        let a = corpus.field_publications(fa).len() as u64;
        let b = corpus.field_publications(fb).len() as u64;
        let cross = scheme.field_discipline(fa) != scheme.field_discipline(fb);
        let mut fwd = PairRow::new(k.first(), k.second(), a, b, c);
        fwd.cross_discipline = cross;
        let mut rev = PairRow::new(k.second(), k.first(), b, a, c);
        rev.cross_discipline = cross;
        rows.push(fwd);
        rows.push(rev);
    }
    rows
}

pub fn threshold_pair_list(corpus: &Corpus, params: &ThresholdParams) -> ReportTable {
    threshold_pairs_from_rows(directed_field_rows(corpus), params)
}

pub fn threshold_pairs_from_rows(mut rows: Vec<PairRow>, params: &ThresholdParams) -> ReportTable {
    rows.retain(|r| {
        r.a > 0
            && r.a >= params.min_first_pubs
            && (!params.cross_discipline_only || r.cross_discipline)
            && to_f64(&Share::new(r.c, r.a)) > params.min_d
    });
    rows.sort_by(by_incidence);
    let title = if params.cross_discipline_only {
        "Cross-discipline field pairs above incidence threshold"
    } else {
        "Field pairs above incidence threshold"
    };
    let mut t = ReportTable::new(
        title,
        &[
            ("pair", ColumnKind::Code),
            ("joint", ColumnKind::Count),
            ("d", ColumnKind::Ratio),
            ("e", ColumnKind::Ratio),
            ("a", ColumnKind::Count),
            ("b", ColumnKind::Count),
        ],
    );
    t.note("min_d", params.min_d);
    t.note("cross_discipline_only", params.cross_discipline_only);
    t.note("min_first_pubs", params.min_first_pubs);
    for r in rows {
        let d = Share::new(r.c, r.a);
        let e = if r.b > 0 { Cell::Ratio(Share::new(r.c, r.b)) } else { Cell::Empty };
        t.push(vec![
            Cell::Code(format!("{}_{}", r.first, r.second)),
            Cell::Count(r.c),
            Cell::Ratio(d),
            e,
            Cell::Count(r.a),
            Cell::Count(r.b),
        ]);
    }
    t
}

const PROFILE_COLUMNS: [(&str, ColumnKind); 12] = [
    ("field", ColumnKind::Code),
    ("universities", ColumnKind::Count),
    ("researchers", ColumnKind::Count),
    ("pubs", ColumnKind::Count),
    ("with_other_fields", ColumnKind::Ratio),
    ("same_discipline", ColumnKind::Ratio),
    ("other_disciplines", ColumnKind::Ratio),
    ("partner_fields", ColumnKind::Count),
    ("partner_fields_over_threshold", ColumnKind::Count),
    ("partner_disciplines", ColumnKind::Count),
    ("partner_disciplines_over_threshold", ColumnKind::Count),
    ("discipline", ColumnKind::Code),
];

fn profile_cells(p: &FieldProfile) -> Vec<Cell> {
    vec![
        Cell::Code(p.field.clone()),
        Cell::Count(p.universities_active),
        Cell::Count(p.headcount),
        Cell::Count(p.total_pubs),
        Cell::Ratio(p.share_cross_field()),
        Cell::Ratio(p.share_intra_discipline()),
        Cell::Ratio(p.share_cross_discipline()),
        Cell::Count(p.partner_fields),
        Cell::Count(p.partner_fields_over_threshold),
        Cell::Count(p.partner_disciplines),
        Cell::Count(p.partner_disciplines_over_threshold),
        Cell::Code(p.discipline.clone()),
    ]
}

fn note_profile_params(t: &mut ReportTable, params: &ProfileParams) {
    t.note("partner_threshold", params.partner_threshold);
    t.note("omit_below", params.omit_below);
    t.note("decomposition", format!("{:?}", params.decomposition));
}

/// One row per publishing field of `discipline` with more than `min_headcount` researchers.
pub fn discipline_profile_table(
    corpus: &Corpus,
    discipline: &str,
    params: &ProfileParams,
    min_headcount: Option<u64>,
) -> Result<ReportTable> {
    let d = corpus.scheme().discipline_id(discipline)?;
    let mut t = ReportTable::new(format!("Field profiles in {discipline}"), &PROFILE_COLUMNS);
    note_profile_params(&mut t, params);
    if let Some(h) = min_headcount {
        t.note("min_headcount", h);
    }
    for &f in corpus.scheme().members(d) {
        if corpus.field_publications(f).is_empty() {
            continue;
        }
        if min_headcount.is_some_and(|h| corpus.headcount(f) <= h) {
            continue;
        }
        let p = metrics::collaboration_profile(corpus, &corpus.scheme().field(f).code, params)?;
        t.push(profile_cells(&p));
    }
    Ok(t)
}

pub fn field_profile_table(corpus: &Corpus, field: &str, params: &ProfileParams) -> Result<ReportTable> {
    let p = metrics::collaboration_profile(corpus, field, params)?;
    let mut t = ReportTable::new(format!("Profile of {field}"), &PROFILE_COLUMNS);
    note_profile_params(&mut t, params);
    t.push(profile_cells(&p));
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaximaMode {
    /// Highest share of publications with any other field.
    #[default]
    Overall,
    /// Highest share of publications with fields of other disciplines.
    CrossDiscipline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximaParams {
    pub mode: MaximaMode,
    pub omit_below: f64,
    pub partner_threshold: f64,
    /// Restrict candidates to fields with strictly more researchers than this.
    pub min_headcount: Option<u64>,
    /// Disciplines the headcount floor applies to; empty means all.
    pub headcount_disciplines: Vec<String>,
}

impl Default for MaximaParams {
    fn default() -> Self {
        MaximaParams {
            mode: MaximaMode::Overall,
            omit_below: 0.01,
            partner_threshold: 0.10,
            min_headcount: None,
            headcount_disciplines: Vec::new(),
        }
    }
}

/// Per discipline, the field with the highest overall or cross-discipline share.
///
/// Ties go to the smallest field code and are recorded in the provenance.
pub fn max_interdisciplinarity_report(corpus: &Corpus, params: &MaximaParams) -> ReportTable {
    let scheme = corpus.scheme();
    let profile_params = ProfileParams {
        partner_threshold: params.partner_threshold,
        omit_below: params.omit_below,
        ..Default::default()
    };
    let mut cols = vec![("discipline", ColumnKind::Code)];
    cols.extend_from_slice(&PROFILE_COLUMNS[..11]);
    let title = match params.mode {
        MaximaMode::Overall => "Fields with the highest interdisciplinarity per discipline",
        MaximaMode::CrossDiscipline => "Fields with the highest cross-discipline interdisciplinarity per discipline",
    };
    let mut t = ReportTable::new(title, &cols);
    t.note("mode", format!("{:?}", params.mode));
    note_profile_params(&mut t, &profile_params);
    if let Some(h) = params.min_headcount {
        t.note("min_headcount", h);
        if !params.headcount_disciplines.is_empty() {
            t.note("headcount_disciplines", params.headcount_disciplines.join(" "));
        }
    }

    for d in scheme.discipline_ids() {
        let dcode = &scheme.discipline(d).code;
        let floor = params.min_headcount.filter(|_| {
            params.headcount_disciplines.is_empty() || params.headcount_disciplines.iter().any(|c| c == dcode)
        });
        let candidates: Vec<FieldProfile> = scheme
            .members(d)
            .iter()
            .filter(|&&f| !corpus.field_publications(f).is_empty())
            .filter(|&&f| floor.is_none_or(|h| corpus.headcount(f) > h))
            .filter_map(|&f| metrics::collaboration_profile(corpus, &scheme.field(f).code, &profile_params).ok())
            .collect();
        if candidates.is_empty() {
            warn!("discipline {dcode} has no publishing fields; omitted from maxima");
            t.note(format!("omitted.{dcode}"), "no publishing fields");
            continue;
        }
        let key = |p: &FieldProfile| match params.mode {
            MaximaMode::Overall => p.share_cross_field(),
            MaximaMode::CrossDiscipline => p.share_cross_discipline(),
        };
        let top = candidates.iter().map(key).max().expect("non-empty");
        let mut tied: Vec<&FieldProfile> = candidates.iter().filter(|p| key(p) == top).collect();
        tied.sort_by(|a, b| a.field.cmp(&b.field));
        if tied.len() > 1 {
            let codes: Vec<&str> = tied.iter().map(|p| p.field.as_str()).collect();
            t.note(format!("tie.{dcode}"), codes.join(" "));
        }
        let mut row = vec![Cell::Code(dcode.clone())];
        row.extend(profile_cells(tied[0]).into_iter().take(11));
        t.push(row);
    }
    t
}

/// Publication totals and cross-discipline shares per discipline.
pub fn discipline_summary_table(corpus: &Corpus) -> ReportTable {
    let scheme = corpus.scheme();
    let mut t = ReportTable::new(
        "Research staff and publications by discipline",
        &[
            ("discipline", ColumnKind::Code),
            ("universities", ColumnKind::Count),
            ("staff", ColumnKind::Count),
            ("pubs", ColumnKind::Count),
            ("with_other_disciplines", ColumnKind::Ratio),
            ("between_fields_within", ColumnKind::Ratio),
        ],
    );
    for d in scheme.discipline_ids() {
        let s = metrics::discipline_summary(corpus, &scheme.discipline(d).code).expect("registered");
        let ratio = |r: Option<Share>| r.map(Cell::Ratio).unwrap_or(Cell::Empty);
        t.push(vec![
            Cell::Code(s.discipline.clone()),
            Cell::Count(s.universities),
            Cell::Count(s.staff),
            Cell::Count(s.pubs),
            ratio(s.share_with_other_disciplines()),
            ratio(s.share_cross_field_within()),
        ]);
    }
    t
}

/// Headcount/degree rank correlation, over all publishing fields and over
/// those above the headcount floor.
pub fn correlation_table(corpus: &Corpus, discipline: &str, min_headcount: u64) -> Result<ReportTable> {
    let d = corpus.scheme().discipline_id(discipline)?;
    let mut t = ReportTable::new(
        format!("Headcount and degree correlation in {discipline}"),
        &[
            ("discipline", ColumnKind::Code),
            ("scope", ColumnKind::Text),
            ("fields", ColumnKind::Count),
            ("rho", ColumnKind::Text),
        ],
    );
    t.note("min_headcount", min_headcount);
    let publishing: Vec<FieldId> = corpus
        .scheme()
        .members(d)
        .iter()
        .copied()
        .filter(|&f| !corpus.field_publications(f).is_empty())
        .collect();
    let filtered: Vec<FieldId> = metrics::apply_headcount_filter(corpus, discipline, min_headcount)?
        .into_iter()
        .filter(|f| publishing.contains(f))
        .collect();
    for (scope, fields) in [("all", &publishing), ("above_min_headcount", &filtered)] {
        let rho = match metrics::correlation_over(corpus, discipline, fields) {
            Ok(r) => Cell::Text(format!("{:.4}", r.rho)),
            Err(e) => {
                t.note(format!("undefined.{scope}"), e);
                Cell::Empty
            }
        };
        t.push(vec![
            Cell::Code(discipline.to_string()),
            Cell::Text(scope.to_string()),
            Cell::Count(fields.len() as u64),
            rho,
        ]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::FieldScheme;
    use crate::synth::corpus_from_fields;

    fn scheme() -> FieldScheme {
        let mut b = FieldScheme::builder();
        for d in ["CHIM", "BIO"] {
            b.discipline(d, d).unwrap();
        }
        for (f, d) in [("CHIM/01", "CHIM"), ("CHIM/02", "CHIM"), ("CHIM/06", "CHIM"), ("BIO/10", "BIO"), ("BIO/11", "BIO")] {
            b.field(f, f, d).unwrap();
        }
        b.build()
    }

    fn worked_example() -> Corpus {
        corpus_from_fields(
            scheme(),
            &[
                vec!["CHIM/01", "CHIM/02", "CHIM/01"],
                vec!["CHIM/01", "CHIM/06"],
                vec!["CHIM/01", "CHIM/02", "CHIM/06"],
            ],
        )
        .unwrap()
    }

    fn codes(t: &ReportTable, col: &str) -> Vec<String> {
        (0..t.len()).map(|i| t.cell(i, col).unwrap().as_str().unwrap().to_string()).collect()
    }

    #[test]
    fn discipline_pairs_include_zero_joint() {
        let c = corpus_from_fields(scheme(), &[vec!["CHIM/01"], vec!["BIO/10"]]).unwrap();
        let t = discipline_pair_table(&c);
        assert_eq!(t.len(), 1);
        assert_eq!(t.cell(0, "pair").unwrap().as_str(), Some("CHIM-BIO"));
        assert_eq!(t.cell(0, "c").unwrap().as_count(), Some(0));
        assert_eq!(t.cell(0, "d").unwrap().as_ratio(), Some(Share::from_integer(0)));
        assert_eq!(t.cell(0, "max_first").unwrap().as_str(), Some(""));
    }

    #[test]
    fn single_discipline_gives_empty_pair_table() {
        let mut b = FieldScheme::builder();
        b.discipline("CHIM", "").unwrap();
        b.field("CHIM/01", "", "CHIM").unwrap();
        let c = corpus_from_fields(b.build(), &[vec!["CHIM/01"]]).unwrap();
        assert!(discipline_pair_table(&c).is_empty());
    }

    #[test]
    fn shading_flags_directional_maxima() {
        let rows = vec![
            PairRow::new("A", "B", 10, 20, 5),
            PairRow::new("A", "C", 10, 5, 2),
            PairRow::new("B", "C", 20, 5, 1),
        ];
        let s = shade_maxima(&rows);
        // A: 50% vs 20%; B: 25% vs 5%; C: 40% vs 20%
        assert!(s[0].max_for_first && s[0].max_for_second && s[0].is_mutual());
        assert!(!s[1].max_for_first && s[1].max_for_second);
        assert!(!s[2].max_for_first && !s[2].max_for_second);
    }

    #[test]
    fn shading_ties_flag_all() {
        let rows = vec![PairRow::new("A", "B", 10, 10, 3), PairRow::new("A", "C", 10, 10, 3)];
        let s = shade_maxima(&rows);
        assert!(s[0].max_for_first && s[1].max_for_first);
    }

    #[test]
    fn ranking_orders_by_d_then_joint_then_code() {
        let rows = vec![
            PairRow::new("X", "Q", 100, 50, 10),
            PairRow::new("X", "P", 100, 50, 10),
            PairRow::new("X", "R", 100, 10, 20),
            PairRow::new("X", "S", 100, 10, 0),
        ];
        let t = rank_pairs(rows, 20);
        assert_eq!(codes(&t, "pair"), ["X_R", "X_P", "X_Q"]);
        let t = rank_pairs(vec![PairRow::new("X", "P", 100, 50, 10)], 0);
        assert!(t.is_empty());
    }

    #[test]
    fn ranking_from_corpus() {
        let c = worked_example();
        let t = field_pair_ranking(&c, "CHIM/01", 20).unwrap();
        assert_eq!(codes(&t, "pair"), ["CHIM/01_CHIM/02", "CHIM/01_CHIM/06"]);
        assert_eq!(t.cell(0, "d").unwrap().as_ratio(), Some(Share::new(2, 3)));
        let lone = corpus_from_fields(scheme(), &[vec!["BIO/10"]]).unwrap();
        assert!(field_pair_ranking(&lone, "BIO/10", 20).unwrap().is_empty());
        assert!(field_pair_ranking(&c, "NOPE", 20).is_err());
    }

    #[test]
    fn threshold_is_strict_and_directional() {
        let c = worked_example();
        let all = ThresholdParams {
            min_d: 0.0,
            cross_discipline_only: false,
            min_first_pubs: 0,
        };
        let t = threshold_pair_list(&c, &all);
        // every nonzero directed pair of the field pair counts
        assert_eq!(t.len(), 2 * count_field_pairs(&c).len());
        assert_eq!(t.cell(0, "pair").unwrap().as_str(), Some("CHIM/02_CHIM/01"));

        let t = threshold_pair_list(&c, &ThresholdParams { min_d: 1.0, ..all });
        assert!(t.is_empty());
        let t = threshold_pair_list(&c, &ThresholdParams { cross_discipline_only: true, ..all });
        assert!(t.is_empty());
        let t = threshold_pair_list(&c, &ThresholdParams { min_first_pubs: 3, ..all });
        assert_eq!(codes(&t, "pair"), ["CHIM/01_CHIM/02", "CHIM/01_CHIM/06"]);
    }

    #[test]
    fn maxima_modes_and_ties() {
        // CHIM/01: 2 pubs, 1 with CHIM/02 (same discipline) -> overall 50%, cross 0%
        // CHIM/06: 2 pubs, 1 with BIO/10 -> overall 50%, cross 50%
        // CHIM/02: 1 pub, all cross-field -> overall 100%
        let c = corpus_from_fields(
            scheme(),
            &[
                vec!["CHIM/01", "CHIM/02"],
                vec!["CHIM/01"],
                vec!["CHIM/06", "BIO/10"],
                vec!["CHIM/06"],
                vec!["BIO/10"],
                vec!["BIO/11"],
            ],
        )
        .unwrap();
        let overall = max_interdisciplinarity_report(&c, &MaximaParams::default());
        assert_eq!(codes(&overall, "field"), ["CHIM/02", "BIO/10"]);
        let cross = max_interdisciplinarity_report(
            &c,
            &MaximaParams {
                mode: MaximaMode::CrossDiscipline,
                ..Default::default()
            },
        );
        assert_eq!(codes(&cross, "field"), ["CHIM/06", "BIO/10"]);

        // symmetric two-field tie: smallest code wins and the tie is noted
        let tie = corpus_from_fields(scheme(), &[vec!["CHIM/01", "CHIM/02"], vec!["BIO/10"]]).unwrap();
        let t = max_interdisciplinarity_report(&tie, &MaximaParams::default());
        assert_eq!(codes(&t, "field"), ["CHIM/01", "BIO/10"]);
        assert!(t.provenance.iter().any(|(k, v)| k == "tie.CHIM" && v == "CHIM/01 CHIM/02"));
    }

    #[test]
    fn maxima_omits_silent_discipline() {
        let c = corpus_from_fields(scheme(), &[vec!["CHIM/01"]]).unwrap();
        let t = max_interdisciplinarity_report(&c, &MaximaParams::default());
        assert_eq!(codes(&t, "discipline"), ["CHIM"]);
        assert!(t.provenance.iter().any(|(k, _)| k == "omitted.BIO"));
    }

    #[test]
    fn graph_export() {
        let c = worked_example();
        let text = export_graph(&c, Level::Field, 1);
        assert_eq!(
            text,
            "from,to,joint,d,e,avg\n\
             CHIM/01,CHIM/02,2,0.666667,1.000000,0.833333\n\
             CHIM/01,CHIM/06,2,0.666667,1.000000,0.833333\n\
             CHIM/02,CHIM/06,1,0.500000,0.500000,0.500000\n"
        );
        assert_eq!(graph_edges(&c, Level::Field, 2).len(), 2);
        assert!(graph_edges(&c, Level::Discipline, 1).is_empty());
    }

    #[test]
    fn summary_and_profile_tables() {
        let c = worked_example();
        let t = discipline_summary_table(&c);
        assert_eq!(t.len(), 2);
        assert_eq!(t.cell(0, "pubs").unwrap().as_count(), Some(3));
        assert_eq!(t.cell(1, "with_other_disciplines"), Some(&Cell::Empty));
        let t = discipline_profile_table(&c, "CHIM", &ProfileParams::default(), None).unwrap();
        assert_eq!(codes(&t, "field"), ["CHIM/01", "CHIM/02", "CHIM/06"]);
        let t = discipline_profile_table(&c, "CHIM", &ProfileParams::default(), Some(2)).unwrap();
        assert_eq!(codes(&t, "field"), ["CHIM/01"]);
    }
}
