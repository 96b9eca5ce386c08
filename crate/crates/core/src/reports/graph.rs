use std::fmt::Write as _;

use crate::corpus::Corpus;
use crate::metrics::{count_discipline_pairs, count_field_pairs, pair_incidence, Share};

use super::table::raw;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Field,
    Discipline,
}

/// Weighted undirected edge; `from < to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub joint: u64,
    pub d: Share,
    pub e: Share,
    pub avg: Share,
}

/// Edges with at least `min_joint` joint publications, in canonical pair order.
pub fn graph_edges(corpus: &Corpus, level: Level, min_joint: u64) -> Vec<GraphEdge> {
    let scheme = corpus.scheme();
    let (counts, total): (_, Box<dyn Fn(&str) -> u64>) = match level {
        Level::Field => (
            count_field_pairs(corpus),
            Box::new(|code| {
                scheme
                    .field_id(code)
                    .map(|f| corpus.field_publications(f).len() as u64)
                    .unwrap_or(0)
            }),
        ),
        Level::Discipline => (
            count_discipline_pairs(corpus),
            Box::new(|code| {
                scheme
                    .discipline_id(code)
                    .map(|d| corpus.discipline_publications(d))
                    .unwrap_or(0)
            }),
        ),
    };
    counts
        .into_iter()
        .filter(|&(_, c)| c >= min_joint.max(1))
        .filter_map(|(k, c)| {
            let s = pair_incidence(total(k.first()), total(k.second()), c).ok()?;
            Some(GraphEdge {
                from: k.first().to_string(),
                to: k.second().to_string(),
                joint: c,
                d: s.d,
                e: s.e,
                avg: s.avg,
            })
        })
        .collect()
}

/// `from,to,joint,d,e,avg` edge list with six-decimal ratios.
pub fn export_graph(corpus: &Corpus, level: Level, min_joint: u64) -> String {
    let mut out = String::from("from,to,joint,d,e,avg\n");
    for e in graph_edges(corpus, level, min_joint) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            e.from,
            e.to,
            e.joint,
            raw(&e.d),
            raw(&e.e),
            raw(&e.avg)
        );
    }
    out
}
