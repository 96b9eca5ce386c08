#![allow(dead_code)]

use std::fs::File;
use std::path::{Path, PathBuf};

use interdisc::reports::PairRow;
use interdisc::scheme::load_scheme;
use interdisc::synth::corpus_from_fields;
use interdisc::{Corpus, FieldScheme};

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// A printed row: count triple plus the printed percentages.
#[derive(Debug, Clone)]
pub struct Printed {
    pub row: PairRow,
    pub d: f64,
    pub e: f64,
    pub avg: Option<f64>,
}

pub fn printed_rows(name: &str) -> Vec<Printed> {
    let mut r = csv::Reader::from_path(data(name)).unwrap();
    let headers = r.headers().unwrap().clone();
    let col = |n: &str| headers.iter().position(|h| h == n);
    let (ia, ib, ic, id, ie) = (col("a").unwrap(), col("b").unwrap(), col("c").unwrap(), col("d_pct").unwrap(), col("e_pct").unwrap());
    let iavg = col("avg_pct");
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            Printed {
                row: PairRow::new(&rec[0], &rec[1], rec[ia].parse().unwrap(), rec[ib].parse().unwrap(), rec[ic].parse().unwrap()),
                d: rec[id].parse().unwrap(),
                e: rec[ie].parse().unwrap(),
                avg: iavg.map(|i| rec[i].parse().unwrap()),
            }
        })
        .collect()
}

pub fn registry() -> FieldScheme {
    load_scheme(File::open(data("annex1_scheme.csv")).unwrap()).unwrap()
}

pub fn chem_scheme() -> FieldScheme {
    let mut b = FieldScheme::builder();
    b.discipline("CHIM", "Chemical sciences").unwrap();
    for f in ["CHIM/01", "CHIM/02", "CHIM/06"] {
        b.field(f, f, "CHIM").unwrap();
    }
    b.build()
}

/// Three publications with author fields [CHIM/01, CHIM/02, CHIM/01],
/// [CHIM/01, CHIM/06] and [CHIM/01, CHIM/02, CHIM/06].
pub fn worked_example() -> Corpus {
    corpus_from_fields(
        chem_scheme(),
        &[
            vec!["CHIM/01", "CHIM/02", "CHIM/01"],
            vec!["CHIM/01", "CHIM/06"],
            vec!["CHIM/01", "CHIM/02", "CHIM/06"],
        ],
    )
    .unwrap()
}

/// Percent rounded to one decimal as the tables print it.
pub fn pct(r: &interdisc::metrics::Share) -> f64 {
    interdisc::reports::percent_tenths(r) as f64 / 10.0
}

pub fn within_tenth(a: f64, b: f64) -> bool {
    (a - b).abs() <= 0.1 + 1e-9
}
