use interdisc::metrics::{
    collaboration_profile, count_discipline_pairs, count_field_pairs, general_degree, spearman, Decomposition,
    ProfileParams, Share,
};
use interdisc::reports::{render, threshold_pair_list, Format, RenderOptions, ThresholdParams};
use interdisc::scheme::load_scheme;
use interdisc::synth::{corpus_from_fields, oracle_pair_counts, oracle_profile};
use interdisc::{Corpus, FieldScheme};
use proptest::prelude::*;

const FIELDS: [(&str, &str); 8] = [
    ("A/01", "A"),
    ("A/02", "A"),
    ("A/03", "A"),
    ("B/01", "B"),
    ("B/02", "B"),
    ("B/03", "B"),
    ("C/01", "C"),
    ("C/02", "C"),
];

fn scheme() -> FieldScheme {
    let mut b = FieldScheme::builder();
    for d in ["A", "B", "C"] {
        b.discipline(d, d).unwrap();
    }
    for (f, d) in FIELDS {
        b.field(f, f, d).unwrap();
    }
    b.build()
}

fn build(pubs: &[Vec<usize>]) -> Corpus {
    let lists: Vec<Vec<&str>> = pubs.iter().map(|p| p.iter().map(|&i| FIELDS[i].0).collect()).collect();
    corpus_from_fields(scheme(), &lists).unwrap()
}

fn pubs() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0..FIELDS.len(), 1..6), 1..40)
}

proptest! {
    #[test]
    fn pair_counts_are_bounded_and_match_oracle(pubs in pubs()) {
        let c = build(&pubs);
        let counts = count_field_pairs(&c);
        prop_assert_eq!(&counts, &oracle_pair_counts(&c).unwrap());
        for (k, &n) in &counts {
            let a = c.field_publications(c.scheme().field_id(k.first()).unwrap()).len() as u64;
            let b = c.field_publications(c.scheme().field_id(k.second()).unwrap()).len() as u64;
            prop_assert!(k.first() < k.second());
            prop_assert!(n >= 1 && n <= a.min(b));
        }
    }

    #[test]
    fn directed_list_is_symmetric(pubs in pubs()) {
        let c = build(&pubs);
        let all = ThresholdParams { min_d: 0.0, cross_discipline_only: false, min_first_pubs: 0 };
        let t = threshold_pair_list(&c, &all);
        prop_assert_eq!(t.len(), 2 * count_field_pairs(&c).len());
        let mut joint = std::collections::HashMap::new();
        for i in 0..t.len() {
            let pair = t.cell(i, "pair").unwrap().as_str().unwrap().to_string();
            joint.insert(pair, t.cell(i, "joint").unwrap().as_count().unwrap());
        }
        for (pair, n) in &joint {
            let (x, y) = pair.split_once('_').unwrap();
            prop_assert_eq!(joint.get(&format!("{y}_{x}")), Some(n));
        }
    }

    #[test]
    fn repeated_field_authors_add_nothing(pubs in pubs(), extra in prop::collection::vec(any::<prop::sample::Index>(), 1..10)) {
        let base = build(&pubs);
        let mut padded = pubs.clone();
        for (i, idx) in extra.iter().enumerate() {
            let p = &mut padded[i % pubs.len()];
            let f = *idx.get(p);
            p.push(f);
        }
        let padded = build(&padded);
        prop_assert_eq!(count_field_pairs(&base), count_field_pairs(&padded));
        prop_assert_eq!(count_discipline_pairs(&base), count_discipline_pairs(&padded));
        for (f, _) in FIELDS {
            prop_assert_eq!(general_degree(&base, f).ok(), general_degree(&padded, f).ok());
        }
    }

    #[test]
    fn decomposition_partitions_cross_field(pubs in pubs(), intra_first in any::<bool>()) {
        let c = build(&pubs);
        let params = ProfileParams {
            decomposition: if intra_first { Decomposition::IntraDisciplineFirst } else { Decomposition::CrossDisciplineFirst },
            ..Default::default()
        };
        for (f, _) in FIELDS {
            let Ok(p) = collaboration_profile(&c, f, &params) else { continue };
            prop_assert_eq!(p.share_intra_discipline() + p.share_cross_discipline(), p.share_cross_field());
            prop_assert_eq!(p.share_cross_field(), general_degree(&c, f).unwrap());
            prop_assert!(p.share_cross_field() <= Share::from_integer(1));
            prop_assert_eq!(&p, &oracle_profile(&c, f, &params).unwrap());
        }
    }

    #[test]
    fn scheme_csv_round_trip(n in 1usize..30, k in 1usize..5) {
        let mut b = FieldScheme::builder();
        for d in 0..k {
            b.discipline(&format!("D{d}"), &format!("Disc, \"{d}\"")).unwrap();
        }
        for i in 0..n {
            b.field(&format!("F/{i:02}"), &format!("Field {i}"), &format!("D{}", i % k)).unwrap();
        }
        let s = b.build();
        let mut first = Vec::new();
        s.write_csv(&mut first).unwrap();
        let loaded = load_scheme(first.as_slice()).unwrap();
        let mut second = Vec::new();
        loaded.write_csv(&mut second).unwrap();
        prop_assert_eq!(first, second);
        prop_assert_eq!(loaded.fields().len(), n);
    }

    #[test]
    fn spearman_ignores_monotone_transforms(xs in prop::collection::vec(-1e3f64..1e3, 3..30), ys in prop::collection::vec(-1e3f64..1e3, 3..30)) {
        let n = xs.len().min(ys.len());
        let (x, y) = (&xs[..n], &ys[..n]);
        let Ok(rho) = spearman(x, y) else { return Ok(()) };
        prop_assert!((-1.0..=1.0).contains(&rho));
        let tx: Vec<f64> = x.iter().map(|v| (v / 100.0).exp() + 3.0 * v).collect();
        prop_assert!((spearman(&tx, y).unwrap() - rho).abs() < 1e-12);
        prop_assert!((spearman(y, x).unwrap() - rho).abs() < 1e-12);
    }

    #[test]
    fn rendered_csv_parses_back(pubs in pubs(), raw in any::<bool>()) {
        let c = build(&pubs);
        let t = interdisc::reports::field_pair_table(&c);
        let text = render(&t, Format::Csv, &RenderOptions { raw, provenance: false });
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let width = r.headers().unwrap().len();
        prop_assert_eq!(width, if raw { 10 } else { 7 });
        let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
        prop_assert_eq!(rows.len(), t.len());
        for (i, rec) in rows.iter().enumerate() {
            prop_assert_eq!(rec[3].parse::<u64>().unwrap(), t.cell(i, "c").unwrap().as_count().unwrap());
        }
    }
}
