//! Linked researcher / publication / authorship data.
//!
//! Each retained authorship is linked to exactly one field through the
//! author's classification; every publication then carries a field multiset
//! (one entry per matched author) and the deduplicated field and discipline
//! sets derived from it.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{Read, Write};
use std::ops::RangeInclusive;

use log::warn;

use crate::error::{Error, Result};
use crate::scheme::{DisciplineId, FieldId, FieldScheme};
use crate::tabular;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Researcher {
    pub id: String,
    pub name: Option<String>,
    pub field: FieldId,
    pub university: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub id: String,
    pub year: Option<i32>,
    /// Matched authors as indices into the corpus researchers, in authorship order.
    pub authors: Vec<u32>,
}

/// Unlinked researcher row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResearcherRecord {
    pub id: String,
    pub name: Option<String>,
    pub field_code: String,
    pub university: Option<String>,
    pub line: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicationRecord {
    pub id: String,
    pub year: Option<i32>,
    pub line: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorshipRecord {
    pub publication: String,
    pub researcher: String,
    pub line: u64,
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Inclusive publication year window; `None` accepts every publication.
    pub years: Option<RangeInclusive<i32>>,
}

/// Counts of rows dropped or collapsed while linking.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LinkReport {
    pub unmatched: u64,
    pub empty_pubs: u64,
    pub duplicates: u64,
    pub year_filtered: u64,
}

impl fmt::Display for LinkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "link.unmatched_authorships={}", self.unmatched)?;
        writeln!(f, "link.excluded_publications={}", self.empty_pubs)?;
        writeln!(f, "link.collapsed_duplicates={}", self.duplicates)?;
        write!(f, "link.year_filtered_publications={}", self.year_filtered)
    }
}

/// Compressed list-of-sets storage.
#[derive(Debug, Clone, Default)]
struct Packed<T> {
    offsets: Vec<u32>,
    items: Vec<T>,
}

impl<T: Copy> Packed<T> {
    fn new() -> Self {
        Packed {
            offsets: vec![0],
            items: Vec::new(),
        }
    }

    fn push(&mut self, items: &[T]) {
        self.items.extend_from_slice(items);
        self.offsets.push(self.items.len() as u32);
    }

    fn get(&self, i: usize) -> &[T] {
        &self.items[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    scheme: FieldScheme,
    researchers: Vec<Researcher>,
    researcher_index: HashMap<String, u32>,
    publications: Vec<Publication>,
    publication_index: HashMap<String, u32>,
    field_sets: Packed<FieldId>,
    discipline_sets: Packed<DisciplineId>,
    field_pubs: Vec<Vec<u32>>,
    field_headcount: Vec<u64>,
    field_universities: Vec<u64>,
    discipline_universities: Vec<u64>,
    link_report: LinkReport,
}

/// Per-unit totals for a field or a discipline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCounts {
    pub code: String,
    pub publications: u64,
    pub headcount: u64,
    pub universities: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSummary {
    /// Registry order.
    pub fields: Vec<UnitCounts>,
    /// First-appearance order.
    pub disciplines: Vec<UnitCounts>,
}

impl Corpus {
    /// Links raw records against the scheme.
    pub fn from_records(
        scheme: FieldScheme,
        researchers: Vec<ResearcherRecord>,
        publications: Vec<PublicationRecord>,
        authorships: Vec<AuthorshipRecord>,
        options: &LoadOptions,
    ) -> Result<Corpus> {
        let mut linker = Linker::new(scheme, options.clone());
        for r in researchers {
            linker.researcher(r, "researchers")?;
        }
        for p in publications {
            linker.publication(p, "publications")?;
        }
        for a in &authorships {
            linker.authorship(&a.publication, &a.researcher, a.line, "authorships")?;
        }
        Ok(linker.finish())
    }

    pub fn scheme(&self) -> &FieldScheme {
        &self.scheme
    }

    pub fn researchers(&self) -> &[Researcher] {
        &self.researchers
    }

    pub fn researcher(&self, id: &str) -> Option<&Researcher> {
        self.researcher_index.get(id).map(|&i| &self.researchers[i as usize])
    }

    pub fn publications(&self) -> &[Publication] {
        &self.publications
    }

    pub fn publication_index(&self, id: &str) -> Result<usize> {
        self.publication_index
            .get(id)
            .map(|&i| i as usize)
            .ok_or_else(|| Error::UnknownPublication(id.to_string()))
    }

    pub fn link_report(&self) -> LinkReport {
        self.link_report
    }

    /// Author ids of a publication in authorship order.
    pub fn author_ids(&self, pub_idx: usize) -> impl Iterator<Item = &str> + '_ {
        self.publications[pub_idx]
            .authors
            .iter()
            .map(|&r| self.researchers[r as usize].id.as_str())
    }

    /// One field code per matched author, in author order.
    pub fn field_multiset(&self, pub_id: &str) -> Result<Vec<&str>> {
        let idx = self.publication_index(pub_id)?;
        Ok(self.publications[idx]
            .authors
            .iter()
            .map(|&r| self.scheme.field(self.researchers[r as usize].field).code.as_str())
            .collect())
    }

    /// Distinct field codes of a publication, sorted by code.
    pub fn field_set(&self, pub_id: &str) -> Result<Vec<&str>> {
        let idx = self.publication_index(pub_id)?;
        let mut codes: Vec<&str> = self
            .field_set_ids(idx)
            .iter()
            .map(|&f| self.scheme.field(f).code.as_str())
            .collect();
        codes.sort_unstable();
        Ok(codes)
    }

    /// Distinct discipline codes of a publication, sorted by code.
    pub fn discipline_set(&self, pub_id: &str) -> Result<Vec<&str>> {
        let idx = self.publication_index(pub_id)?;
        let mut codes: Vec<&str> = self
            .discipline_set_ids(idx)
            .iter()
            .map(|&d| self.scheme.discipline(d).code.as_str())
            .collect();
        codes.sort_unstable();
        Ok(codes)
    }

    /// Distinct fields of a publication, ascending by id.
    pub fn field_set_ids(&self, pub_idx: usize) -> &[FieldId] {
        self.field_sets.get(pub_idx)
    }

    /// Distinct disciplines of a publication, ascending by id.
    pub fn discipline_set_ids(&self, pub_idx: usize) -> &[DisciplineId] {
        self.discipline_sets.get(pub_idx)
    }

    /// Indices of the publications whose field set contains `field`.
    pub fn field_publications(&self, field: FieldId) -> &[u32] {
        &self.field_pubs[field.index()]
    }

    pub fn headcount(&self, field: FieldId) -> u64 {
        self.field_headcount[field.index()]
    }

    pub fn universities(&self, field: FieldId) -> u64 {
        self.field_universities[field.index()]
    }

    pub fn discipline_universities(&self, discipline: DisciplineId) -> u64 {
        self.discipline_universities[discipline.index()]
    }

    pub fn discipline_headcount(&self, discipline: DisciplineId) -> u64 {
        self.scheme
            .members(discipline)
            .iter()
            .map(|&f| self.headcount(f))
            .sum()
    }

    /// Number of publications whose discipline set contains `discipline`.
    pub fn discipline_publications(&self, discipline: DisciplineId) -> u64 {
        (0..self.publications.len())
            .filter(|&p| self.discipline_set_ids(p).contains(&discipline))
            .count() as u64
    }

    /// Whole-count publication totals, headcounts and university counts.
    pub fn stats(&self) -> CorpusSummary {
        let mut disc_pubs = vec![0u64; self.scheme.disciplines().len()];
        for p in 0..self.publications.len() {
            for &d in self.discipline_set_ids(p) {
                disc_pubs[d.index()] += 1;
            }
        }
        let fields = self
            .scheme
            .field_ids()
            .map(|f| UnitCounts {
                code: self.scheme.field(f).code.clone(),
                publications: self.field_pubs[f.index()].len() as u64,
                headcount: self.headcount(f),
                universities: self.universities(f),
            })
            .collect();
        let disciplines = self
            .scheme
            .discipline_ids()
            .map(|d| UnitCounts {
                code: self.scheme.discipline(d).code.clone(),
                publications: disc_pubs[d.index()],
                headcount: self.discipline_headcount(d),
                universities: self.discipline_universities(d),
            })
            .collect();
        CorpusSummary { fields, disciplines }
    }

    pub fn write_researchers<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        let io = |e| Error::from_csv("researchers", e);
        w.write_record(["researcher_id", "name", "field_code", "university_id"])
            .map_err(io)?;
        for r in &self.researchers {
            w.write_record([
                r.id.as_str(),
                r.name.as_deref().unwrap_or(""),
                self.scheme.field(r.field).code.as_str(),
                r.university.as_deref().unwrap_or(""),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_publications<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        let io = |e| Error::from_csv("publications", e);
        w.write_record(["pub_id", "year"]).map_err(io)?;
        for p in &self.publications {
            let year = p.year.map(|y| y.to_string()).unwrap_or_default();
            w.write_record([p.id.as_str(), year.as_str()]).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_authorships<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        let io = |e| Error::from_csv("authorships", e);
        w.write_record(["pub_id", "researcher_id"]).map_err(io)?;
        for (i, p) in self.publications.iter().enumerate() {
            for a in self.author_ids(i) {
                w.write_record([p.id.as_str(), a]).map_err(io)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Reads the three corpus files and links them against `scheme`.
pub fn load_corpus<R1: Read, R2: Read, R3: Read>(
    scheme: FieldScheme,
    researchers: R1,
    publications: R2,
    authorships: R3,
    options: &LoadOptions,
) -> Result<Corpus> {
    let mut linker = Linker::new(scheme, options.clone());
    tabular::for_each_row(researchers, "researchers", 3, |line, rec| {
        linker.researcher(
            ResearcherRecord {
                id: rec[0].to_string(),
                name: tabular::optional(rec, 1).map(str::to_string),
                field_code: rec[2].to_string(),
                university: tabular::optional(rec, 3).map(str::to_string),
                line,
            },
            "researchers",
        )
    })?;
    tabular::for_each_row(publications, "publications", 1, |line, rec| {
        let year = match tabular::optional(rec, 1) {
            None => None,
            Some(y) => Some(
                y.parse::<i32>()
                    .map_err(|_| Error::malformed("publications", line, format!("invalid year '{y}'")))?,
            ),
        };
        linker.publication(
            PublicationRecord {
                id: rec[0].to_string(),
                year,
                line,
            },
            "publications",
        )
    })?;
    tabular::for_each_row(authorships, "authorships", 2, |line, rec| {
        linker.authorship(&rec[0], &rec[1], line, "authorships")
    })?;
    Ok(linker.finish())
}

struct Linker {
    scheme: FieldScheme,
    options: LoadOptions,
    researchers: Vec<Researcher>,
    researcher_index: HashMap<String, u32>,
    publications: Vec<Publication>,
    /// `None` marks a publication dropped by the year window.
    publication_index: HashMap<String, Option<u32>>,
    report: LinkReport,
}

impl Linker {
    fn new(scheme: FieldScheme, options: LoadOptions) -> Self {
        Linker {
            scheme,
            options,
            researchers: Vec::new(),
            researcher_index: HashMap::new(),
            publications: Vec::new(),
            publication_index: HashMap::new(),
            report: LinkReport::default(),
        }
    }

    fn researcher(&mut self, r: ResearcherRecord, source_name: &str) -> Result<()> {
        let id = r.id.trim();
        if id.is_empty() {
            return Err(Error::EmptyCode {
                source_name: source_name.into(),
                line: r.line,
                what: "researcher",
            });
        }
        if self.researcher_index.contains_key(id) {
            return Err(Error::DuplicateResearcher {
                source_name: source_name.into(),
                line: r.line,
                id: id.to_string(),
            });
        }
        let field = self.scheme.field_id(&r.field_code).map_err(|_| Error::UnregisteredField {
            source_name: source_name.into(),
            line: r.line,
            id: id.to_string(),
            code: r.field_code.clone(),
        })?;
        self.researcher_index
            .insert(id.to_string(), self.researchers.len() as u32);
        self.researchers.push(Researcher {
            id: id.to_string(),
            name: r.name,
            field,
            university: r.university,
        });
        Ok(())
    }

    fn publication(&mut self, p: PublicationRecord, source_name: &str) -> Result<()> {
        let id = p.id.trim();
        if id.is_empty() {
            return Err(Error::EmptyCode {
                source_name: source_name.into(),
                line: p.line,
                what: "publication",
            });
        }
        if self.publication_index.contains_key(id) {
            return Err(Error::DuplicatePublication {
                source_name: source_name.into(),
                line: p.line,
                id: id.to_string(),
            });
        }
        let keep = match (&self.options.years, p.year) {
            (None, _) => true,
            (Some(range), Some(y)) => range.contains(&y),
            (Some(_), None) => false,
        };
        if keep {
            self.publication_index
                .insert(id.to_string(), Some(self.publications.len() as u32));
            self.publications.push(Publication {
                id: id.to_string(),
                year: p.year,
                authors: Vec::new(),
            });
        } else {
            self.report.year_filtered += 1;
            self.publication_index.insert(id.to_string(), None);
        }
        Ok(())
    }

    fn authorship(&mut self, pub_id: &str, researcher: &str, line: u64, source_name: &str) -> Result<()> {
        let slot = match self.publication_index.get(pub_id.trim()) {
            None => {
                return Err(Error::UnknownPublicationRef {
                    source_name: source_name.into(),
                    line,
                    id: pub_id.to_string(),
                })
            }
            Some(None) => return Ok(()),
            Some(Some(i)) => *i as usize,
        };
        let Some(&r) = self.researcher_index.get(researcher.trim()) else {
            self.report.unmatched += 1;
            return Ok(());
        };
        let authors = &mut self.publications[slot].authors;
        if authors.contains(&r) {
            self.report.duplicates += 1;
        } else {
            authors.push(r);
        }
        Ok(())
    }

    fn finish(mut self) -> Corpus {
        let before = self.publications.len();
        self.publications.retain(|p| !p.authors.is_empty());
        self.report.empty_pubs = (before - self.publications.len()) as u64;
        if self.report.unmatched > 0 {
            warn!(
                "dropped {} authorships with no matching researcher",
                self.report.unmatched
            );
        }
        if self.report.empty_pubs > 0 {
            warn!(
                "excluded {} publications with no matched authors",
                self.report.empty_pubs
            );
        }

        let n_fields = self.scheme.fields().len();
        let n_disc = self.scheme.disciplines().len();
        let mut field_sets = Packed::new();
        let mut discipline_sets = Packed::new();
        let mut field_pubs = vec![Vec::new(); n_fields];
        let mut fbuf: Vec<FieldId> = Vec::new();
        let mut dbuf: Vec<DisciplineId> = Vec::new();
        let mut publication_index = HashMap::with_capacity(self.publications.len());
        for (i, p) in self.publications.iter().enumerate() {
            publication_index.insert(p.id.clone(), i as u32);
            fbuf.clear();
            fbuf.extend(p.authors.iter().map(|&r| self.researchers[r as usize].field));
            fbuf.sort_unstable();
            fbuf.dedup();
            dbuf.clear();
            dbuf.extend(fbuf.iter().map(|&f| self.scheme.field_discipline(f)));
            dbuf.sort_unstable();
            dbuf.dedup();
            for &f in &fbuf {
                field_pubs[f.index()].push(i as u32);
            }
            field_sets.push(&fbuf);
            discipline_sets.push(&dbuf);
        }

        let mut field_headcount = vec![0u64; n_fields];
        let mut field_unis: Vec<HashSet<&str>> = vec![HashSet::new(); n_fields];
        let mut disc_unis: Vec<HashSet<&str>> = vec![HashSet::new(); n_disc];
        for r in &self.researchers {
            field_headcount[r.field.index()] += 1;
            if let Some(u) = r.university.as_deref() {
                field_unis[r.field.index()].insert(u);
                disc_unis[self.scheme.field_discipline(r.field).index()].insert(u);
            }
        }
        let field_universities = field_unis.iter().map(|s| s.len() as u64).collect();
        let discipline_universities = disc_unis.iter().map(|s| s.len() as u64).collect();

        Corpus {
            scheme: self.scheme,
            researchers: self.researchers,
            researcher_index: self.researcher_index,
            publications: self.publications,
            publication_index,
            field_sets,
            discipline_sets,
            field_pubs,
            field_headcount,
            field_universities,
            discipline_universities,
            link_report: self.report,
        }
    }
}
