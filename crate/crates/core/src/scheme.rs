//! Two-level field classification: every field belongs to exactly one
//! discipline.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::tabular;

/// Dense index of a field inside its scheme (registry order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(pub(crate) u32);

impl FieldId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index of a discipline inside its scheme (first-appearance order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisciplineId(pub(crate) u32);

impl DisciplineId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discipline {
    pub code: String,
    pub title: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub code: String,
    pub title: String,
    pub discipline: DisciplineId,
    /// Registry line the field was read from, when loaded from a file.
    pub line: Option<u64>,
}

#[derive(Debug, Clone, Default)]
pub struct FieldScheme {
    disciplines: Vec<Discipline>,
    fields: Vec<Field>,
    field_index: HashMap<String, FieldId>,
    discipline_index: HashMap<String, DisciplineId>,
    members: Vec<Vec<FieldId>>,
}

impl PartialEq for FieldScheme {
    fn eq(&self, other: &Self) -> bool {
        self.disciplines == other.disciplines
            && self.fields.len() == other.fields.len()
            && self
                .fields
                .iter()
                .zip(&other.fields)
                .all(|(a, b)| a.code == b.code && a.title == b.title && a.discipline == b.discipline)
    }
}

impl FieldScheme {
    pub fn builder() -> SchemeBuilder {
        SchemeBuilder::default()
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn disciplines(&self) -> &[Discipline] {
        &self.disciplines
    }

    pub fn field(&self, id: FieldId) -> &Field {
        &self.fields[id.index()]
    }

    pub fn discipline(&self, id: DisciplineId) -> &Discipline {
        &self.disciplines[id.index()]
    }

    pub fn field_id(&self, code: &str) -> Result<FieldId> {
        self.field_index
            .get(code.trim())
            .copied()
            .ok_or_else(|| Error::UnknownField(code.to_string()))
    }

    pub fn discipline_id(&self, code: &str) -> Result<DisciplineId> {
        self.discipline_index
            .get(code.trim())
            .copied()
            .ok_or_else(|| Error::UnknownDiscipline(code.to_string()))
    }

    /// Parent discipline of a registered field code.
    pub fn discipline_of(&self, code: &str) -> Result<&Discipline> {
        let id = self.field_id(code)?;
        Ok(self.discipline(self.field(id).discipline))
    }

    pub fn field_discipline(&self, id: FieldId) -> DisciplineId {
        self.fields[id.index()].discipline
    }

    /// Fields of a discipline, in registry order.
    pub fn members(&self, id: DisciplineId) -> &[FieldId] {
        &self.members[id.index()]
    }

    pub fn field_ids(&self) -> impl Iterator<Item = FieldId> + '_ {
        (0..self.fields.len() as u32).map(FieldId)
    }

    pub fn discipline_ids(&self) -> impl Iterator<Item = DisciplineId> + '_ {
        (0..self.disciplines.len() as u32).map(DisciplineId)
    }

    /// Serializes the scheme in the registry file format.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let io = |e: csv::Error| Error::from_csv("scheme", e);
        w.write_record(["field_code", "field_title", "discipline_code", "discipline_title"])
            .map_err(io)?;
        for f in &self.fields {
            let d = self.discipline(f.discipline);
            w.write_record([&f.code, &f.title, &d.code, &d.title]).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct SchemeBuilder {
    scheme: FieldScheme,
}

impl SchemeBuilder {
    pub fn discipline(&mut self, code: &str, title: &str) -> Result<DisciplineId> {
        let code = code.trim();
        if code.is_empty() {
            return Err(Error::EmptyCode {
                source_name: "scheme".into(),
                line: 0,
                what: "discipline",
            });
        }
        if let Some(&id) = self.scheme.discipline_index.get(code) {
            let d = &mut self.scheme.disciplines[id.index()];
            if d.title.is_empty() {
                d.title = title.trim().to_string();
            }
            return Ok(id);
        }
        let id = DisciplineId(self.scheme.disciplines.len() as u32);
        self.scheme.disciplines.push(Discipline {
            code: code.to_string(),
            title: title.trim().to_string(),
        });
        self.scheme.discipline_index.insert(code.to_string(), id);
        self.scheme.members.push(Vec::new());
        Ok(id)
    }

    pub fn field(&mut self, code: &str, title: &str, discipline: &str) -> Result<FieldId> {
        self.field_at(code, title, discipline, None, "scheme")
    }

    fn field_at(
        &mut self,
        code: &str,
        title: &str,
        discipline: &str,
        line: Option<u64>,
        source_name: &str,
    ) -> Result<FieldId> {
        let code = code.trim();
        let at = line.unwrap_or(0);
        if code.is_empty() {
            return Err(Error::EmptyCode {
                source_name: source_name.into(),
                line: at,
                what: "field",
            });
        }
        if self.scheme.field_index.contains_key(code) {
            return Err(Error::DuplicateField {
                source_name: source_name.into(),
                line: at,
                code: code.to_string(),
            });
        }
        let disc = self
            .scheme
            .discipline_index
            .get(discipline.trim())
            .copied()
            .ok_or_else(|| Error::UndeclaredDiscipline {
                source_name: source_name.into(),
                line: at,
                field: code.to_string(),
            })?;
        let id = FieldId(self.scheme.fields.len() as u32);
        self.scheme.fields.push(Field {
            code: code.to_string(),
            title: title.trim().to_string(),
            discipline: disc,
            line,
        });
        self.scheme.field_index.insert(code.to_string(), id);
        self.scheme.members[disc.index()].push(id);
        Ok(id)
    }

    pub fn build(self) -> FieldScheme {
        self.scheme
    }
}

/// Loads a registry stream with columns
/// `field_code,field_title,discipline_code[,discipline_title]`.
///
/// Disciplines are declared by their first appearance.
pub fn load_scheme<R: Read>(input: R) -> Result<FieldScheme> {
    load_scheme_named(input, "scheme")
}

pub fn load_scheme_named<R: Read>(input: R, source_name: &str) -> Result<FieldScheme> {
    let mut b = SchemeBuilder::default();
    tabular::for_each_row(input, source_name, 3, |line, rec| {
        let disc_code = rec[2].trim();
        if disc_code.is_empty() {
            return Err(Error::UndeclaredDiscipline {
                source_name: source_name.into(),
                line,
                field: rec[0].to_string(),
            });
        }
        b.discipline(disc_code, tabular::optional(rec, 3).unwrap_or(""))?;
        b.field_at(&rec[0], &rec[1], disc_code, Some(line), source_name)?;
        Ok(())
    })?;
    Ok(b.build())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warn,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warn => "warn",
            Severity::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub severity: Severity,
    pub line: Option<u64>,
    pub code: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{}: line {}: {}: {}", self.severity, l, self.code, self.message),
            None => write!(f, "{}: {}: {}", self.severity, self.code, self.message),
        }
    }
}

/// Lists invariant violations; an empty list means the scheme is well formed.
pub fn validate_scheme(scheme: &FieldScheme) -> Vec<Violation> {
    let mut out = Vec::new();
    for id in scheme.discipline_ids() {
        if scheme.members(id).is_empty() {
            out.push(Violation {
                severity: Severity::Warn,
                line: None,
                code: scheme.discipline(id).code.clone(),
                message: "discipline has no fields".into(),
            });
        }
    }
    for f in scheme.fields() {
        if f.title.is_empty() {
            out.push(Violation {
                severity: Severity::Warn,
                line: f.line,
                code: f.code.clone(),
                message: "field has an empty title".into(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "field_code,field_title,discipline_code,discipline_title\n";

    fn load(body: &str) -> Result<FieldScheme> {
        load_scheme(format!("{HEADER}{body}").as_bytes())
    }

    #[test]
    fn loads_two_chemistry_fields() {
        let s = load("CHIM/01,Analytical Chemistry,CHIM\nCHIM/02,Physical Chemistry,CHIM\n").unwrap();
        assert_eq!(s.disciplines().len(), 1);
        assert_eq!(s.fields().len(), 2);
        assert_eq!(s.discipline_of("CHIM/01").unwrap().code, "CHIM");
    }

    #[test]
    fn header_only_is_empty_scheme() {
        let s = load("").unwrap();
        assert!(s.fields().is_empty());
        assert!(s.disciplines().is_empty());
    }

    #[test]
    fn missing_header_is_rejected() {
        assert!(matches!(load_scheme("".as_bytes()), Err(Error::Malformed { .. })));
    }

    #[test]
    fn duplicate_code_is_fatal() {
        let err = load("CHIM/01,A,CHIM\nCHIM/01,B,CHIM\n").unwrap_err();
        match err {
            Error::DuplicateField { line, code, .. } => {
                assert_eq!(line, 3);
                assert_eq!(code, "CHIM/01");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn empty_codes_are_fatal() {
        assert!(matches!(load(" ,A,CHIM\n"), Err(Error::EmptyCode { .. })));
        assert!(matches!(load("CHIM/01,A, \n"), Err(Error::UndeclaredDiscipline { .. })));
    }

    #[test]
    fn comments_and_whitespace() {
        let s = load("# chemistry\n  CHIM/01 , Analytical Chemistry , CHIM , Chemistry\n").unwrap();
        assert_eq!(s.field_id("CHIM/01").unwrap(), FieldId(0));
        assert_eq!(s.discipline(DisciplineId(0)).title, "Chemistry");
        // matching is case-sensitive
        assert!(s.field_id("chim/01").is_err());
    }

    #[test]
    fn discipline_lookup() {
        let s = load("CHIM/01,Analytical Chemistry,CHIM\nBIO/10,Biochemistry,BIO\n").unwrap();
        assert_eq!(s.discipline_of("BIO/10").unwrap().code, "BIO");
        assert!(matches!(s.discipline_of("XYZ/99"), Err(Error::UnknownField(_))));
    }

    #[test]
    fn discipline_order_is_first_appearance() {
        let s = load("MED/01,x,MED\nBIO/01,y,BIO\nMED/02,z,MED\n").unwrap();
        let codes: Vec<_> = s.disciplines().iter().map(|d| d.code.as_str()).collect();
        assert_eq!(codes, ["MED", "BIO"]);
        assert_eq!(s.members(DisciplineId(0)).len(), 2);
    }

    #[test]
    fn builder_rejects_undeclared_discipline() {
        let mut b = FieldScheme::builder();
        assert!(matches!(b.field("A/1", "a", "A"), Err(Error::UndeclaredDiscipline { .. })));
    }

    #[test]
    fn validate_reports_violations() {
        let s = load("CHIM/01,Analytical Chemistry,CHIM\n").unwrap();
        assert!(validate_scheme(&s).is_empty());

        let mut b = FieldScheme::builder();
        b.discipline("CHIM", "Chemistry").unwrap();
        b.discipline("EMPTY", "").unwrap();
        b.field("CHIM/01", "Analytical Chemistry", "CHIM").unwrap();
        let v = validate_scheme(&b.build());
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].severity, Severity::Warn);
        assert_eq!(v[0].code, "EMPTY");

        let s = load("CHIM/01,,CHIM\n").unwrap();
        let v = validate_scheme(&s);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].line, Some(2));
        assert_eq!(v[0].code, "CHIM/01");
    }
}
