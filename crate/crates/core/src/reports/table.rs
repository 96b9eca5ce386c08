use std::fmt::Write as _;

use crate::metrics::{to_f64, Share};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Count,
    Ratio,
    Code,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Count(u64),
    Ratio(Share),
    Code(String),
    Text(String),
    /// Undefined value, e.g. a ratio over an empty denominator.
    Empty,
}

impl Cell {
    pub fn as_count(&self) -> Option<u64> {
        match self {
            Cell::Count(c) => Some(*c),
            _ => None,
        }
    }

    pub fn as_ratio(&self) -> Option<Share> {
        match self {
            Cell::Ratio(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Cell::Code(s) | Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    fn rendered(&self) -> String {
        match self {
            Cell::Count(c) => c.to_string(),
            Cell::Ratio(r) => percent(r),
            Cell::Code(s) | Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// Ordered typed rows plus the parameters that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportTable {
    pub title: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub provenance: Vec<(String, String)>,
}

impl ReportTable {
    pub fn new(title: impl Into<String>, columns: &[(&str, ColumnKind)]) -> Self {
        ReportTable {
            title: title.into(),
            columns: columns
                .iter()
                .map(|(n, k)| Column {
                    name: n.to_string(),
                    kind: *k,
                })
                .collect(),
            rows: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row arity does not match columns");
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.provenance.push((key.into(), value.to_string()));
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Cell by row index and column name.
    pub fn cell(&self, row: usize, name: &str) -> Option<&Cell> {
        self.column(name).and_then(|c| self.rows.get(row).map(|r| &r[c]))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Tenths of a percent, rounded half away from zero, computed exactly.
pub fn percent_tenths(r: &Share) -> u64 {
    let num = *r.numer() as u128 * 1000;
    let den = *r.denom() as u128;
    ((2 * num + den) / (2 * den)) as u64
}

/// `2/3` renders as `66.7%`.
pub fn percent(r: &Share) -> String {
    let t = percent_tenths(r);
    format!("{}.{}%", t / 10, t % 10)
}

/// Six-decimal rendering used in raw columns and edge lists.
pub fn raw(r: &Share) -> String {
    format!("{:.6}", to_f64(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Append a `<name>_raw` column after every ratio column (CSV only).
    pub raw: bool,
    /// Emit the title and the provenance block.
    pub provenance: bool,
}

pub fn render(table: &ReportTable, format: Format, options: &RenderOptions) -> String {
    match format {
        Format::Csv => render_csv(table, options),
        Format::Markdown => render_markdown(table, options),
    }
}

fn render_csv(table: &ReportTable, options: &RenderOptions) -> String {
    let mut out = String::new();
    if options.provenance {
        let _ = writeln!(out, "# {}", table.title);
        for (k, v) in &table.provenance {
            let _ = writeln!(out, "# {k}: {v}");
        }
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = Vec::new();
    for c in &table.columns {
        header.push(c.name.clone());
        if options.raw && c.kind == ColumnKind::Ratio {
            header.push(format!("{}_raw", c.name));
        }
    }
    w.write_record(&header).expect("in-memory write");
    for row in &table.rows {
        let mut rec = Vec::with_capacity(header.len());
        for (c, cell) in table.columns.iter().zip(row) {
            rec.push(cell.rendered());
            if options.raw && c.kind == ColumnKind::Ratio {
                rec.push(cell.as_ratio().map(|r| raw(&r)).unwrap_or_default());
            }
        }
        w.write_record(&rec).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells"));
    out
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn render_markdown(table: &ReportTable, options: &RenderOptions) -> String {
    let mut out = String::new();
    if options.provenance {
        let _ = writeln!(out, "### {}\n", table.title);
    }
    let names: Vec<String> = table.columns.iter().map(|c| md_escape(&c.name)).collect();
    let _ = writeln!(out, "| {} |", names.join(" | "));
    let aligns: Vec<&str> = table
        .columns
        .iter()
        .map(|c| match c.kind {
            ColumnKind::Count | ColumnKind::Ratio => "---:",
            ColumnKind::Code | ColumnKind::Text => "---",
        })
        .collect();
    let _ = writeln!(out, "| {} |", aligns.join(" | "));
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|c| md_escape(&c.rendered())).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    if options.provenance && !table.provenance.is_empty() {
        out.push('\n');
        for (k, v) in &table.provenance {
            let _ = writeln!(out, "- {k}: {v}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportTable {
        let mut t = ReportTable::new("sample", &[("pair", ColumnKind::Code), ("c", ColumnKind::Count), ("d", ColumnKind::Ratio)]);
        t.push(vec![Cell::Code("A_B".into()), Cell::Count(2), Cell::Ratio(Share::new(2, 3))]);
        t.push(vec![Cell::Text("say \"hi\", |x|".into()), Cell::Count(0), Cell::Empty]);
        t.note("level", "field");
        t
    }

    #[test]
    fn percent_rounding() {
        assert_eq!(percent(&Share::new(2, 3)), "66.7%");
        assert_eq!(percent(&Share::new(507, 14038)), "3.6%");
        assert_eq!(percent(&Share::new(1, 1)), "100.0%");
        assert_eq!(percent(&Share::new(0, 5)), "0.0%");
        // 0.0005 exactly: half rounds away from zero
        assert_eq!(percent(&Share::new(1, 2000)), "0.1%");
        assert_eq!(percent(&Share::new(1, 2001)), "0.0%");
        assert_eq!(raw(&Share::new(2, 3)), "0.666667");
    }

    #[test]
    fn csv_quotes_and_raw_columns() {
        let t = sample();
        let plain = render(&t, Format::Csv, &RenderOptions::default());
        assert_eq!(plain, "pair,c,d\nA_B,2,66.7%\n\"say \"\"hi\"\", |x|\",0,\n");
        let with_raw = render(&t, Format::Csv, &RenderOptions { raw: true, provenance: false });
        assert_eq!(with_raw.lines().next(), Some("pair,c,d,d_raw"));
        assert_eq!(with_raw.lines().nth(1), Some("A_B,2,66.7%,0.666667"));
    }

    #[test]
    fn markdown_pipe_table() {
        let md = render(&sample(), Format::Markdown, &RenderOptions::default());
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines[0], "| pair | c | d |");
        assert_eq!(lines[1], "| --- | ---: | ---: |");
        assert_eq!(lines[2], "| A_B | 2 | 66.7% |");
        assert_eq!(lines[3], "| say \"hi\", \\|x\\| | 0 |  |");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = ReportTable::new("empty", &[("a", ColumnKind::Count), ("b", ColumnKind::Ratio)]);
        assert_eq!(render(&t, Format::Csv, &RenderOptions::default()), "a,b\n");
        assert_eq!(
            render(&t, Format::Markdown, &RenderOptions::default()),
            "| a | b |\n| ---: | ---: |\n"
        );
    }

    #[test]
    fn provenance_block() {
        let t = sample();
        let csv = render(&t, Format::Csv, &RenderOptions { raw: false, provenance: true });
        assert!(csv.starts_with("# sample\n# level: field\npair,c,d\n"));
        let md = render(&t, Format::Markdown, &RenderOptions { raw: false, provenance: true });
        assert!(md.starts_with("### sample\n"));
        assert!(md.ends_with("- level: field\n"));
    }

    #[test]
    #[should_panic(expected = "arity")]
    fn arity_is_enforced() {
        let mut t = ReportTable::new("x", &[("a", ColumnKind::Count)]);
        t.push(vec![]);
    }
}
