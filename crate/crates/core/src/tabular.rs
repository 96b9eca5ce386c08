//! Shared reader for the comma-delimited input files.
//!
//! All inputs share the same dialect: UTF-8, mandatory header row, `#` comment
//! lines, surrounding whitespace trimmed, trailing optional columns allowed.

use std::io::Read;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::{Error, Result};

pub(crate) fn reader<R: Read>(input: R) -> csv::Reader<R> {
    ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(Trim::All)
        .flexible(true)
        .from_reader(input)
}

/// Streams every data row to `visit` together with its 1-based line number.
///
/// Rows with fewer than `required` columns are rejected with their line number.
pub(crate) fn for_each_row<R, F>(input: R, source_name: &str, required: usize, mut visit: F) -> Result<()>
where
    R: Read,
    F: FnMut(u64, &StringRecord) -> Result<()>,
{
    let mut rdr = reader(input);
    let header_len = rdr
        .headers()
        .map_err(|e| Error::from_csv(source_name, e))?
        .len();
    if header_len == 0 {
        return Err(Error::malformed(source_name, 1, "missing header row"));
    }
    if header_len < required {
        return Err(Error::malformed(
            source_name,
            1,
            format!("header has {header_len} columns, expected at least {required}"),
        ));
    }
    let mut record = StringRecord::new();
    loop {
        match rdr.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {
                let line = record.position().map(|p| p.line()).unwrap_or(0);
                if record.len() < required {
                    return Err(Error::malformed(
                        source_name,
                        line,
                        format!("expected at least {required} columns, found {}", record.len()),
                    ));
                }
                visit(line, &record)?;
            }
            Err(e) => return Err(Error::from_csv(source_name, e)),
        }
    }
    Ok(())
}

/// Optional trailing column: missing and empty are both `None`.
pub(crate) fn optional(record: &StringRecord, idx: usize) -> Option<&str> {
    record.get(idx).filter(|s| !s.is_empty())
}
