//! Bridge between SDF chemical-table files and CSVM tables.
//!
//! An SDF file is a concatenation of records, each holding one molecule as
//! a V2000 molfile block (up to its `M  END` line) followed by key/value
//! descriptor blocks and a `$$$$` terminator line. The bridge turns such a
//! collection into a table with one row per record and one column per
//! descriptor key, and back. Values stay opaque text; no chemistry is
//! interpreted.
//!
//! A molblock can be carried inside a table cell by escaping its newlines
//! as the two characters `\n` (CSVM cells are single-line). Collections
//! that reference structures by file name or SMILES string need no
//! escaping at all: those are ordinary text columns.

use crate::error::{Error, Result};
use crate::table::CsvmTable;

/// One SDF record: the verbatim molfile block plus its descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdfRecord {
    /// Molfile lines up to and including `M  END`, newline-joined.
    pub molblock: String,
    /// Descriptor key/value pairs in file order; keys are unique per record.
    pub properties: Vec<(String, String)>,
}

/// Molblock used when a table row carries no structure.
const EMPTY_MOLBLOCK: &str = "\n\n\n  0  0  0  0  0  0  0  0  0  0999 V2000\nM  END";

fn property_key(line: &str) -> Option<String> {
    let rest = line.strip_prefix('>')?;
    let start = rest.find('<')?;
    let end = rest[start + 1..].find('>')? + start + 1;
    Some(rest[start + 1..end].to_string())
}

/// Splits SDF bytes into records. Every record must contain an `M  END`
/// line and be closed by a `$$$$` line; leftover non-blank content at the
/// end of the file is an error.
pub fn parse_sdf(input: &[u8]) -> Result<Vec<SdfRecord>> {
    let text = String::from_utf8_lossy(input);
    let mut records: Vec<SdfRecord> = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for raw in text.split('\n') {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim_end() == "$$$$" {
            records.push(parse_record(&current, records.len())?);
            current.clear();
        } else {
            current.push(line);
        }
    }
    if current.iter().any(|l| !l.trim().is_empty()) {
        return Err(Error::MalformedRecord {
            index: records.len(),
            reason: "record not terminated by \"$$$$\"".into(),
        });
    }
    Ok(records)
}

fn parse_record(lines: &[&str], index: usize) -> Result<SdfRecord> {
    let end = lines
        .iter()
        .position(|l| l.trim_end() == "M  END")
        .ok_or_else(|| Error::MalformedRecord {
            index,
            reason: "no \"M  END\" line".into(),
        })?;
    let molblock = lines[..=end].join("\n");
    let mut properties: Vec<(String, String)> = Vec::new();
    let mut i = end + 1;
    while i < lines.len() {
        let line = lines[i];
        if line.trim().is_empty() {
            i += 1;
            continue;
        }
        let key = property_key(line).ok_or_else(|| Error::MalformedRecord {
            index,
            reason: format!("expected a \"> <key>\" property header, found {line:?}"),
        })?;
        if properties.iter().any(|(k, _)| *k == key) {
            return Err(Error::MalformedRecord {
                index,
                reason: format!("duplicate property key {key:?}"),
            });
        }
        i += 1;
        let mut value_lines: Vec<&str> = Vec::new();
        while i < lines.len() && !lines[i].trim().is_empty() {
            value_lines.push(lines[i]);
            i += 1;
        }
        properties.push((key, value_lines.join(" ")));
    }
    Ok(SdfRecord {
        molblock,
        properties,
    })
}

/// Writes records back out: molblock, one block per property, `$$$$`.
/// Re-parsing the output yields the same records.
pub fn serialize_sdf(records: &[SdfRecord]) -> Vec<u8> {
    let mut out = String::new();
    for record in records {
        out.push_str(&record.molblock);
        out.push('\n');
        for (key, value) in &record.properties {
            out.push_str("> <");
            out.push_str(key);
            out.push_str(">\n");
            out.push_str(value);
            out.push_str("\n\n");
        }
        out.push_str("$$$$\n");
    }
    out.into_bytes()
}

fn escape_molblock(molblock: &str) -> String {
    molblock.replace('\n', "\\n")
}

fn unescape_molblock(cell: &str) -> String {
    cell.replace("\\n", "\n")
}

/// Builds a table with one row per record and one column per descriptor
/// key, keys ordered by first appearance across the collection. Records
/// missing a key get empty cells. When `structure_column` is given, a final
/// column of that name carries the newline-escaped molblocks.
pub fn sdf_to_csvm(records: &[SdfRecord], structure_column: Option<&str>) -> Result<CsvmTable> {
    let mut table = CsvmTable::new();
    for record in records {
        for (key, _) in &record.properties {
            if !table.header.contains(key) {
                table.header.push(key.clone());
            }
        }
    }
    if let Some(name) = structure_column {
        table.header.push(name.to_string());
    }
    let check = |value: &str, context: String| -> Result<()> {
        if value.contains(table.separator) || value.contains('\n') || value.contains('\r') {
            return Err(Error::SeparatorInCell(context));
        }
        Ok(())
    };
    for name in &table.header {
        check(name, format!("descriptor key {name:?}"))?;
    }
    for (r, record) in records.iter().enumerate() {
        let mut row: Vec<String> = table
            .header
            .iter()
            .map(|key| {
                record
                    .properties
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_default()
            })
            .collect();
        if structure_column.is_some() {
            let last = row.len() - 1;
            row[last] = escape_molblock(&record.molblock);
        }
        for (c, cell) in row.iter().enumerate() {
            check(cell, format!("record {r}, key {:?}", table.header[c]))?;
        }
        table.rows.push(row);
    }
    table.types = vec!["TEXT".into(); table.header.len()];
    table.widths = vec!["10".into(); table.header.len()];
    Ok(table)
}

/// Builds one record per table row. Properties are the non-structure
/// columns in table order, skipping empty cells. The molblock comes from
/// the structure column (unescaped); rows without one get a 0-atom
/// placeholder block.
pub fn csvm_to_sdf(table: &CsvmTable, structure_column: Option<&str>) -> Result<Vec<SdfRecord>> {
    let structure_idx = match structure_column {
        Some(name) => Some(
            table
                .column_index(name)
                .ok_or_else(|| Error::UnknownColumn(name.to_string()))?,
        ),
        None => None,
    };
    let records = table
        .rows
        .iter()
        .map(|row| {
            let molblock = structure_idx
                .map(|i| row[i].as_str())
                .filter(|cell| !cell.is_empty())
                .map(unescape_molblock)
                .unwrap_or_else(|| EMPTY_MOLBLOCK.to_string());
            let properties = table
                .header
                .iter()
                .enumerate()
                .filter(|(c, _)| Some(*c) != structure_idx)
                .filter(|(c, _)| !row[*c].is_empty())
                .map(|(c, name)| (name.clone(), row[c].clone()))
                .collect();
            SdfRecord {
                molblock,
                properties,
            }
        })
        .collect();
    Ok(records)
}
