//! Set-style operations over pairs of tables.
//!
//! The operations work on column names and never interpret cell values.
//! They tolerate tables with different column sets: `union` widens both
//! sides to the combined schema, `intersect` projects both sides onto the
//! shared columns, `concat` appends rows of identically-shaped tables, and
//! `mask_union` forces the columns of a mask table to exist. Missing cells
//! are filled with empty text.

use crate::error::{Error, Result};
use crate::table::CsvmTable;

/// Projects both tables onto the columns whose names appear in each, in
/// `a`'s order with duplicates collapsed to the first occurrence, and stacks
/// `a`'s rows before `b`'s. Labels come from `a`. Returns `None` when the
/// tables share no column name.
pub fn intersect(a: &CsvmTable, b: &CsvmTable) -> Option<CsvmTable> {
    let mut names: Vec<&String> = Vec::new();
    for name in &a.header {
        if !names.contains(&name) && b.header.contains(name) {
            names.push(name);
        }
    }
    if names.is_empty() {
        return None;
    }
    let a_idx: Vec<usize> = names.iter().map(|n| a.column_index(n).unwrap()).collect();
    let b_idx: Vec<usize> = names.iter().map(|n| b.column_index(n).unwrap()).collect();
    let project = |rows: &[Vec<String>], idx: &[usize]| -> Vec<Vec<String>> {
        rows.iter()
            .map(|row| idx.iter().map(|&i| row.get(i).cloned().unwrap_or_default()).collect())
            .collect()
    };
    let mut rows = project(&a.rows, &a_idx);
    rows.extend(project(&b.rows, &b_idx));
    let mut out = CsvmTable::new();
    out.title = "intersection".into();
    out.header = names.iter().map(|n| n.to_string()).collect();
    out.types = a_idx.iter().map(|&i| a.types.get(i).cloned().unwrap_or_default()).collect();
    out.widths = a_idx.iter().map(|&i| a.widths.get(i).cloned().unwrap_or_default()).collect();
    out.rows = rows;
    out.separator = a.separator;
    Some(out)
}

/// Widens both tables to the combined schema: all of `a`'s columns in order,
/// then the `b` columns whose names `a` does not have, in `b`'s order. Rows
/// of `a` come first, then rows of `b`; cells a side does not have are empty
/// text. Labels come from the column's source table, `a` winning on shared
/// names.
pub fn union(a: &CsvmTable, b: &CsvmTable) -> CsvmTable {
    let mut out = CsvmTable::new();
    out.title = "union".into();
    out.separator = a.separator;
    out.header = a.header.clone();
    out.types = a.types.clone();
    out.widths = a.widths.clone();
    let mut b_only: Vec<usize> = Vec::new();
    for (i, name) in b.header.iter().enumerate() {
        if !a.header.contains(name) && !out.header[a.header.len()..].contains(name) {
            b_only.push(i);
            out.header.push(name.clone());
            out.types.push(b.types.get(i).cloned().unwrap_or_default());
            out.widths.push(b.widths.get(i).cloned().unwrap_or_default());
        }
    }
    for row in &a.rows {
        let mut cells = row.clone();
        cells.resize(out.header.len(), String::new());
        out.rows.push(cells);
    }
    for row in &b.rows {
        let cells = out
            .header
            .iter()
            .map(|name| {
                b.column_index(name)
                    .and_then(|i| row.get(i).cloned())
                    .unwrap_or_default()
            })
            .collect();
        out.rows.push(cells);
    }
    out
}

/// Appends the rows of `b` to `a`. The headers must be identical, same
/// names in the same order; everything else (labels, title, meta,
/// annotations) comes from `a`.
pub fn concat(a: &CsvmTable, b: &CsvmTable) -> Result<CsvmTable> {
    if a.header != b.header {
        return Err(Error::SchemaMismatch(format!(
            "cannot concatenate: headers {:?} and {:?} differ",
            a.header, b.header
        )));
    }
    let mut out = a.clone();
    out.rows.extend(b.rows.iter().cloned());
    Ok(out)
}

/// Guarantees every column of `mask` exists in `data`, appending missing
/// ones filled with empty text. The mask's rows are ignored and `data`'s
/// rows, title and notes are untouched.
pub fn mask_union(data: &CsvmTable, mask: &CsvmTable) -> CsvmTable {
    let mut stripped = mask.clone();
    stripped.rows.clear();
    let mut out = union(data, &stripped);
    out.title = data.title.clone();
    out.meta = data.meta.clone();
    out.annotations = data.annotations.clone();
    out
}
