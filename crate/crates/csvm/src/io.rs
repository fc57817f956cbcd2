//! Reading and writing CSVM files.
//!
//! A CSVM file is plain text split into lines. A line whose first field
//! (text before the first separator) is exactly `#TITLE`, `#HEADER`,
//! `#TYPE`, `#WIDTH` or `#META` is a metadata line. A line whose first
//! field merely starts with '#' is an annotation and carries no data. Every
//! other non-blank line is a data row. Metadata may sit anywhere in the
//! file; serialization always writes data first and the metadata block last.
//!
//! There is no quoting or escaping. A value containing the separator or a
//! line terminator cannot be written and serialization refuses it instead
//! of emitting a file that would parse differently.

use std::borrow::Cow;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::table::{is_keyword, Annotation, CsvmTable};

/// How bad a parse finding is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => write!(f, "WARNING"),
            Severity::Error => write!(f, "ERROR"),
        }
    }
}

/// One parse finding, anchored to a source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 0-based source line; whole-file findings use line 0.
    pub line_index: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // human-facing line numbers are 1-based
        write!(f, "{} line {}: {}", self.severity, self.line_index + 1, self.message)
    }
}

/// All findings from one parse. Error entries mean the file violated the
/// format; strict parsing fails on them, lenient parsing records them and
/// recovers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseDiagnostics {
    pub entries: Vec<Diagnostic>,
}

impl ParseDiagnostics {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.entries.iter().any(|d| d.severity == Severity::Error)
    }

    fn warn(&mut self, line_index: usize, message: impl Into<String>) {
        self.entries.push(Diagnostic {
            severity: Severity::Warning,
            line_index,
            message: message.into(),
        });
    }

    fn error(&mut self, line_index: usize, message: impl Into<String>) {
        self.entries.push(Diagnostic {
            severity: Severity::Error,
            line_index,
            message: message.into(),
        });
    }
}

fn check_separator(separator: char) -> Result<()> {
    if separator == '#' || separator == '\n' || separator == '\r' {
        return Err(Error::InvalidSeparator(separator));
    }
    Ok(())
}

/// Parses CSVM bytes into a table.
///
/// In strict mode (`lenient` false) any error-severity finding makes the
/// whole parse fail with [`Error::MalformedFile`]. In lenient mode the
/// parser records the finding and recovers: duplicate metadata lines keep
/// the last occurrence, over-long rows are truncated, and a missing
/// `#HEADER` is synthesized as `col_1..col_N` from the widest row.
pub fn parse_csvm(input: &[u8], separator: char, lenient: bool) -> Result<(CsvmTable, ParseDiagnostics)> {
    check_separator(separator)?;
    let mut diags = ParseDiagnostics::default();
    let text = String::from_utf8_lossy(input);
    if matches!(text, Cow::Owned(_)) {
        diags.warn(0, "invalid UTF-8 byte sequences were replaced");
    }
    let sep_str = separator.to_string();

    let mut title: Option<String> = None;
    let mut header: Option<Vec<String>> = None;
    let mut types: Option<Vec<String>> = None;
    let mut widths: Option<Vec<String>> = None;
    let mut meta: Vec<String> = Vec::new();
    let mut annotations: Vec<Annotation> = Vec::new();
    let mut raw_rows: Vec<(usize, Vec<String>)> = Vec::new();

    for (line_index, raw) in text.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(separator).collect();
        let first = fields[0];
        if is_keyword(first) {
            let rest: Vec<String> = fields[1..].iter().map(|s| s.to_string()).collect();
            match first {
                "#TITLE" => {
                    if title.is_some() {
                        diags.error(line_index, "duplicate #TITLE line (last one wins)");
                    }
                    title = Some(rest.join(&sep_str));
                }
                "#HEADER" => {
                    if header.is_some() {
                        diags.error(line_index, "duplicate #HEADER line (last one wins)");
                    }
                    header = Some(rest);
                }
                "#TYPE" => {
                    if types.is_some() {
                        diags.error(line_index, "duplicate #TYPE line (last one wins)");
                    }
                    types = Some(rest);
                }
                "#WIDTH" => {
                    if widths.is_some() {
                        diags.error(line_index, "duplicate #WIDTH line (last one wins)");
                    }
                    widths = Some(rest);
                }
                "#META" => meta.push(rest.join(&sep_str)),
                _ => unreachable!("is_keyword covers exactly the five keywords"),
            }
        } else if first.starts_with('#') {
            annotations.push(Annotation {
                line_index,
                text: line.to_string(),
            });
        } else {
            raw_rows.push((line_index, fields.iter().map(|s| s.to_string()).collect()));
        }
    }

    let header = match header {
        Some(h) => h,
        None => {
            let widest = raw_rows.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
            if lenient {
                diags.warn(0, format!("no #HEADER line; synthesized {widest} column name(s)"));
            } else {
                diags.error(0, "no #HEADER line");
            }
            (1..=widest).map(|i| format!("col_{i}")).collect()
        }
    };
    let ncols = header.len();

    let fit_labels = |labels: Option<Vec<String>>, keyword: &str, diags: &mut ParseDiagnostics| {
        match labels {
            Some(mut list) => {
                if list.len() > ncols {
                    diags.error(
                        0,
                        format!("{keyword} line has {} labels for {ncols} column(s)", list.len()),
                    );
                    list.truncate(ncols);
                }
                list.resize(ncols, String::new());
                list
            }
            None => {
                diags.warn(0, format!("no {keyword} line; labels left empty"));
                vec![String::new(); ncols]
            }
        }
    };
    let types = fit_labels(types, "#TYPE", &mut diags);
    let widths = fit_labels(widths, "#WIDTH", &mut diags);

    let mut rows = Vec::with_capacity(raw_rows.len());
    for (line_index, mut row) in raw_rows {
        if row.len() > ncols {
            diags.error(
                line_index,
                format!("row has {} cells for {ncols} column(s) (truncated)", row.len()),
            );
            row.truncate(ncols);
        }
        row.resize(ncols, String::new());
        rows.push(row);
    }

    if !lenient && diags.has_errors() {
        return Err(Error::MalformedFile(diags));
    }

    let table = CsvmTable {
        title: title.unwrap_or_default(),
        header,
        types,
        widths,
        meta,
        annotations,
        rows,
        separator,
    };
    Ok((table, diags))
}

/// Reads and parses a CSVM file; I/O failures surface as [`Error::Io`].
pub fn read_csvm_file(
    path: impl AsRef<Path>,
    separator: char,
    lenient: bool,
) -> Result<(CsvmTable, ParseDiagnostics)> {
    let bytes = std::fs::read(path)?;
    parse_csvm(&bytes, separator, lenient)
}

fn no_line_break(s: &str) -> bool {
    !s.contains('\n') && !s.contains('\r')
}

/// Serializes a table: data rows, then (optionally) the annotation lines,
/// then the metadata block in the fixed order #TITLE #HEADER #TYPE #WIDTH
/// #META. The output ends with `line_sep`.
///
/// Values that cannot survive a round trip are refused: a separator or line
/// break inside a cell or label ([`Error::SeparatorInCell`]), and content
/// the line format cannot carry at all, such as a first-column cell starting
/// with '#' or a row that would print as a blank line
/// ([`Error::Unrepresentable`]).
pub fn serialize_csvm(
    table: &CsvmTable,
    line_sep: &str,
    separator: char,
    emit_annotations: bool,
) -> Result<Vec<u8>> {
    check_separator(separator)?;
    let ncols = table.header.len();
    if table.types.len() != ncols || table.widths.len() != ncols {
        return Err(Error::Unrepresentable(format!(
            "{} type and {} width labels for {ncols} column(s)",
            table.types.len(),
            table.widths.len()
        )));
    }

    let check_field = |value: &str, context: &dyn Fn() -> String| -> Result<()> {
        if value.contains(separator) || !no_line_break(value) {
            return Err(Error::SeparatorInCell(context()));
        }
        Ok(())
    };

    for (c, name) in table.header.iter().enumerate() {
        check_field(name, &|| format!("header name {c}"))?;
        check_field(&table.types[c], &|| format!("type label {c}"))?;
        check_field(&table.widths[c], &|| format!("width label {c}"))?;
    }
    for (r, row) in table.rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Unrepresentable(format!(
                "row {r} has {} cells for {ncols} column(s)",
                row.len()
            )));
        }
        for (c, cell) in row.iter().enumerate() {
            check_field(cell, &|| format!("row {r}, column {c}"))?;
        }
        if row.first().is_some_and(|cell| cell.starts_with('#')) {
            return Err(Error::Unrepresentable(format!(
                "row {r} starts with '#' and would read back as an annotation"
            )));
        }
        if row.iter().all(|cell| cell.trim().is_empty()) {
            return Err(Error::Unrepresentable(format!(
                "row {r} would print as a blank line"
            )));
        }
    }
    // the title and meta entries may contain the separator (they are joined
    // from the remaining fields of their line), but never a line break
    if !no_line_break(&table.title) {
        return Err(Error::SeparatorInCell("title".into()));
    }
    for (i, entry) in table.meta.iter().enumerate() {
        if !no_line_break(entry) {
            return Err(Error::SeparatorInCell(format!("meta entry {i}")));
        }
    }
    if emit_annotations {
        for a in &table.annotations {
            let first = a.text.split(separator).next().unwrap_or("");
            if !a.text.starts_with('#') || is_keyword(first) || !no_line_break(&a.text) {
                return Err(Error::Unrepresentable(format!(
                    "annotation {:?} would not read back as an annotation",
                    a.text
                )));
            }
        }
    }

    let sep = separator.to_string();
    let mut out = String::new();
    for row in &table.rows {
        out.push_str(&row.join(&sep));
        out.push_str(line_sep);
    }
    if emit_annotations {
        let mut sorted: Vec<&Annotation> = table.annotations.iter().collect();
        sorted.sort_by_key(|a| a.line_index);
        for a in sorted {
            out.push_str(&a.text);
            out.push_str(line_sep);
        }
    }
    out.push_str("#TITLE");
    if !table.title.is_empty() {
        out.push(separator);
        out.push_str(&table.title);
    }
    out.push_str(line_sep);
    for (keyword, list) in [("#HEADER", &table.header), ("#TYPE", &table.types), ("#WIDTH", &table.widths)] {
        out.push_str(keyword);
        for item in list.iter() {
            out.push(separator);
            out.push_str(item);
        }
        out.push_str(line_sep);
    }
    for entry in &table.meta {
        out.push_str("#META");
        if !entry.is_empty() {
            out.push(separator);
            out.push_str(entry);
        }
        out.push_str(line_sep);
    }
    Ok(out.into_bytes())
}

/// Human-readable report: one line per column, the row/column counts as
/// `DATA_R n` / `DATA_C n`, then the selected rows with bracketed cells.
/// `row_limit` 0 means all remaining rows.
pub fn dump(table: &CsvmTable, row_offset: usize, row_limit: usize) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    for (i, name) in table.header.iter().enumerate() {
        let width = table.widths.get(i).map(String::as_str).unwrap_or("");
        let type_label = table.types.get(i).map(String::as_str).unwrap_or("");
        let _ = writeln!(out, "{i:<6} {width:<6} {type_label:<6} {{{name}}}");
    }
    let _ = writeln!(out, "DATA_R {}", table.rows.len());
    let _ = writeln!(out, "DATA_C {}", table.header.len());
    let end = if row_limit == 0 {
        table.rows.len()
    } else {
        table.rows.len().min(row_offset.saturating_add(row_limit))
    };
    for r in row_offset..end {
        let cells: Vec<String> = table.rows[r].iter().map(|c| format!("[{c}]")).collect();
        let _ = writeln!(out, "{r:<6} {}", cells.join(" "));
    }
    out
}
