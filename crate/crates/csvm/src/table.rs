//! In-memory model of a CSVM table and the elementary column operations.
//!
//! A table is an ordered list of text rows plus the metadata carried by the
//! file's keyword lines: title, column names, type labels, width labels,
//! free-form meta notes and annotation lines. Cell values are opaque text;
//! the type and width labels are advisory and never drive any coercion.
//!
//! Tables are immutable values: every operation returns a new table, so a
//! table can be shared freely across threads.

use crate::error::{Error, Result};

/// The five metadata keywords. A line whose first field is one of these is a
/// metadata line; any other first field starting with '#' is an annotation.
pub const KEYWORDS: [&str; 5] = ["#TITLE", "#HEADER", "#TYPE", "#WIDTH", "#META"];

/// Default field separator (horizontal tab).
pub const DEFAULT_SEPARATOR: char = '\t';

/// True when `s` is exactly one of the five metadata keywords.
pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// A remark line: starts with '#' but is not a keyword line. Annotations are
/// skipped by parsing and preserved verbatim for humans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    /// 0-based position of the line in the source file. Only the relative
    /// order matters; re-serializing assigns new positions.
    pub line_index: usize,
    /// The raw line, without its terminator.
    pub text: String,
}

/// One column of a table together with its metadata labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnView {
    pub name: String,
    pub type_label: String,
    pub width_label: String,
    /// Cell values in row order; always exactly one entry per table row.
    pub cells: Vec<String>,
}

/// A CSVM table: rectangular rows of text cells plus the metadata block.
///
/// Invariants maintained by the parser and by every operation:
/// `types` and `widths` have the same length as `header`, and every row has
/// exactly `header.len()` cells. [`CsvmTable::validate`] checks them.
#[derive(Debug, Clone)]
pub struct CsvmTable {
    /// Value of the #TITLE line; empty when the file has none.
    pub title: String,
    /// Column names from the #HEADER line.
    pub header: Vec<String>,
    /// Type labels from the #TYPE line (conventionally TEXT, NUMERIC, FILE).
    pub types: Vec<String>,
    /// Width labels from the #WIDTH line, kept as text.
    pub widths: Vec<String>,
    /// One entry per #META line, in file order.
    pub meta: Vec<String>,
    /// Remark lines, in file order.
    pub annotations: Vec<Annotation>,
    /// Data rows; each row has one cell per header entry.
    pub rows: Vec<Vec<String>>,
    /// Field separator this table was read with and will be written with.
    pub separator: char,
}

impl Default for CsvmTable {
    fn default() -> Self {
        Self::new()
    }
}

// Equality ignores the absolute annotation positions: they only order the
// lines on re-emit, and re-parsing a serialized table renumbers them.
impl PartialEq for CsvmTable {
    fn eq(&self, other: &Self) -> bool {
        self.title == other.title
            && self.header == other.header
            && self.types == other.types
            && self.widths == other.widths
            && self.meta == other.meta
            && self.rows == other.rows
            && self.separator == other.separator
            && self.annotations.len() == other.annotations.len()
            && self
                .annotations
                .iter()
                .zip(&other.annotations)
                .all(|(a, b)| a.text == b.text)
    }
}

impl Eq for CsvmTable {}

impl CsvmTable {
    /// An empty table with the default tab separator.
    pub fn new() -> Self {
        CsvmTable {
            title: String::new(),
            header: Vec::new(),
            types: Vec::new(),
            widths: Vec::new(),
            meta: Vec::new(),
            annotations: Vec::new(),
            rows: Vec::new(),
            separator: DEFAULT_SEPARATOR,
        }
    }

    pub fn column_count(&self) -> usize {
        self.header.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// 0-based index of the first column whose name equals `name` exactly
    /// (case-sensitive), or `None`.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// The first column named `name`, with its labels and cells in row order.
    pub fn get_column(&self, name: &str) -> Result<ColumnView> {
        let idx = self
            .column_index(name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))?;
        Ok(ColumnView {
            name: self.header[idx].clone(),
            type_label: self.types.get(idx).cloned().unwrap_or_default(),
            width_label: self.widths.get(idx).cloned().unwrap_or_default(),
            cells: self.rows.iter().map(|r| r[idx].clone()).collect(),
        })
    }

    /// Removes every column named `name` (all matches, not just the first),
    /// together with its labels and cells. Unknown names are a no-op.
    pub fn delete_columns(&self, name: &str) -> CsvmTable {
        let keep: Vec<bool> = self.header.iter().map(|h| h != name).collect();
        self.retain_columns(&keep)
    }

    /// Replaces the name of the column at `index`; the type and width labels
    /// change only when the corresponding argument is given. Keyword strings
    /// are rejected as names.
    pub fn rename_column(
        &self,
        index: usize,
        new_name: &str,
        new_type: Option<&str>,
        new_width: Option<&str>,
    ) -> Result<CsvmTable> {
        if index >= self.header.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.header.len(),
            });
        }
        if is_keyword(new_name) {
            return Err(Error::ReservedName(new_name.to_string()));
        }
        let mut out = self.clone();
        out.header[index] = new_name.to_string();
        if let Some(t) = new_type {
            out.types[index] = t.to_string();
        }
        if let Some(w) = new_width {
            out.widths[index] = w.to_string();
        }
        Ok(out)
    }

    /// Keeps the columns whose flag is true, preserving relative order.
    pub(crate) fn retain_columns(&self, keep: &[bool]) -> CsvmTable {
        let pick = |items: &[String]| -> Vec<String> {
            items
                .iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(v, _)| v.clone())
                .collect()
        };
        CsvmTable {
            title: self.title.clone(),
            header: pick(&self.header),
            types: pick(&self.types),
            widths: pick(&self.widths),
            meta: self.meta.clone(),
            annotations: self.annotations.clone(),
            rows: self.rows.iter().map(|r| pick(r)).collect(),
            separator: self.separator,
        }
    }

    /// Checks the structural invariants; returns one message per violation.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let n = self.header.len();
        if self.types.len() != n {
            problems.push(format!("{} type labels for {} columns", self.types.len(), n));
        }
        if self.widths.len() != n {
            problems.push(format!("{} width labels for {} columns", self.widths.len(), n));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                problems.push(format!("row {} has {} cells, expected {}", i, row.len(), n));
            }
        }
        if self.separator == '#' || self.separator == '\n' || self.separator == '\r' {
            problems.push(format!("separator {:?} collides with the format", self.separator));
        }
        problems
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inventory() -> CsvmTable {
        let mut t = CsvmTable::new();
        t.title = "Chemical inventory".into();
        t.header = ["numero", "fichier_mol", "masse_exacte", "nom", "vrac"]
            .map(String::from)
            .to_vec();
        t.types = ["NUMERIC", "TEXT", "NUMERIC", "TEXT", "NUMERIC"]
            .map(String::from)
            .to_vec();
        t.widths = ["10", "50", "50", "100", "10"].map(String::from).to_vec();
        t.rows = vec![
            ["1", "af01.mol", "181.19293", "Tyrosine", "10"].map(String::from).to_vec(),
            ["5", "af02.mol", "155.15753", "Histidine", "20"].map(String::from).to_vec(),
            ["2", "af03.mol", "204.23049", "Tryptophane", "20"].map(String::from).to_vec(),
            ["3", "af04.mol", "115.13298", "Proline", "12"].map(String::from).to_vec(),
            ["4", "af05.mol", "267.24621", "Adenosine", "0"].map(String::from).to_vec(),
            ["6", "af06.mol", "661.90791", "Ph-Choline", "300"].map(String::from).to_vec(),
        ];
        t
    }

    #[test]
    fn column_index_exact_match() {
        assert_eq!(inventory().column_index("numero"), Some(0));
    }

    #[test]
    fn column_index_is_case_sensitive() {
        assert_eq!(inventory().column_index("NUMERO"), None);
    }

    #[test]
    fn column_index_returns_first_duplicate() {
        let mut t = CsvmTable::new();
        t.header = ["a", "x", "b", "x"].map(String::from).to_vec();
        t.types = vec![String::new(); 4];
        t.widths = vec![String::new(); 4];
        assert_eq!(t.column_index("x"), Some(1));
        // oracle: plain linear scan over the header list
        let brute = t.header.iter().enumerate().find(|(_, h)| *h == "x").map(|(i, _)| i);
        assert_eq!(t.column_index("x"), brute);
    }

    #[test]
    fn get_column_returns_cells_in_row_order() {
        let col = inventory().get_column("nom").unwrap();
        assert_eq!(
            col.cells,
            ["Tyrosine", "Histidine", "Tryptophane", "Proline", "Adenosine", "Ph-Choline"]
                .map(String::from)
                .to_vec()
        );
        assert_eq!(col.type_label, "TEXT");
    }

    #[test]
    fn get_column_of_empty_table_is_empty() {
        let mut t = CsvmTable::new();
        t.header = vec!["a".into()];
        t.types = vec![String::new()];
        t.widths = vec![String::new()];
        assert!(t.get_column("a").unwrap().cells.is_empty());
    }

    #[test]
    fn get_column_unknown_name_fails() {
        assert!(matches!(
            inventory().get_column("absent"),
            Err(Error::UnknownColumn(_))
        ));
    }

    #[test]
    fn delete_columns_missing_name_is_identity() {
        let t = inventory();
        assert_eq!(t.delete_columns("no_such_column"), t);
    }

    #[test]
    fn delete_columns_removes_every_match() {
        let mut t = CsvmTable::new();
        t.header = ["d", "keep", "d"].map(String::from).to_vec();
        t.types = ["T1", "T2", "T3"].map(String::from).to_vec();
        t.widths = ["1", "2", "3"].map(String::from).to_vec();
        t.rows = vec![["x", "y", "z"].map(String::from).to_vec()];
        let out = t.delete_columns("d");
        assert_eq!(out.header, vec!["keep".to_string()]);
        assert_eq!(out.types, vec!["T2".to_string()]);
        assert_eq!(out.rows, vec![vec!["y".to_string()]]);
        // oracle: filter the header list by inequality
        let brute: Vec<&String> = t.header.iter().filter(|h| *h != "d").collect();
        assert_eq!(out.header.iter().collect::<Vec<_>>(), brute);
    }

    #[test]
    fn delete_columns_is_idempotent() {
        let t = inventory();
        let once = t.delete_columns("nom");
        assert_eq!(once.delete_columns("nom"), once);
    }

    #[test]
    fn rename_column_changes_header_only_by_default() {
        let t = inventory();
        let out = t.rename_column(0, "ID", None, None).unwrap();
        assert_eq!(out.header[0], "ID");
        assert_eq!(out.types, t.types);
        assert_eq!(out.rows, t.rows);
    }

    #[test]
    fn rename_column_same_name_is_identity() {
        let t = inventory();
        assert_eq!(t.rename_column(0, "numero", None, None).unwrap(), t);
    }

    #[test]
    fn rename_column_rejects_keywords() {
        assert!(matches!(
            inventory().rename_column(0, "#TITLE", None, None),
            Err(Error::ReservedName(_))
        ));
    }

    #[test]
    fn rename_column_out_of_range() {
        assert!(matches!(
            inventory().rename_column(9, "x", None, None),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rename_there_and_back_is_identity() {
        let t = inventory();
        let back = t
            .rename_column(2, "mw", None, None)
            .unwrap()
            .rename_column(2, "masse_exacte", None, None)
            .unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn validate_flags_ragged_rows() {
        let mut t = inventory();
        t.rows[1].pop();
        assert_eq!(t.validate().len(), 1);
        assert!(inventory().validate().is_empty());
    }

    #[test]
    fn tables_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<CsvmTable>();
        assert_send_sync::<ColumnView>();
    }
}
