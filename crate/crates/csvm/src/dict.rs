//! Dictionaries: CSVM tables whose data columns are translation sets.
//!
//! A dictionary stores, row by row, the alternate names one column carries
//! in different naming systems. Columns whose header does not start with
//! '#' are translation sets; the columns named `#TYPE` and `#WIDTH` form
//! the Standard and carry the normalized type and width of each row, with
//! a leading '#' on every cell so they cannot be mistaken for set values.
//! Other '#'-named columns are kept but ignored by filtering.
//!
//! Applying a dictionary to a data table renames each column to its value
//! in the chosen target set. A target equal to the `__DEL__` sentinel drops
//! the column. Strong ("blank") mode additionally drops columns whose name
//! resolves to a blank marker and columns the dictionary does not know.
//! Cell data is never touched: filtering only renames and removes columns.

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::ParseDiagnostics;
use crate::table::CsvmTable;

/// Default blank markers: the empty cell and the '-' placeholder.
pub const DEFAULT_BLANK_LIST: [&str; 2] = ["", "-"];

/// Default deletion sentinel.
pub const DEFAULT_DELCOL: &str = "__DEL__";

/// A loaded dictionary. Construction goes through [`CsvmDictionary::load`],
/// which classifies the columns and pre-computes which rows are usable.
#[derive(Debug, Clone)]
pub struct CsvmDictionary {
    /// The dictionary file as a plain table.
    pub table: CsvmTable,
    /// Names of the translation-set columns ('#'-free headers), in order.
    pub set_names: Vec<String>,
    /// Column index of the `#TYPE` Standard column, when present.
    pub standard_type_col: Option<usize>,
    /// Column index of the `#WIDTH` Standard column, when present.
    pub standard_width_col: Option<usize>,
    /// Non-fatal observations made while loading.
    pub warnings: Vec<String>,
    /// Indices of the set columns within `table.header`.
    set_cols: Vec<usize>,
    /// Rows whose set cells are all blank are ignored by lookups.
    row_usable: Vec<bool>,
}

/// One row of a translation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationEntry {
    /// The name in the dictionary's first set column, by convention the
    /// source naming system.
    pub source: String,
    /// The name in the requested set column.
    pub target: String,
    /// Standard type with the leading '#' stripped; `None` when the
    /// dictionary has no `#TYPE` column.
    pub type_label: Option<String>,
    /// Standard width with the leading '#' stripped; `None` when the
    /// dictionary has no `#WIDTH` column.
    pub width_label: Option<String>,
}

/// A translation set extracted from a dictionary, in dictionary row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationSet {
    pub name: String,
    pub entries: Vec<TranslationEntry>,
}

/// Result of resolving one header name against a dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedName {
    pub target: String,
    pub type_label: Option<String>,
    pub width_label: Option<String>,
}

/// Knobs for [`CsvmDictionary::apply_filter`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOptions {
    /// Strong ("blank") mode: also delete columns whose translated name is a
    /// blank marker and columns the dictionary cannot resolve.
    pub strong: bool,
    /// Values treated as blank markers, compared for exact equality.
    pub blank_list: Vec<String>,
    /// Deletion sentinel. The sentinel pass only runs when it is longer
    /// than one character, so a short string disables it.
    pub delcol: String,
    /// Replace the type/width labels of translated columns with the
    /// Standard values from the dictionary.
    pub apply_standard: bool,
    /// Delete unresolved columns even outside strong mode.
    pub drop_unmatched: bool,
}

impl Default for FilterOptions {
    fn default() -> Self {
        FilterOptions {
            strong: false,
            blank_list: DEFAULT_BLANK_LIST.map(String::from).to_vec(),
            delcol: DEFAULT_DELCOL.to_string(),
            apply_standard: false,
            drop_unmatched: false,
        }
    }
}

impl FilterOptions {
    /// Default options with strong mode switched on.
    pub fn strong() -> Self {
        FilterOptions {
            strong: true,
            ..FilterOptions::default()
        }
    }
}

fn strip_standard_prefix(cell: &str) -> String {
    cell.strip_prefix('#').unwrap_or(cell).to_string()
}

fn is_default_blank(cell: &str) -> bool {
    DEFAULT_BLANK_LIST.contains(&cell)
}

impl CsvmDictionary {
    /// Classifies the table's columns into translation sets and Standard
    /// columns. Fails when no set column exists or two sets share a name.
    /// A table without any '#'-named column still loads (the check is
    /// syntactic) but gets a warning.
    pub fn load(table: CsvmTable) -> Result<CsvmDictionary> {
        let mut set_cols = Vec::new();
        let mut set_names = Vec::new();
        let mut standard_type_col = None;
        let mut standard_width_col = None;
        let mut warnings = Vec::new();

        for (i, name) in table.header.iter().enumerate() {
            if name.starts_with('#') {
                match name.as_str() {
                    "#TYPE" => standard_type_col = standard_type_col.or(Some(i)),
                    "#WIDTH" => standard_width_col = standard_width_col.or(Some(i)),
                    // e.g. unit columns: kept in the table, never consulted
                    _ => {}
                }
            } else {
                set_cols.push(i);
                set_names.push(name.clone());
            }
        }
        if set_names.is_empty() {
            return Err(Error::NotADictionary(
                "no translation-set columns ('#'-free header names)".into(),
            ));
        }
        for (i, name) in set_names.iter().enumerate() {
            if set_names[..i].contains(name) {
                return Err(Error::DuplicateSetName(name.clone()));
            }
        }
        if standard_type_col.is_none() && standard_width_col.is_none() {
            warnings.push(
                "no #TYPE/#WIDTH standard columns; every column reads as a translation set".into(),
            );
        }

        let row_usable: Vec<bool> = table
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let usable = set_cols
                    .iter()
                    .any(|&c| !is_default_blank(row.get(c).map(String::as_str).unwrap_or("")));
                if !usable {
                    warnings.push(format!("row {r} has only blank set cells and is ignored"));
                }
                usable
            })
            .collect();

        Ok(CsvmDictionary {
            table,
            set_names,
            standard_type_col,
            standard_width_col,
            warnings,
            set_cols,
            row_usable,
        })
    }

    fn set_col(&self, set_name: &str) -> Option<usize> {
        self.set_names
            .iter()
            .position(|n| n == set_name)
            .map(|i| self.set_cols[i])
    }

    /// Extracts one translation set, one entry per usable dictionary row.
    pub fn translation_set(&self, set_name: &str) -> Result<TranslationSet> {
        let col = self
            .set_col(set_name)
            .ok_or_else(|| Error::UnknownSet(set_name.to_string()))?;
        let source_col = self.set_cols[0];
        let cell = |row: &[String], c: usize| row.get(c).cloned().unwrap_or_default();
        let entries = self
            .table
            .rows
            .iter()
            .enumerate()
            .filter(|(r, _)| self.row_usable[*r])
            .map(|(_, row)| TranslationEntry {
                source: cell(row, source_col),
                target: cell(row, col),
                type_label: self.standard_type_col.map(|c| strip_standard_prefix(&cell(row, c))),
                width_label: self.standard_width_col.map(|c| strip_standard_prefix(&cell(row, c))),
            })
            .collect();
        Ok(TranslationSet {
            name: set_name.to_string(),
            entries,
        })
    }

    /// Looks `header_value` up across every set column, scanning rows top to
    /// bottom and, within a row, set columns left to right; the first cell
    /// equal to the value (case-sensitive) selects the row. Returns the
    /// row's name in `target_set` plus the Standard type/width.
    pub fn resolve(&self, header_value: &str, target_set: &str) -> Option<ResolvedName> {
        let target_col = self.set_col(target_set)?;
        for (r, row) in self.table.rows.iter().enumerate() {
            if !self.row_usable[r] {
                continue;
            }
            let hit = self
                .set_cols
                .iter()
                .any(|&c| row.get(c).map(String::as_str) == Some(header_value));
            if hit {
                let cell = |c: usize| row.get(c).cloned().unwrap_or_default();
                return Some(ResolvedName {
                    target: cell(target_col),
                    type_label: self.standard_type_col.map(|c| strip_standard_prefix(&cell(c))),
                    width_label: self.standard_width_col.map(|c| strip_standard_prefix(&cell(c))),
                });
            }
        }
        None
    }

    /// Renames the columns of `data` into `target_set` and deletes the ones
    /// the options mark for removal. Cell values are never modified and the
    /// surviving columns keep their relative order.
    ///
    /// The operation is total: when this dictionary has no header or the
    /// target set is empty or unknown, `data` comes back unchanged.
    pub fn apply_filter(&self, data: &CsvmTable, target_set: &str, options: &FilterOptions) -> CsvmTable {
        if self.table.header.is_empty() || target_set.is_empty() || self.set_col(target_set).is_none() {
            return data.clone();
        }
        let mut out = data.clone();
        let ncols = out.header.len();
        let mut unmatched = vec![false; ncols];
        for (i, miss) in unmatched.iter_mut().enumerate() {
            match self.resolve(&out.header[i], target_set) {
                Some(resolved) => {
                    out.header[i] = resolved.target;
                    if options.apply_standard {
                        if let Some(t) = resolved.type_label {
                            out.types[i] = t;
                        }
                        if let Some(w) = resolved.width_label {
                            out.widths[i] = w;
                        }
                    }
                }
                None => *miss = true,
            }
        }
        let delcol_active = options.delcol.chars().count() > 1;
        let keep: Vec<bool> = (0..ncols)
            .map(|i| {
                let name = &out.header[i];
                if delcol_active && name == &options.delcol {
                    return false;
                }
                if unmatched[i] && (options.strong || options.drop_unmatched) {
                    return false;
                }
                if options.strong && options.blank_list.iter().any(|b| b == name) {
                    return false;
                }
                true
            })
            .collect();
        out.retain_columns(&keep)
    }

    /// Checks the dictionary's cell conventions: every cell of a '#'-named
    /// column must start with '#' or be a blank marker. One message per
    /// violation.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (c, name) in self.table.header.iter().enumerate() {
            if !name.starts_with('#') {
                continue;
            }
            for (r, row) in self.table.rows.iter().enumerate() {
                let cell = row.get(c).map(String::as_str).unwrap_or("");
                if !cell.starts_with('#') && !is_default_blank(cell) {
                    problems.push(format!(
                        "row {r}, column {name}: cell {cell:?} has no '#' prefix and is not blank"
                    ));
                }
            }
        }
        problems
    }
}

/// Parses the dictionary file at `dict_path` (strict), loads it and applies
/// it to `data` with default options plus the given strong flag.
pub fn apply_filter_from_file(
    data: &CsvmTable,
    dict_path: impl AsRef<Path>,
    target_set: &str,
    strong: bool,
) -> Result<CsvmTable> {
    let (dict_table, _diags): (CsvmTable, ParseDiagnostics) =
        crate::io::read_csvm_file(dict_path, data.separator, false)?;
    let dict = CsvmDictionary::load(dict_table)?;
    let options = FilterOptions {
        strong,
        ..FilterOptions::default()
    };
    Ok(dict.apply_filter(data, target_set, &options))
}
