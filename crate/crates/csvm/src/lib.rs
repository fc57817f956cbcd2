//! CSVM: tab-separated tables with an embedded metadata block.
//!
//! A CSVM file keeps its data rows as plain separated text and describes
//! them with keyword lines (`#TITLE`, `#HEADER`, `#TYPE`, `#WIDTH`,
//! `#META`) placed anywhere in the same file, plus free '#' remark lines.
//! The format stays readable without any tooling, which makes it a good
//! long-term carrier for raw tabular data.
//!
//! This crate provides:
//!
//! - [`table`]: the in-memory model ([`CsvmTable`]) and elementary column
//!   operations;
//! - [`io`]: parsing with diagnostics, round-trip-faithful serialization
//!   and a human-readable dump;
//! - [`dict`]: dictionaries ([`CsvmDictionary`]) whose columns are
//!   translation sets, and the column rename/delete filter driven by them;
//! - [`algebra`]: union, intersection, concatenation and column masks over
//!   pairs of tables;
//! - [`sdf`]: conversion between SDF chemical-table collections and tables.
//!
//! ```
//! use csvm::{parse_csvm, CsvmDictionary, FilterOptions};
//!
//! let data = "1\tTyrosine\n#HEADER\tnumero\tnom\n#TYPE\tNUMERIC\tTEXT\n#WIDTH\t10\t100\n";
//! let dict = "numero\tID\nnom\tname\n#HEADER\tLOCAL\tEN\n#TYPE\tTEXT\tTEXT\n#WIDTH\t50\t50\n";
//!
//! let (table, _) = parse_csvm(data.as_bytes(), '\t', false)?;
//! let (dict_table, _) = parse_csvm(dict.as_bytes(), '\t', false)?;
//! let dict = CsvmDictionary::load(dict_table)?;
//! let renamed = dict.apply_filter(&table, "EN", &FilterOptions::default());
//! assert_eq!(renamed.header, vec!["ID", "name"]);
//! # Ok::<(), csvm::Error>(())
//! ```

pub mod algebra;
pub mod dict;
mod error;
pub mod io;
pub mod sdf;
pub mod table;

pub use dict::{CsvmDictionary, FilterOptions, ResolvedName, TranslationEntry, TranslationSet};
pub use error::{Error, Result};
pub use io::{dump, parse_csvm, read_csvm_file, serialize_csvm, Diagnostic, ParseDiagnostics, Severity};
pub use table::{Annotation, ColumnView, CsvmTable, DEFAULT_SEPARATOR, KEYWORDS};
