//! Error type shared by every module of the crate.

use std::fmt;

use crate::io::ParseDiagnostics;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All the ways a CSVM operation can fail.
#[derive(Debug)]
pub enum Error {
    /// A column name was looked up but does not exist in the table.
    UnknownColumn(String),
    /// A column index was outside the table's column range.
    IndexOutOfRange { index: usize, len: usize },
    /// An attempt was made to name a column after a metadata keyword.
    ReservedName(String),
    /// Strict parsing found at least one error-severity problem.
    MalformedFile(ParseDiagnostics),
    /// A cell or metadata entry contains the field separator or a line
    /// terminator; CSVM has no quoting, so the value cannot be written.
    SeparatorInCell(String),
    /// The table holds content that the flat file format cannot carry,
    /// e.g. a first-column cell starting with '#'.
    Unrepresentable(String),
    /// Two tables were combined row-wise but their headers differ.
    SchemaMismatch(String),
    /// The table cannot be read as a dictionary (no translation-set columns).
    NotADictionary(String),
    /// Two translation sets in one dictionary share a name.
    DuplicateSetName(String),
    /// The requested translation set is not defined by the dictionary.
    UnknownSet(String),
    /// An SDF record could not be parsed; the index is the record position.
    MalformedRecord { index: usize, reason: String },
    /// The field separator is not usable ('#' or a line terminator).
    InvalidSeparator(char),
    /// Underlying file-system failure.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownColumn(name) => write!(f, "unknown column: {name:?}"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "column index {index} out of range (table has {len} columns)")
            }
            Error::ReservedName(name) => {
                write!(f, "{name:?} is a reserved metadata keyword and cannot name a column")
            }
            Error::MalformedFile(diags) => {
                write!(f, "malformed CSVM file ({} problem(s))", diags.entries.len())
            }
            Error::SeparatorInCell(context) => {
                write!(f, "separator or line terminator inside a value: {context}")
            }
            Error::Unrepresentable(context) => {
                write!(f, "table cannot be written as CSVM: {context}")
            }
            Error::SchemaMismatch(context) => write!(f, "schema mismatch: {context}"),
            Error::NotADictionary(context) => write!(f, "not a dictionary: {context}"),
            Error::DuplicateSetName(name) => {
                write!(f, "duplicate translation set name: {name:?}")
            }
            Error::UnknownSet(name) => write!(f, "unknown translation set: {name:?}"),
            Error::MalformedRecord { index, reason } => {
                write!(f, "malformed SDF record {index}: {reason}")
            }
            Error::InvalidSeparator(c) => write!(f, "invalid field separator: {c:?}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
