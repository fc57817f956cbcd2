//! `csvm` command-line tool.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 i/o failure,
//! 3 empty result (`intersect` with no common column). Diagnostics go to
//! standard error; table data goes to standard output unless `-o` is given.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use csvm::dict::DEFAULT_DELCOL;
use csvm::{algebra, sdf, CsvmDictionary, CsvmTable, Error, FilterOptions};

#[derive(Parser)]
#[command(name = "csvm", version, about = "Inspect, validate and transform CSVM tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_separator(s: &str) -> Result<char, String> {
    match s {
        "tab" => return Ok('\t'),
        "comma" => return Ok(','),
        "semicolon" => return Ok(';'),
        _ => {}
    }
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c != '#' && c != '\n' && c != '\r' => Ok(c),
        _ => Err(format!(
            "expected \"tab\", \"comma\", \"semicolon\" or a single character, got {s:?}"
        )),
    }
}

#[derive(clap::Args)]
struct SepArg {
    /// Field separator: "tab", "comma", "semicolon" or a single character
    #[arg(long, default_value = "tab", value_parser = parse_separator)]
    sep: char,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and report every problem found
    Validate {
        path: PathBuf,
        #[command(flatten)]
        sep: SepArg,
        /// Treat warnings as errors
        #[arg(long)]
        strict: bool,
    },
    /// Show title, shape, per-column metadata and translation sets
    Info {
        path: PathBuf,
        #[command(flatten)]
        sep: SepArg,
    },
    /// Print a human-readable report of the table
    Dump {
        path: PathBuf,
        #[command(flatten)]
        sep: SepArg,
        /// First row to list
        #[arg(long, default_value_t = 0)]
        offset: usize,
        /// Number of rows to list; 0 means all remaining
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    /// Rename and delete columns through a dictionary translation set
    Filter {
        data: PathBuf,
        /// Dictionary file
        #[arg(long)]
        dict: PathBuf,
        /// Target translation set
        #[arg(long)]
        set: String,
        /// Also drop unresolved and blank-named columns
        #[arg(long)]
        strong: bool,
        /// Take type/width labels from the dictionary's standard columns
        #[arg(long)]
        apply_standard: bool,
        /// Deletion sentinel; shorter than two characters disables it
        #[arg(long, default_value = DEFAULT_DELCOL)]
        delcol: String,
        #[command(flatten)]
        sep: SepArg,
        /// Write the result here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Combine two tables over the union of their columns
    Union {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        sep: SepArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Project two tables onto their common columns
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        sep: SepArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Append the rows of one table to another with the same header
    Cat {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        sep: SepArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert an SDF collection into a CSVM table
    FromSdf {
        path: PathBuf,
        /// Column that will carry the escaped molblocks
        #[arg(long)]
        structure_col: Option<String>,
        #[command(flatten)]
        sep: SepArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a CSVM table into an SDF collection
    ToSdf {
        path: PathBuf,
        /// Column holding the escaped molblocks
        #[arg(long)]
        structure_col: Option<String>,
        #[command(flatten)]
        sep: SepArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_EMPTY: u8 = 3;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, u8> {
    fs::read(path).map_err(|e| {
        eprintln!("csvm: {}: {e}", path.display());
        EXIT_IO
    })
}

/// Lenient parse with diagnostics on stderr; error-severity findings stop
/// the command.
fn read_table(path: &Path, sep: char) -> Result<CsvmTable, u8> {
    let bytes = read_bytes(path)?;
    let (table, diags) = csvm::parse_csvm(&bytes, sep, true).map_err(|e| {
        eprintln!("csvm: {}: {e}", path.display());
        error_code(&e)
    })?;
    for d in &diags.entries {
        eprintln!("{}: {d}", path.display());
    }
    if diags.has_errors() {
        return Err(EXIT_INVALID);
    }
    Ok(table)
}

fn write_result(bytes: &[u8], output: Option<&Path>) -> Result<(), u8> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| {
            eprintln!("csvm: {}: {e}", path.display());
            EXIT_IO
        }),
        None => std::io::stdout().write_all(bytes).map_err(|e| {
            eprintln!("csvm: stdout: {e}");
            EXIT_IO
        }),
    }
}

fn write_table(table: &CsvmTable, sep: char, output: Option<&Path>) -> Result<(), u8> {
    let bytes = csvm::serialize_csvm(table, "\n", sep, true).map_err(|e| {
        eprintln!("csvm: {e}");
        error_code(&e)
    })?;
    write_result(&bytes, output)
}

fn cmd_validate(path: &Path, sep: char, strict: bool) -> u8 {
    let bytes = match read_bytes(path) {
        Ok(b) => b,
        Err(code) => return code,
    };
    match csvm::parse_csvm(&bytes, sep, true) {
        Ok((_, diags)) => {
            for d in &diags.entries {
                eprintln!("{d}");
            }
            if diags.has_errors() || (strict && !diags.is_empty()) {
                EXIT_INVALID
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            eprintln!("csvm: {e}");
            error_code(&e)
        }
    }
}

fn cmd_info(path: &Path, sep: char) -> u8 {
    let table = match read_table(path, sep) {
        Ok(t) => t,
        Err(code) => return code,
    };
    println!("title: {}", table.title);
    println!("columns: {}", table.column_count());
    println!("rows: {}", table.row_count());
    println!("annotations: {}", table.annotations.len());
    println!("meta entries: {}", table.meta.len());
    for (i, name) in table.header.iter().enumerate() {
        println!("  {i} {name} {} {}", table.types[i], table.widths[i]);
    }
    if let Ok(dict) = CsvmDictionary::load(table) {
        println!("sets: {}", dict.set_names.join(", "));
    }
    EXIT_OK
}

fn cmd_dump(path: &Path, sep: char, offset: usize, limit: usize) -> u8 {
    match read_table(path, sep) {
        Ok(table) => {
            print!("{}", csvm::dump(&table, offset, limit));
            EXIT_OK
        }
        Err(code) => code,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_filter(
    data_path: &Path,
    dict_path: &Path,
    set: &str,
    strong: bool,
    apply_standard: bool,
    delcol: String,
    sep: char,
    output: Option<&Path>,
) -> u8 {
    let data = match read_table(data_path, sep) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let dict_table = match read_table(dict_path, sep) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let dict = match CsvmDictionary::load(dict_table) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("csvm: {}: {e}", dict_path.display());
            return error_code(&e);
        }
    };
    for warning in &dict.warnings {
        eprintln!("{}: WARNING: {warning}", dict_path.display());
    }
    if !dict.set_names.iter().any(|n| n == set) {
        eprintln!(
            "csvm: WARNING: set {set:?} is not defined by the dictionary (sets: {}); input passed through unchanged",
            dict.set_names.join(", ")
        );
    }
    let options = FilterOptions {
        strong,
        apply_standard,
        delcol,
        ..FilterOptions::default()
    };
    let filtered = dict.apply_filter(&data, set, &options);
    match write_table(&filtered, sep, output) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn cmd_pairwise(op: &str, a: &Path, b: &Path, sep: char, output: Option<&Path>) -> u8 {
    let (ta, tb) = match (read_table(a, sep), read_table(b, sep)) {
        (Ok(ta), Ok(tb)) => (ta, tb),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let result = match op {
        "union" => algebra::union(&ta, &tb),
        "intersect" => match algebra::intersect(&ta, &tb) {
            Some(t) => t,
            None => {
                println!("None data found");
                return EXIT_EMPTY;
            }
        },
        "cat" => match algebra::concat(&ta, &tb) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("csvm: {e}");
                return error_code(&e);
            }
        },
        _ => unreachable!(),
    };
    match write_table(&result, sep, output) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn cmd_from_sdf(path: &Path, structure_col: Option<&str>, sep: char, output: Option<&Path>) -> u8 {
    let bytes = match read_bytes(path) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let records = match sdf::parse_sdf(&bytes) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("csvm: {}: {e}", path.display());
            return error_code(&e);
        }
    };
    let mut table = match sdf::sdf_to_csvm(&records, structure_col) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("csvm: {e}");
            return error_code(&e);
        }
    };
    table.separator = sep;
    match write_table(&table, sep, output) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn cmd_to_sdf(path: &Path, structure_col: Option<&str>, sep: char, output: Option<&Path>) -> u8 {
    let table = match read_table(path, sep) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let records = match sdf::csvm_to_sdf(&table, structure_col) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("csvm: {e}");
            return error_code(&e);
        }
    };
    match write_result(&sdf::serialize_sdf(&records), output) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Validate { path, sep, strict } => cmd_validate(&path, sep.sep, strict),
        Command::Info { path, sep } => cmd_info(&path, sep.sep),
        Command::Dump { path, sep, offset, limit } => cmd_dump(&path, sep.sep, offset, limit),
        Command::Filter {
            data,
            dict,
            set,
            strong,
            apply_standard,
            delcol,
            sep,
            output,
        } => cmd_filter(
            &data,
            &dict,
            &set,
            strong,
            apply_standard,
            delcol,
            sep.sep,
            output.as_deref(),
        ),
        Command::Union { a, b, sep, output } => {
            cmd_pairwise("union", &a, &b, sep.sep, output.as_deref())
        }
        Command::Intersect { a, b, sep, output } => {
            cmd_pairwise("intersect", &a, &b, sep.sep, output.as_deref())
        }
        Command::Cat { a, b, sep, output } => {
            cmd_pairwise("cat", &a, &b, sep.sep, output.as_deref())
        }
        Command::FromSdf { path, structure_col, sep, output } => {
            cmd_from_sdf(&path, structure_col.as_deref(), sep.sep, output.as_deref())
        }
        Command::ToSdf { path, structure_col, sep, output } => {
            cmd_to_sdf(&path, structure_col.as_deref(), sep.sep, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}
