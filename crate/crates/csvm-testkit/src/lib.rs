//! Test support shared by the workspace: fixture locations, random table
//! generators and brute-force oracles. Never a runtime dependency.

use std::path::{Path, PathBuf};

use csvm::{Annotation, CsvmTable};
use proptest::prelude::*;

/// Directory holding the fixture files used across the test suites.
pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Absolute path of one fixture.
pub fn fixture_path(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

/// Raw bytes of one fixture.
pub fn fixture_bytes(name: &str) -> Vec<u8> {
    let path = fixture_path(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()))
}

/// Every `.csvm` fixture file name, sorted.
pub fn csvm_fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.file_name().to_string_lossy().into_owned())
        .filter(|name| name.ends_with(".csvm"))
        .collect();
    names.sort();
    names
}

fn arb_column_name() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => "[A-Za-z][A-Za-z0-9_]{0,7}",
        1 => "#[A-Za-z]{1,6}",
    ]
}

fn arb_label() -> impl Strategy<Value = String> {
    prop_oneof![
        Just(String::new()),
        Just("TEXT".to_string()),
        Just("NUMERIC".to_string()),
        "[0-9]{1,3}",
    ]
}

fn arb_cell() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => "[A-Za-z0-9 ,;._()=/-]{0,10}",
        1 => Just("-".to_string()),
        1 => Just(String::new()),
        1 => "[àéèïçA-Za-z]{1,6}",
    ]
}

fn arb_free_text() -> impl Strategy<Value = String> {
    // titles and meta notes may contain the separator itself
    "[A-Za-z0-9 ,._\t-]{0,16}"
}

fn arb_annotation_text() -> impl Strategy<Value = String> {
    "#[A-Za-z0-9 =_-]{0,12}".prop_map(|s| {
        if csvm::KEYWORDS.contains(&s.as_str()) {
            format!("{s}x")
        } else {
            s
        }
    })
}

/// A random valid table: rectangular, representable (no separator inside
/// cells, no '#'-leading first column, no all-blank row), tab-separated.
pub fn arb_table() -> BoxedStrategy<CsvmTable> {
    (1usize..6)
        .prop_flat_map(|ncols| {
            (
                prop::collection::vec(arb_column_name(), ncols),
                prop::collection::vec(arb_label(), ncols),
                prop::collection::vec(arb_label(), ncols),
                prop::collection::vec(prop::collection::vec(arb_cell(), ncols), 0..8),
                arb_free_text(),
                prop::collection::vec(arb_free_text(), 0..3),
                prop::collection::vec(arb_annotation_text(), 0..4),
            )
        })
        .prop_map(|(header, types, widths, mut rows, title, meta, annotation_texts)| {
            for row in &mut rows {
                if row[0].starts_with('#') {
                    row[0] = format!("x{}", row[0]);
                }
                if row.iter().all(|c| c.trim().is_empty()) {
                    row[0] = "x".to_string();
                }
            }
            let annotations = annotation_texts
                .into_iter()
                .enumerate()
                .map(|(line_index, text)| Annotation { line_index, text })
                .collect();
            CsvmTable {
                title,
                header,
                types,
                widths,
                meta,
                annotations,
                rows,
                separator: '\t',
            }
        })
        .boxed()
}

/// A pair of tables drawing their column names from one small shared pool,
/// so unions and intersections exercise both shared and private columns.
pub fn arb_table_pair() -> BoxedStrategy<(CsvmTable, CsvmTable)> {
    let pool = ["alpha", "beta", "gamma", "delta", "eps", "zeta"];
    let side = move || {
        (
            prop::collection::btree_set(0usize..pool.len(), 1..=pool.len()),
            prop::collection::vec(prop::collection::vec(arb_cell(), pool.len()), 0..5),
        )
            .prop_map(move |(picked, raw_rows)| {
                let names: Vec<String> = picked.iter().map(|&i| pool[i].to_string()).collect();
                let mut t = CsvmTable::new();
                t.types = names.iter().map(|n| format!("T{n}")).collect();
                t.widths = vec!["10".to_string(); names.len()];
                t.rows = raw_rows
                    .into_iter()
                    .map(|row| {
                        let mut cells: Vec<String> =
                            row.into_iter().take(names.len()).collect();
                        cells.resize(names.len(), String::new());
                        cells
                    })
                    .collect();
                t.header = names;
                t
            })
    };
    (side(), side()).boxed()
}

/// Everything needed to check that an explicit-sentinel dictionary in
/// default mode and a blank-marker dictionary in strong mode filter a table
/// to the same result. Every data header occurs in the dictionaries' source
/// set, so strong mode never deletes for being unknown.
#[derive(Debug, Clone)]
pub struct TranslationScenario {
    pub data: CsvmTable,
    /// Deletions spelled out with the `__DEL__` sentinel.
    pub explicit_dict: CsvmTable,
    /// Same rows, deletions marked with the '-' blank cell.
    pub blank_dict: CsvmTable,
    pub target_set: String,
}

pub fn arb_translation_scenario() -> BoxedStrategy<TranslationScenario> {
    (1usize..8)
        .prop_flat_map(|n_entries| {
            (
                prop::collection::btree_set("[a-z][a-z0-9]{1,6}", n_entries..=n_entries),
                prop::collection::vec(
                    prop::option::of("[A-Z][A-Za-z0-9]{0,6}"),
                    n_entries..=n_entries,
                ),
                prop::collection::vec(0usize..n_entries, 1..6),
                prop::collection::vec(prop::collection::vec(arb_cell(), 1..6), 0..4),
            )
        })
        .prop_map(|(sources, targets, column_picks, raw_rows)| {
            let sources: Vec<String> = sources.into_iter().collect();
            let dict_rows = |marker: &str| -> Vec<Vec<String>> {
                sources
                    .iter()
                    .zip(&targets)
                    .map(|(source, target)| {
                        let target = target.clone().unwrap_or_else(|| marker.to_string());
                        vec![source.clone(), target, "#TEXT".to_string(), "#10".to_string()]
                    })
                    .collect()
            };
            let dict = |marker: &str| -> CsvmTable {
                let mut t = CsvmTable::new();
                t.header = ["LOCAL", "CN", "#TYPE", "#WIDTH"].map(String::from).to_vec();
                t.types = ["TEXT", "TEXT", "#TEXT", "#TEXT"].map(String::from).to_vec();
                t.widths = ["50", "50", "#50", "#50"].map(String::from).to_vec();
                t.rows = dict_rows(marker);
                t
            };
            let mut data = CsvmTable::new();
            data.header = column_picks.iter().map(|&i| sources[i].clone()).collect();
            data.types = vec!["TEXT".to_string(); data.header.len()];
            data.widths = vec!["10".to_string(); data.header.len()];
            data.rows = raw_rows
                .into_iter()
                .map(|row| {
                    let mut cells: Vec<String> = row.into_iter().take(data.header.len()).collect();
                    cells.resize(data.header.len(), String::new());
                    cells
                })
                .collect();
            TranslationScenario {
                data,
                explicit_dict: dict("__DEL__"),
                blank_dict: dict("-"),
                target_set: "CN".to_string(),
            }
        })
        .boxed()
}

/// Brute-force reference for `csvm::algebra::union`.
pub fn oracle_union(a: &CsvmTable, b: &CsvmTable) -> CsvmTable {
    let mut header: Vec<String> = a.header.clone();
    let mut types = a.types.clone();
    let mut widths = a.widths.clone();
    for (i, name) in b.header.iter().enumerate() {
        if !header.contains(name) {
            header.push(name.clone());
            types.push(b.types[i].clone());
            widths.push(b.widths[i].clone());
        }
    }
    let first_index = |table: &CsvmTable, name: &str| -> Option<usize> {
        table.header.iter().position(|h| h == name)
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    for row in &a.rows {
        let mut cells = Vec::new();
        for (c, _) in header.iter().enumerate() {
            cells.push(if c < a.header.len() { row[c].clone() } else { String::new() });
        }
        rows.push(cells);
    }
    for row in &b.rows {
        let mut cells = Vec::new();
        for name in &header {
            cells.push(match first_index(b, name) {
                Some(i) => row[i].clone(),
                None => String::new(),
            });
        }
        rows.push(cells);
    }
    let mut out = CsvmTable::new();
    out.title = "union".into();
    out.header = header;
    out.types = types;
    out.widths = widths;
    out.rows = rows;
    out.separator = a.separator;
    out
}

/// Brute-force reference for `csvm::algebra::intersect`.
pub fn oracle_intersect(a: &CsvmTable, b: &CsvmTable) -> Option<CsvmTable> {
    let mut names: Vec<String> = Vec::new();
    for name in &a.header {
        if b.header.contains(name) && !names.contains(name) {
            names.push(name.clone());
        }
    }
    if names.is_empty() {
        return None;
    }
    let project = |table: &CsvmTable| -> Vec<Vec<String>> {
        table
            .rows
            .iter()
            .map(|row| {
                names
                    .iter()
                    .map(|name| {
                        let i = table.header.iter().position(|h| h == name).unwrap();
                        row[i].clone()
                    })
                    .collect()
            })
            .collect()
    };
    let mut rows = project(a);
    rows.extend(project(b));
    let mut out = CsvmTable::new();
    out.title = "intersection".into();
    out.types = names
        .iter()
        .map(|n| a.types[a.header.iter().position(|h| h == n).unwrap()].clone())
        .collect();
    out.widths = names
        .iter()
        .map(|n| a.widths[a.header.iter().position(|h| h == n).unwrap()].clone())
        .collect();
    out.header = names;
    out.rows = rows;
    out.separator = a.separator;
    Some(out)
}
