//! Acceptance suite: the end-to-end checks the toolkit must satisfy. Each
//! check prints a single `criterion N ...: PASS/FAIL` line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::panic::AssertUnwindSafe;
use std::process::Command;
use std::time::Instant;

use csvm::dict::apply_filter_from_file;
use csvm::{parse_csvm, serialize_csvm, CsvmDictionary, CsvmTable, Error, FilterOptions};
use csvm_testkit::{
    arb_table, arb_table_pair, arb_translation_scenario, csvm_fixture_names, fixture_bytes,
    fixture_path, oracle_intersect, oracle_union,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn criterion(number: u32, summary: &str, check: impl FnOnce()) {
    match std::panic::catch_unwind(AssertUnwindSafe(check)) {
        Ok(()) => println!("criterion {number} ({summary}): PASS"),
        Err(cause) => {
            println!("criterion {number} ({summary}): FAIL");
            std::panic::resume_unwind(cause);
        }
    }
}

fn parse_fixture(name: &str) -> CsvmTable {
    let (table, diags) = parse_csvm(&fixture_bytes(name), '\t', false).unwrap();
    assert!(!diags.has_errors(), "{name}: {diags:?}");
    table
}

fn runner_with(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        ..Config::default()
    })
}

fn csvm_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_csvm"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_1_inventory_fixture() {
    criterion(1, "chemical inventory parses to known shape in under 1s", || {
        let start = Instant::now();
        let table = parse_fixture("inventory.csvm");
        let elapsed = start.elapsed();
        assert_eq!(table.title, "Chemical inventory");
        assert_eq!(table.column_count(), 5);
        assert_eq!(table.row_count(), 6);
        let column = table.get_column("masse_exacte").unwrap();
        assert_eq!(column.cells[0], "181.19293");
        assert!(elapsed.as_secs_f64() < 1.0, "parse took {elapsed:?}");
    });
}

#[test]
fn criterion_2_dictionary_model() {
    criterion(2, "dictionary sets and standard resolution", || {
        let dict = CsvmDictionary::load(parse_fixture("inventory_dictionary.csvm")).unwrap();
        assert_eq!(dict.set_names, vec!["SYS1", "SYS2", "SYS1_UK"]);
        let resolved = dict.resolve("numero", "SYS2").unwrap();
        assert_eq!(resolved.target, "ID");
        assert_eq!(resolved.type_label.as_deref(), Some("NUMERIC"));
        assert_eq!(resolved.width_label.as_deref(), Some("10"));
    });
}

#[test]
fn criterion_3_collection_filter_end_to_end() {
    criterion(3, "dictionary filter reproduces the golden collection", || {
        let data = parse_fixture("collection.csvm");
        let dict = CsvmDictionary::load(parse_fixture("dictionary_explicit.csvm")).unwrap();
        let out = dict.apply_filter(&data, "CN", &FilterOptions::default());
        assert_eq!(out.header, vec!["ID", "identificateur", "plaque", "vrac", "smi"]);
        assert_eq!(out.row_count(), 15);
        let bytes = serialize_csvm(&out, "\n", '\t', true).unwrap();
        assert_eq!(bytes, fixture_bytes("collection_filtered_cn.csvm"), "byte-identical golden");

        // the command line reaches the same bytes
        let run = csvm_bin(&[
            "filter",
            fixture_path("collection.csvm").to_str().unwrap(),
            "--dict",
            fixture_path("dictionary_explicit.csvm").to_str().unwrap(),
            "--set",
            "CN",
        ]);
        assert!(run.status.success());
        assert_eq!(run.stdout, fixture_bytes("collection_filtered_cn.csvm"));
    });
}

#[test]
fn criterion_4_strong_mode_equivalence() {
    criterion(4, "blank-marker dictionary in strong mode matches, generally", || {
        let data = parse_fixture("collection.csvm");
        let golden = parse_fixture("collection_filtered_cn.csvm");
        let strong =
            apply_filter_from_file(&data, fixture_path("dictionary_blank.csvm"), "CN", true)
                .unwrap();
        assert_eq!(strong, golden);

        // explicit-sentinel/default and blank-marker/strong agree on random
        // pairs whenever every data header occurs in the source set
        runner_with(1000)
            .run(&arb_translation_scenario(), |scenario| {
                let explicit = CsvmDictionary::load(scenario.explicit_dict.clone()).unwrap();
                let blank = CsvmDictionary::load(scenario.blank_dict.clone()).unwrap();
                let a = explicit.apply_filter(
                    &scenario.data,
                    &scenario.target_set,
                    &FilterOptions::default(),
                );
                let b = blank.apply_filter(
                    &scenario.data,
                    &scenario.target_set,
                    &FilterOptions::strong(),
                );
                prop_assert_eq!(a, b);
                Ok(())
            })
            .unwrap();
    });
}

#[test]
fn criterion_5_round_trip() {
    criterion(5, "parse/serialize round trip on fixtures and 1000 random tables", || {
        for name in csvm_fixture_names() {
            let parsed = parse_fixture(&name);
            let once = serialize_csvm(&parsed, "\n", '\t', true).unwrap();
            let (back, _) = parse_csvm(&once, '\t', false).unwrap();
            assert_eq!(back, parsed, "fixture {name}");
            let twice = serialize_csvm(&back, "\n", '\t', true).unwrap();
            assert_eq!(once, twice, "fixture {name} fixpoint");
        }
        runner_with(1000)
            .run(&arb_table(), |table| {
                let once = serialize_csvm(&table, "\n", '\t', true).unwrap();
                let (back, _) = parse_csvm(&once, '\t', false).unwrap();
                prop_assert_eq!(&back, &table);
                let twice = serialize_csvm(&back, "\n", '\t', true).unwrap();
                prop_assert_eq!(once, twice);
                Ok(())
            })
            .unwrap();
    });
}

#[test]
fn criterion_6_annotations_survive() {
    criterion(6, "annotation lines and meta entry survive re-serialization", || {
        let table = parse_fixture("annotated_params.csvm");
        assert_eq!(table.row_count(), 6, "exactly six data rows");
        assert!(!table.annotations.is_empty());
        let out = String::from_utf8(serialize_csvm(&table, "\n", '\t', true).unwrap()).unwrap();
        for annotation in &table.annotations {
            assert!(out.contains(&annotation.text), "lost {:?}", annotation.text);
        }
        assert!(out.contains("#META\t03/June/07"));
    });
}

#[test]
fn criterion_7_algebra() {
    criterion(7, "intersect/union against brute force, empty intersection contract", || {
        let a = parse_fixture("overlap_a.csvm");
        let disjoint = parse_fixture("disjoint.csvm");
        assert!(csvm::algebra::intersect(&a, &disjoint).is_none());

        let run = csvm_bin(&[
            "intersect",
            fixture_path("overlap_a.csvm").to_str().unwrap(),
            fixture_path("disjoint.csvm").to_str().unwrap(),
        ]);
        assert_eq!(run.status.code(), Some(3));
        assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "None data found");

        runner_with(1000)
            .run(&arb_table_pair(), |(a, b)| {
                let names = |t: &CsvmTable| -> BTreeSet<String> { t.header.iter().cloned().collect() };
                let union = csvm::algebra::union(&a, &b);
                prop_assert_eq!(&union, &oracle_union(&a, &b));
                let expected: BTreeSet<String> = names(&a).union(&names(&b)).cloned().collect();
                prop_assert_eq!(names(&union), expected);
                prop_assert_eq!(union.row_count(), a.row_count() + b.row_count());

                let intersection = csvm::algebra::intersect(&a, &b);
                prop_assert_eq!(&intersection, &oracle_intersect(&a, &b));
                let common: BTreeSet<String> =
                    names(&a).intersection(&names(&b)).cloned().collect();
                match intersection {
                    None => prop_assert!(common.is_empty()),
                    Some(t) => {
                        prop_assert_eq!(names(&t), common);
                        prop_assert_eq!(t.row_count(), a.row_count() + b.row_count());
                    }
                }
                Ok(())
            })
            .unwrap();
    });
}

#[test]
fn criterion_8_sdf_pipeline() {
    criterion(8, "SDF in, dictionary filter, SDF out keeps the translated keys", || {
        let records = csvm::sdf::parse_sdf(&fixture_bytes("collection.sdf")).unwrap();
        assert!(records.len() >= 3);
        let table = csvm::sdf::sdf_to_csvm(&records, None).unwrap();
        let dict = CsvmDictionary::load(parse_fixture("dictionary_explicit.csvm")).unwrap();
        let filtered = dict.apply_filter(&table, "CN", &FilterOptions::default());
        let out = csvm::sdf::csvm_to_sdf(&filtered, None).unwrap();
        assert_eq!(out.len(), records.len());
        let expected: BTreeSet<&str> =
            ["ID", "identificateur", "plaque", "vrac", "smi"].into_iter().collect();
        let keys: BTreeSet<&str> = out
            .iter()
            .flat_map(|r| r.properties.iter().map(|(k, _)| k.as_str()))
            .collect();
        assert_eq!(keys, expected);
    });
}

#[test]
fn criterion_9_separator_safety() {
    criterion(9, "separator inside a cell refuses to serialize", || {
        let mut table = CsvmTable::new();
        table.header = vec!["a".into(), "b".into()];
        table.types = vec![String::new(); 2];
        table.widths = vec![String::new(); 2];
        table.rows = vec![vec!["clean".into(), "bro\tken".into()]];
        match serialize_csvm(&table, "\n", '\t', true) {
            Err(Error::SeparatorInCell(_)) => {}
            other => panic!("expected SeparatorInCell, got {other:?}"),
        }
        // any table reachable by parsing still serializes
        let (parsed, _) = parse_csvm(&fixture_bytes("collection.csvm"), '\t', false).unwrap();
        assert!(serialize_csvm(&parsed, "\n", '\t', true).is_ok());
    });
}
