//! Union/intersection checked against brute-force oracles on generated
//! table pairs, plus the name-set invariants.

use std::collections::BTreeSet;

use csvm::algebra::{concat, intersect, mask_union, union};
use csvm::CsvmTable;
use csvm_testkit::{arb_table_pair, oracle_intersect, oracle_union};
use proptest::prelude::*;

fn name_set(table: &CsvmTable) -> BTreeSet<String> {
    table.header.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn union_matches_the_oracle((a, b) in arb_table_pair()) {
        let got = union(&a, &b);
        prop_assert_eq!(&got, &oracle_union(&a, &b));
        // name set is the set union, row count is the sum, result is rectangular
        let expected: BTreeSet<String> = name_set(&a).union(&name_set(&b)).cloned().collect();
        prop_assert_eq!(name_set(&got), expected);
        prop_assert_eq!(got.row_count(), a.row_count() + b.row_count());
        prop_assert!(got.validate().is_empty());
    }

    #[test]
    fn intersect_matches_the_oracle((a, b) in arb_table_pair()) {
        let got = intersect(&a, &b);
        prop_assert_eq!(&got, &oracle_intersect(&a, &b));
        let common: BTreeSet<String> =
            name_set(&a).intersection(&name_set(&b)).cloned().collect();
        match got {
            None => prop_assert!(common.is_empty()),
            Some(table) => {
                prop_assert_eq!(name_set(&table), common);
                prop_assert_eq!(table.row_count(), a.row_count() + b.row_count());
                prop_assert!(table.validate().is_empty());
            }
        }
    }

    #[test]
    fn intersect_commutes_on_the_name_set((a, b) in arb_table_pair()) {
        let ab = intersect(&a, &b).map(|t| name_set(&t));
        let ba = intersect(&b, &a).map(|t| name_set(&t));
        prop_assert_eq!(ab, ba);
    }
}

proptest! {
    #[test]
    fn union_associates_on_the_name_set(
        (a, b) in arb_table_pair(),
        (c, _) in arb_table_pair(),
    ) {
        let left = name_set(&union(&union(&a, &b), &c));
        let right = name_set(&union(&a, &union(&b, &c)));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn concat_after_projection_restores_row_blocks((a, b) in arb_table_pair()) {
        // concatenating a with itself always works and doubles the rows
        let doubled = concat(&a, &a).unwrap();
        prop_assert_eq!(doubled.row_count(), 2 * a.row_count());
        // mask_union never changes the row count and covers the mask columns
        let masked = mask_union(&a, &b);
        prop_assert_eq!(masked.row_count(), a.row_count());
        let names = name_set(&masked);
        prop_assert!(name_set(&b).is_subset(&names));
        prop_assert!(masked.validate().is_empty());
    }
}
