//! Randomized checks through the public API, at sizes just past what the
//! exhaustive suites reach.

use proptest::prelude::*;
use sharp_core::expr::{evaluate, Value};
use sharp_core::fqsym::{sharp_interval, sharp_set, FQSym};
use sharp_core::realization::oracle_sharp;
use sharp_core::wqsym::{sharp_m, WQSym};
use sharp_core::{pack, park, std, PackedWord, Permutation, Word};

fn word(max_len: usize, alphabet: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=alphabet, 1..=max_len)
}

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn packed(max_len: usize) -> impl Strategy<Value = PackedWord> {
    word(max_len, max_len as u32).prop_map(|w| pack(&w))
}

proptest! {
    #[test]
    fn sharp_is_d_of_concatenation(u in word(7, 5), v in word(7, 5)) {
        let (u, v) = (Word::new(u).unwrap(), Word::new(v).unwrap());
        prop_assert_eq!(u.sharp(&v), u.concat(&v).d(u.len()).unwrap());
    }

    #[test]
    fn normal_forms_agree(w in word(9, 12)) {
        prop_assert_eq!(std(park(&w).as_slice()), std(&w));
        prop_assert_eq!(pack(park(&w).as_slice()), pack(&w));
        prop_assert_eq!(std(pack(&w).as_slice()), std(&w));
    }

    #[test]
    fn fqsym_support_is_the_interval(a in permutation(5), b in permutation(4)) {
        let mut support = sharp_set(&a, &b);
        support.sort();
        prop_assert_eq!(support, sharp_interval(&a, &b).members);
    }

    #[test]
    fn fqsym_rule_matches_words(a in permutation(4), b in permutation(4)) {
        prop_assert_eq!(oracle_sharp::<FQSym>(&a, &b).unwrap(), sharp_core::fqsym::sharp_g(&a, &b));
    }

    #[test]
    fn wqsym_rule_matches_words(a in packed(4), b in packed(3)) {
        prop_assert_eq!(oracle_sharp::<WQSym>(&a, &b).unwrap(), sharp_m(&a, &b));
    }

    #[test]
    fn rendered_values_parse_back(a in permutation(4), b in permutation(3), c in -3i32..4) {
        let input = format!("{c} * (G{a} + F{b}) # G{b}");
        let value = evaluate(&input, None).unwrap();
        let again = evaluate(&value.render(), value.algebra()).unwrap();
        prop_assert_eq!(again.render(), value.render());
        if c == 0 {
            prop_assert!(matches!(value, Value::Element(_)) && value.terms().is_empty());
        }
    }
}
