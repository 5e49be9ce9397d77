use hycon_core::textmetrics::{char_distance, edit_distance, levenshtein, word_error_rate};
use proptest::prelude::*;

/// Plain exponential recursion, no memo table.
fn oracle(a: &[u8], b: &[u8]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((x, ra)), Some((y, rb))) => {
            let sub = oracle(ra, rb) + usize::from(x != y);
            sub.min(oracle(ra, b) + 1).min(oracle(a, rb) + 1)
        }
    }
}

fn seq() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 0..=6)
}

fn words() -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(prop::sample::select(vec!["x", "y", "z", "w"]), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_recursive_oracle(a in seq(), b in seq()) {
        let d = oracle(&a, &b);
        prop_assert_eq!(levenshtein(&a, &b), d);
        if !a.is_empty() {
            let s = edit_distance(&a, &b).unwrap();
            prop_assert_eq!(s.errors(), d);
            prop_assert_eq!(s.ref_len, a.len());
            prop_assert_eq!(a.len() - s.deletions + s.insertions, b.len());
        }
    }

    #[test]
    fn distance_is_symmetric(a in seq(), b in seq()) {
        prop_assert_eq!(levenshtein(&a, &b), levenshtein(&b, &a));
    }

    #[test]
    fn triangle_inequality(a in seq(), b in seq(), c in seq()) {
        prop_assert!(levenshtein(&a, &c) <= levenshtein(&a, &b) + levenshtein(&b, &c));
    }

    #[test]
    fn wer_zero_only_on_identity(a in words(), b in words()) {
        let (ra, rb) = (a.join(" "), b.join(" "));
        prop_assert_eq!(word_error_rate(&ra, &ra).unwrap(), 0.0);
        let w = word_error_rate(&ra, &rb).unwrap();
        if a == b {
            prop_assert_eq!(w, 0.0);
        } else {
            prop_assert!(w > 0.0);
        }
    }

    #[test]
    fn character_distance_uses_scalar_values(a in "[అఆఇ]{0,5}", b in "[అఆఇ]{0,5}") {
        let ca: Vec<char> = a.chars().collect();
        let cb: Vec<char> = b.chars().collect();
        prop_assert_eq!(char_distance(&a, &b), levenshtein(&ca, &cb));
        prop_assert!(char_distance(&a, &b) <= ca.len().max(cb.len()));
    }
}
