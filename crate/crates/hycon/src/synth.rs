//! Generated text for language-model experiments: a small template grammar
//! of clinic-style sentences and a character-level word corrupter.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUBJECTS: &[&str] = &[
    "the nurse",
    "the doctor",
    "the patient",
    "my mother",
    "his father",
    "the pharmacist",
];
const VERBS: &[&str] = &["checked", "recorded", "measured", "reported", "monitored"];
const OBJECTS: &[&str] = &[
    "blood pressure",
    "sugar level",
    "body weight",
    "heart rate",
    "oxygen saturation",
    "temperature",
];
const TIMES: &[&str] = &[
    "this morning",
    "after lunch",
    "before dinner",
    "every evening",
    "at night",
];
const ADVICE: &[&str] = &[
    "please take the tablets",
    "drink more water",
    "avoid salty food",
    "walk for thirty minutes",
    "come back next week",
];

/// `n` sentences; about a third carry a trailing advice clause.
pub fn generate_corpus(seed: u64, n: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut s = format!(
                "{} {} the {} {}",
                SUBJECTS.choose(&mut rng).unwrap(),
                VERBS.choose(&mut rng).unwrap(),
                OBJECTS.choose(&mut rng).unwrap(),
                TIMES.choose(&mut rng).unwrap(),
            );
            if rng.random_bool(1.0 / 3.0) {
                s.push_str(" and ");
                s.push_str(ADVICE.choose(&mut rng).unwrap());
            }
            s
        })
        .collect()
}

/// Every word the grammar can produce, sorted.
pub fn grammar_vocabulary() -> Vec<String> {
    let mut words: Vec<String> = [SUBJECTS, VERBS, OBJECTS, TIMES, ADVICE]
        .iter()
        .flat_map(|list| list.iter())
        .chain(&["the", "and"])
        .flat_map(|phrase| phrase.split(' '))
        .map(str::to_string)
        .collect();
    words.sort();
    words.dedup();
    words
}

const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

fn edit_once(rng: &mut ChaCha8Rng, word: &mut Vec<char>) {
    let letter = char::from(*ALPHABET.choose(rng).unwrap());
    let op = if word.len() <= 1 {
        rng.random_range(0..2)
    } else {
        rng.random_range(0..3)
    };
    match op {
        0 => {
            let i = rng.random_range(0..word.len());
            word[i] = letter;
        }
        1 => {
            let i = rng.random_range(0..=word.len());
            word.insert(i, letter);
        }
        _ => {
            let i = rng.random_range(0..word.len());
            word.remove(i);
        }
    }
}

/// Replaces each word with probability `rate` by a copy carrying one or two
/// random character edits. A corrupted word always differs from the
/// original.
pub fn corrupt_sentences(sentences: &[String], rate: f64, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sentences
        .iter()
        .map(|s| {
            s.split_whitespace()
                .map(|w| {
                    if !rng.random_bool(rate) {
                        return w.to_string();
                    }
                    loop {
                        let mut chars: Vec<char> = w.chars().collect();
                        for _ in 0..rng.random_range(1..=2) {
                            edit_once(&mut rng, &mut chars);
                        }
                        let out: String = chars.into_iter().collect();
                        if out != w && !out.is_empty() {
                            return out;
                        }
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}
