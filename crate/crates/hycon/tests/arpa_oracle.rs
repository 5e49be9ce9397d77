//! Scores sentences by walking the dumped ARPA text directly, with the
//! textbook backoff recursion, and compares with the loaded model.

use std::collections::HashMap;

use hycon::arpa::{dump_arpa, parse_arpa};
use hycon::synth::{corrupt_sentences, generate_corpus};
use hycon_core::ngram::train_lm;

struct ArpaTable {
    order: usize,
    entries: HashMap<Vec<String>, (f64, f64)>,
}

fn read_table(text: &str) -> ArpaTable {
    let mut entries = HashMap::new();
    let mut order = 0;
    let mut current = 0;
    for line in text.lines() {
        if let Some(n) = line.strip_prefix("ngram ") {
            order = n.split('=').next().unwrap().parse().unwrap();
        } else if let Some(k) = line
            .strip_prefix('\\')
            .and_then(|l| l.strip_suffix("-grams:"))
        {
            current = k.parse().unwrap();
        } else if current > 0 && !line.is_empty() && line != "\\end\\" {
            let f: Vec<&str> = line.split('\t').collect();
            let prob: f64 = f[0].parse().unwrap();
            let backoff: f64 = f.get(2).map_or(0.0, |b| b.parse().unwrap());
            entries.insert(f[1].split(' ').map(String::from).collect(), (prob, backoff));
        }
    }
    ArpaTable { order, entries }
}

fn cond(t: &ArpaTable, word: &str, history: &[String]) -> f64 {
    let mut key = history.to_vec();
    key.push(word.to_string());
    if let Some(&(p, _)) = t.entries.get(&key) {
        return p;
    }
    if history.is_empty() {
        return t
            .entries
            .get(&vec!["<unk>".to_string()])
            .map_or(-99.0, |e| e.0);
    }
    let backoff = t.entries.get(history).map_or(0.0, |e| e.1);
    backoff + cond(t, word, &history[1..])
}

fn sentence_logprob(t: &ArpaTable, sentence: &str) -> f64 {
    let mut history = vec!["<s>".to_string()];
    let mut total = 0.0;
    for w in sentence.split_whitespace().chain(["</s>"]) {
        let start = history.len().saturating_sub(t.order - 1);
        total += cond(t, w, &history[start..]);
        history.push(w.to_string());
    }
    total
}

#[test]
fn loaded_model_matches_direct_table_walk() {
    let train_text = generate_corpus(31, 300);
    let probes = corrupt_sentences(&generate_corpus(32, 60), 0.3, 33);
    for order in 1..=5 {
        let text = dump_arpa(&train_lm(&train_text, order).unwrap());
        let table = read_table(&text);
        let model = parse_arpa(&text).unwrap();
        assert_eq!(table.order, order);
        for s in probes.iter().chain(&train_text[..20]) {
            let words: Vec<&str> = s.split_whitespace().collect();
            let want = sentence_logprob(&table, s);
            let got = model.logprob(&words);
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                "order {order}, {s:?}: {got} vs {want}"
            );
        }
    }
}
