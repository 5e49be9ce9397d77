use hycon_core::ngram::{
    correct_transcript, perplexity, rescore_nbest, train_lm, CorrectionConfig, Hypothesis, Lexicon,
    BOS,
};
use hycon_core::textmetrics::char_distance;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: [&str; 17] = [
    "ab", "abc", "b", "ba", "bc", "ca", "cab", "cb", "d", "da", "db", "dc", "e", "ea", "eb", "ec",
    "f",
];

fn corpus_strategy() -> impl Strategy<Value = (Vec<String>, usize)> {
    let sentence =
        prop::collection::vec(prop::sample::select(WORDS.to_vec()), 1..7).prop_map(|w| w.join(" "));
    (prop::collection::vec(sentence, 1..25), 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_context_normalizes((corpus, order) in corpus_strategy()) {
        let m = train_lm(&corpus, order).unwrap();
        prop_assert!(m.vocab_size() <= 20);
        let targets: Vec<u32> = m.target_ids().collect();
        let mut contexts: Vec<Vec<u32>> = m.contexts().map(<[u32]>::to_vec).collect();
        contexts.push(Vec::new());
        // an unseen history exercises the full backoff chain
        contexts.push(vec![m.word_id("f"), m.word_id("f")]);
        for ctx in &contexts {
            let total: f64 = targets.iter().map(|&w| 10f64.powf(m.cond_log10(w, ctx))).sum();
            prop_assert!((total - 1.0).abs() <= 1e-6, "context {:?} sums to {}", ctx, total);
        }
    }

    #[test]
    fn sentence_logprob_is_non_positive((corpus, order) in corpus_strategy(), probe in prop::collection::vec(prop::sample::select(vec!["ab", "zz", "f", "qq"]), 0..6)) {
        let m = train_lm(&corpus, order).unwrap();
        let lp = m.logprob(&probe);
        prop_assert!(lp <= 0.0 && lp.is_finite());
        for line in &corpus {
            let words: Vec<&str> = line.split_whitespace().collect();
            prop_assert!(m.logprob(&words) <= 0.0);
        }
    }
}

fn grammar_corpus(rng: &mut ChaCha8Rng, n: usize) -> Vec<String> {
    let subjects = ["the nurse", "a doctor", "the patient", "my mother"];
    let verbs = ["checks", "records", "reports", "measures"];
    let objects = ["blood pressure", "sugar level", "body weight", "heart rate"];
    let times = ["today", "every morning", "after lunch", "at night"];
    (0..n)
        .map(|_| {
            format!(
                "{} {} the {} {}",
                subjects[rng.random_range(0..4)],
                verbs[rng.random_range(0..4)],
                objects[rng.random_range(0..4)],
                times[rng.random_range(0..4)],
            )
        })
        .collect()
}

#[test]
fn training_text_beats_shuffled_vocabulary() {
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let corpus = grammar_corpus(&mut rng, 200);
        let m = train_lm(&corpus, 3).unwrap();
        let mut vocab: Vec<&str> = corpus.iter().flat_map(|s| s.split_whitespace()).collect();
        vocab.sort_unstable();
        vocab.dedup();
        let mut permuted = vocab.clone();
        permuted.shuffle(&mut rng);
        let remap = |w: &str| permuted[vocab.binary_search(&w).unwrap()];
        let shuffled: Vec<String> = corpus
            .iter()
            .map(|s| {
                s.split_whitespace()
                    .map(remap)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let own = perplexity(&m, &corpus).unwrap();
        let other = perplexity(&m, &shuffled).unwrap();
        assert!(own <= other, "seed {seed}: {own} > {other}");
    }
}

#[test]
fn hand_computed_perplexity() {
    // P(a | <s>) = P(</s> | a) = 0.75 + 0.25 * 0.375 = 0.84375
    let m = train_lm(&["a", "a", "a"], 2).unwrap();
    let ppl = perplexity(&m, &["a"]).unwrap();
    assert!((ppl - 1.0 / 0.84375).abs() < 1e-9);
}

/// Exhaustive search over the candidate lattice with the same objective and
/// the lexicographic tie-break.
fn brute_force(
    hyp: &[&str],
    lattice: &[Vec<String>],
    m: &hycon_core::NGramModel,
    cfg: &CorrectionConfig,
) -> Vec<String> {
    let mut best: Option<(f64, Vec<String>)> = None;
    let total: usize = lattice.iter().map(Vec::len).product();
    for mut code in 0..total {
        let mut words = Vec::new();
        for cands in lattice {
            words.push(cands[code % cands.len()].clone());
            code /= cands.len();
        }
        let mut history = vec![BOS];
        let mut score = 0.0;
        for (w, h) in words.iter().zip(hyp) {
            score += cfg.lm_weight * m.cond_log10_str(w, &history)
                - cfg.edit_penalty * char_distance(w, h) as f64;
            history.push(w);
        }
        let better = match &best {
            None => true,
            Some((s, b)) => score > *s || (score == *s && words < *b),
        };
        if better {
            best = Some((score, words));
        }
    }
    best.unwrap().1
}

#[test]
fn full_beam_matches_exhaustive_search() {
    let lexicon_words = [
        "cat", "cot", "cut", "dog", "dot", "sat", "set", "mat", "met",
    ];
    let lexicon = Lexicon::new(lexicon_words).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let corpus: Vec<String> = (0..60)
        .map(|_| {
            (0..4)
                .map(|_| lexicon_words[rng.random_range(0..lexicon_words.len())])
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let m = train_lm(&corpus, 3).unwrap();
    let noisy = ["cat", "cxt", "dox", "sxt", "mwt", "ca", "dg", "set"];
    let mut checked = 0;
    while checked < 50 {
        let hyp: Vec<&str> = (0..4)
            .map(|_| noisy[rng.random_range(0..noisy.len())])
            .collect();
        let cfg = CorrectionConfig {
            max_char_edits: 1,
            ..CorrectionConfig::default()
        };
        let lattice: Vec<Vec<String>> = hyp
            .iter()
            .map(|w| {
                lexicon
                    .candidates(w, 1)
                    .into_iter()
                    .map(|(c, _)| c)
                    .collect()
            })
            .collect();
        if lattice.iter().any(|c| c.len() > 3) {
            continue;
        }
        let size: usize = lattice.iter().map(Vec::len).product();
        let cfg = CorrectionConfig {
            beam_width: size,
            ..cfg
        };
        assert_eq!(
            correct_transcript(&hyp, &m, &lexicon, &cfg).unwrap(),
            brute_force(&hyp, &lattice, &m, &cfg),
            "hyp {hyp:?}"
        );
        checked += 1;
    }
}

#[test]
fn strongly_favoured_word_is_restored() {
    let corpus = vec!["రక్త సుగర్ పరీక్ష"; 20];
    let m = train_lm(&corpus, 3).unwrap();
    let lexicon = Lexicon::new(["రక్త", "సుగర్", "పరీక్ష"]).unwrap();
    // one substituted character
    let hyp = ["రక్త", "సుఘర్", "పరీక్ష"];
    let out = correct_transcript(&hyp, &m, &lexicon, &CorrectionConfig::default()).unwrap();
    assert_eq!(out, ["రక్త", "సుగర్", "పరీక్ష"]);
    // unchanged when every word is already likely
    let clean = ["రక్త", "సుగర్", "పరీక్ష"];
    assert_eq!(
        correct_transcript(&clean, &m, &lexicon, &CorrectionConfig::default()).unwrap(),
        clean
    );
}

proptest! {
    #[test]
    fn rescoring_ignores_acoustic_offset(scores in prop::collection::vec(-20.0f64..0.0, 1..6), shift in -100.0f64..100.0, lm in 0.0f64..2.0) {
        let m = train_lm(&["a b c", "b c a", "c a b"], 2).unwrap();
        let texts = ["a b c", "c b a", "a a", "b", "c a b", "a b"];
        let hyps: Vec<Hypothesis> = scores
            .iter()
            .zip(texts)
            .map(|(s, t)| Hypothesis::new(t.split(' ').map(String::from).collect(), *s).unwrap())
            .collect();
        let shifted: Vec<Hypothesis> = hyps
            .iter()
            .map(|h| Hypothesis::new(h.words.clone(), h.acoustic_score + shift).unwrap())
            .collect();
        prop_assert_eq!(rescore_nbest(&hyps, &m, lm, 0.0).unwrap(), rescore_nbest(&shifted, &m, lm, 0.0).unwrap());
    }
}
