//! Lexicon-constrained, substitution-only transcript correction.
//!
//! Each hypothesis word may be replaced by a lexicon word within a few
//! character edits. A left-to-right beam search picks the sequence that
//! maximizes `lm_weight * log10 P(w_t | history) - edit_penalty * edits_t`
//! summed over positions.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{NGramError, NGramModel};
use crate::textmetrics::levenshtein;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionConfig {
    pub max_char_edits: usize,
    /// log10 units charged per character edit.
    pub edit_penalty: f64,
    pub beam_width: usize,
    pub lm_weight: f64,
}

impl Default for CorrectionConfig {
    fn default() -> Self {
        Self {
            max_char_edits: 2,
            edit_penalty: 0.8,
            beam_width: 8,
            lm_weight: 1.0,
        }
    }
}

impl CorrectionConfig {
    pub fn validate(&self) -> Result<(), NGramError> {
        if self.beam_width == 0 {
            return Err(NGramError::InvalidConfig("beam_width must be positive"));
        }
        if !(self.edit_penalty.is_finite() && self.edit_penalty > 0.0) {
            return Err(NGramError::InvalidConfig("edit_penalty must be positive"));
        }
        if !(self.lm_weight.is_finite() && self.lm_weight > 0.0) {
            return Err(NGramError::InvalidConfig("lm_weight must be positive"));
        }
        Ok(())
    }
}

/// Sorted, de-duplicated word list with cached character sequences.
#[derive(Debug, Clone)]
pub struct Lexicon {
    words: Vec<(String, Vec<char>)>,
}

impl Lexicon {
    pub fn new<I, S>(words: I) -> Result<Self, NGramError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = words
            .into_iter()
            .map(Into::into)
            .filter(|w: &String| !w.trim().is_empty())
            .collect();
        if set.is_empty() {
            return Err(NGramError::EmptyLexicon);
        }
        Ok(Self {
            words: set
                .into_iter()
                .map(|w| {
                    let chars = w.chars().collect();
                    (w, chars)
                })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words
            .binary_search_by(|(w, _)| w.as_str().cmp(word))
            .is_ok()
    }

    /// The word itself (0 edits) plus every lexicon word within `max_edits`,
    /// sorted by word.
    pub fn candidates(&self, word: &str, max_edits: usize) -> Vec<(String, usize)> {
        let chars: Vec<char> = word.chars().collect();
        let mut out: Vec<(String, usize)> = Vec::new();
        out.push((String::from(word), 0));
        if max_edits > 0 {
            for (w, wc) in &self.words {
                if w == word || wc.len().abs_diff(chars.len()) > max_edits {
                    continue;
                }
                let d = levenshtein(&chars, wc);
                if d <= max_edits {
                    out.push((w.clone(), d));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

struct Path {
    choice: Vec<usize>,
    history: Vec<u32>,
    score: f64,
}

fn rank(a: &Path, b: &Path) -> Ordering {
    b.score
        .partial_cmp(&a.score)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.choice.cmp(&b.choice))
}

/// Corrects `hyp` word by word; the output always has the same length.
/// Equal scores are resolved towards the lexicographically smaller word
/// sequence.
pub fn correct_transcript<S: AsRef<str>>(
    hyp: &[S],
    model: &NGramModel,
    lexicon: &Lexicon,
    cfg: &CorrectionConfig,
) -> Result<Vec<String>, NGramError> {
    if hyp.is_empty() {
        return Err(NGramError::EmptyHypothesis);
    }
    if lexicon.is_empty() {
        return Err(NGramError::EmptyLexicon);
    }
    cfg.validate()?;

    let lattice: Vec<Vec<(String, usize)>> = hyp
        .iter()
        .map(|w| lexicon.candidates(w.as_ref(), cfg.max_char_edits))
        .collect();
    let ids: Vec<Vec<u32>> = lattice
        .iter()
        .map(|c| c.iter().map(|(w, _)| model.word_id(w)).collect())
        .collect();

    let mut beam = alloc::vec![Path {
        choice: Vec::new(),
        history: alloc::vec![model.bos_id()],
        score: 0.0,
    }];
    for (t, candidates) in lattice.iter().enumerate() {
        let mut next = Vec::with_capacity(beam.len() * candidates.len());
        for path in &beam {
            for (c, (_, edits)) in candidates.iter().enumerate() {
                let id = ids[t][c];
                let gain = cfg.lm_weight * model.cond_log10(id, &path.history)
                    - cfg.edit_penalty * *edits as f64;
                let mut choice = path.choice.clone();
                choice.push(c);
                let mut history = path.history.clone();
                history.push(id);
                next.push(Path {
                    choice,
                    history,
                    score: path.score + gain,
                });
            }
        }
        next.sort_by(rank);
        next.truncate(cfg.beam_width);
        beam = next;
    }
    let best = &beam[0];
    Ok(best
        .choice
        .iter()
        .zip(&lattice)
        .map(|(&c, cands)| cands[c].0.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ngram::train_lm;
    use alloc::vec;

    #[test]
    fn candidates_include_the_word_and_near_neighbours() {
        let lex = Lexicon::new(["cat", "cot", "dog", "cart"]).unwrap();
        let c = lex.candidates("cat", 1);
        let words: Vec<&str> = c.iter().map(|(w, _)| w.as_str()).collect();
        assert_eq!(words, vec!["cart", "cat", "cot"]);
        assert_eq!(lex.candidates("cat", 0), vec![(String::from("cat"), 0)]);
        assert!(lex.contains("dog") && !lex.contains("do"));
    }

    #[test]
    fn zero_edits_is_identity() {
        let m = train_lm(&["the cat sat", "the dog sat"], 2).unwrap();
        let lex = Lexicon::new(["the", "cat", "dog", "sat"]).unwrap();
        let cfg = CorrectionConfig {
            max_char_edits: 0,
            ..CorrectionConfig::default()
        };
        let hyp = ["teh", "cat", "sta"];
        assert_eq!(correct_transcript(&hyp, &m, &lex, &cfg).unwrap(), hyp);
    }

    #[test]
    fn errors() {
        let m = train_lm(&["a"], 1).unwrap();
        let lex = Lexicon::new(["a"]).unwrap();
        let empty: [&str; 0] = [];
        assert_eq!(
            correct_transcript(&empty, &m, &lex, &CorrectionConfig::default()),
            Err(NGramError::EmptyHypothesis)
        );
        assert_eq!(
            Lexicon::new(Vec::<String>::new()).unwrap_err(),
            NGramError::EmptyLexicon
        );
        let bad = CorrectionConfig {
            beam_width: 0,
            ..CorrectionConfig::default()
        };
        assert!(correct_transcript(&["a"], &m, &lex, &bad).is_err());
    }
}
