//! Word n-gram language model with backoff, in the layout of an ARPA file:
//! every stored k-gram carries a log10 conditional probability and, below
//! the highest order, a log10 backoff weight for its use as a context.
//!
//! [`train_lm`] estimates an interpolated Kneser-Ney model. Models can also be
//! assembled from explicit entries with [`NGramModel::from_entries`], which is
//! how ARPA files are loaded.

mod correct;
mod rescore;
mod train;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use thiserror::Error;

pub use correct::{correct_transcript, CorrectionConfig, Lexicon};
pub use rescore::{fused_score, rescore_nbest, Hypothesis};
pub use train::{train_lm, FALLBACK_DISCOUNT};

pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";
pub const UNK: &str = "<unk>";
pub const MAX_ORDER: usize = 5;
/// log10 probability written for tokens that are never predicted (`<s>`), and
/// returned for out-of-vocabulary words when the model has no `<unk>`.
pub const LOG10_ZERO: f64 = -99.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NGramError {
    #[error("no non-empty sentences")]
    EmptyCorpus,
    #[error("order {0} is outside 1..=5")]
    BadOrder(usize),
    #[error("n-gram uses token `{0}` that has no unigram entry")]
    UnknownToken(String),
    #[error("{found}-token entry listed under order {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("duplicate n-gram `{0}`")]
    DuplicateEntry(String),
    #[error("non-finite log value for `{0}`")]
    NonFinite(String),
    #[error("empty N-best list")]
    EmptyNBest,
    #[error("empty hypothesis")]
    EmptyHypothesis,
    #[error("empty lexicon")]
    EmptyLexicon,
    #[error("invalid correction config: {0}")]
    InvalidConfig(&'static str),
}

/// Stored values of one n-gram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NGramEntry {
    pub log10_prob: f64,
    /// Absent at the highest order.
    pub log10_backoff: Option<f64>,
}

type Gram = Vec<u32>;

/// Token id that matches nothing in the model.
const MISSING: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct NGramModel {
    order: usize,
    vocab: Vec<String>,
    ids: BTreeMap<String, u32>,
    grams: Vec<BTreeMap<Gram, NGramEntry>>,
    discounts: Vec<f64>,
}

impl NGramModel {
    /// Builds a model from per-order entry lists (`orders[k - 1]` holds the
    /// k-grams). The vocabulary is the set of unigram tokens.
    pub fn from_entries(orders: Vec<Vec<(Vec<String>, NGramEntry)>>) -> Result<Self, NGramError> {
        let order = orders.len();
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(NGramError::BadOrder(order));
        }
        let mut vocab = Vec::new();
        let mut ids = BTreeMap::new();
        for (tokens, _) in &orders[0] {
            if tokens.len() != 1 {
                return Err(NGramError::WrongArity {
                    expected: 1,
                    found: tokens.len(),
                });
            }
            if ids.contains_key(&tokens[0]) {
                return Err(NGramError::DuplicateEntry(tokens[0].clone()));
            }
            ids.insert(tokens[0].clone(), vocab.len() as u32);
            vocab.push(tokens[0].clone());
        }
        let mut grams = Vec::with_capacity(order);
        for (k, list) in orders.into_iter().enumerate() {
            let mut map = BTreeMap::new();
            for (tokens, entry) in list {
                if tokens.len() != k + 1 {
                    return Err(NGramError::WrongArity {
                        expected: k + 1,
                        found: tokens.len(),
                    });
                }
                let finite =
                    entry.log10_prob.is_finite() && entry.log10_backoff.is_none_or(f64::is_finite);
                if !finite {
                    return Err(NGramError::NonFinite(tokens.join(" ")));
                }
                let gram = tokens
                    .iter()
                    .map(|t| {
                        ids.get(t)
                            .copied()
                            .ok_or_else(|| NGramError::UnknownToken(t.clone()))
                    })
                    .collect::<Result<Gram, _>>()?;
                if map.insert(gram, entry).is_some() {
                    return Err(NGramError::DuplicateEntry(tokens.join(" ")));
                }
            }
            grams.push(map);
        }
        Ok(Self {
            order,
            vocab,
            ids,
            grams,
            discounts: Vec::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Discount per order (index 0 = unigrams); empty for loaded models.
    pub fn discounts(&self) -> &[f64] {
        &self.discounts
    }

    pub fn vocab(&self) -> impl Iterator<Item = &str> {
        self.vocab.iter().map(String::as_str)
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.ids.contains_key(token)
    }

    /// Number of stored k-grams.
    pub fn count(&self, k: usize) -> usize {
        self.grams.get(k.wrapping_sub(1)).map_or(0, BTreeMap::len)
    }

    /// Entry for an explicit token sequence, if stored.
    pub fn entry(&self, tokens: &[&str]) -> Option<NGramEntry> {
        let k = tokens.len();
        if k == 0 || k > self.order {
            return None;
        }
        let gram: Option<Gram> = tokens.iter().map(|t| self.ids.get(*t).copied()).collect();
        self.grams[k - 1].get(&gram?).copied()
    }

    /// All k-grams sorted by their token strings, for serialization.
    pub fn sorted_entries(&self, k: usize) -> Vec<(Vec<&str>, NGramEntry)> {
        let mut out: Vec<(Vec<&str>, NGramEntry)> = self.grams[k - 1]
            .iter()
            .map(|(g, e)| {
                (
                    g.iter().map(|&i| self.vocab[i as usize].as_str()).collect(),
                    *e,
                )
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Id used when scoring `word`: its own id, else `<unk>`'s.
    pub fn word_id(&self, word: &str) -> u32 {
        self.ids
            .get(word)
            .or_else(|| self.ids.get(UNK))
            .copied()
            .unwrap_or(MISSING)
    }

    pub fn bos_id(&self) -> u32 {
        self.ids.get(BOS).copied().unwrap_or(MISSING)
    }

    pub fn eos_id(&self) -> u32 {
        self.ids.get(EOS).copied().unwrap_or(MISSING)
    }

    /// log10 P(word | history) with backoff. Only the last `order - 1`
    /// history ids are used.
    pub fn cond_log10(&self, word: u32, history: &[u32]) -> f64 {
        let keep = history.len().min(self.order - 1);
        let ctx = &history[history.len() - keep..];
        let mut buf = [0u32; MAX_ORDER];
        let mut backoff = 0.0;
        for start in 0..=ctx.len() {
            let context = &ctx[start..];
            let len = context.len() + 1;
            buf[..context.len()].copy_from_slice(context);
            buf[context.len()] = word;
            if let Some(e) = self.grams[len - 1].get(&buf[..len]) {
                return backoff + e.log10_prob;
            }
            if !context.is_empty() {
                if let Some(c) = self.grams[context.len() - 1].get(context) {
                    backoff += c.log10_backoff.unwrap_or(0.0);
                }
            }
        }
        backoff + LOG10_ZERO
    }

    /// log10 P(word | history) for string tokens.
    pub fn cond_log10_str(&self, word: &str, history: &[&str]) -> f64 {
        let h: Vec<u32> = history
            .iter()
            .map(|t| {
                if *t == BOS {
                    self.bos_id()
                } else {
                    self.word_id(t)
                }
            })
            .collect();
        self.cond_log10(self.word_id(word), &h)
    }

    /// Total log10 probability and number of predicted tokens for a sentence
    /// scored after `<s>` and terminated by `</s>`.
    pub fn score_sentence<S: AsRef<str>>(&self, words: &[S]) -> (f64, usize) {
        let mut history = Vec::with_capacity(words.len() + 1);
        history.push(self.bos_id());
        let mut total = 0.0;
        for w in words {
            let id = self.word_id(w.as_ref());
            total += self.cond_log10(id, &history);
            history.push(id);
        }
        total += self.cond_log10(self.eos_id(), &history);
        (total, words.len() + 1)
    }

    /// log10 probability of a whole sentence including `</s>`.
    pub fn logprob<S: AsRef<str>>(&self, words: &[S]) -> f64 {
        self.score_sentence(words).0
    }

    /// Tokens that can be predicted: everything but `<s>`.
    pub fn target_ids(&self) -> impl Iterator<Item = u32> + '_ {
        let bos = self.bos_id();
        (0..self.vocab.len() as u32).filter(move |&i| i != bos)
    }

    /// Every stored context (k-gram with k < order) as token ids.
    pub fn contexts(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.grams[..self.order - 1]
            .iter()
            .flat_map(|m| m.keys().map(Vec::as_slice))
    }

    pub fn token(&self, id: u32) -> &str {
        &self.vocab[id as usize]
    }
}

/// `10^(-total_log10 / predicted)` over whitespace-tokenized sentences;
/// every `</s>` counts as a predicted token.
pub fn perplexity<S: AsRef<str>>(model: &NGramModel, sentences: &[S]) -> Result<f64, NGramError> {
    let mut total = 0.0;
    let mut predicted = 0usize;
    for line in sentences {
        let words: Vec<&str> = line.as_ref().split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let (lp, n) = model.score_sentence(&words);
        total += lp;
        predicted += n;
    }
    if predicted == 0 {
        return Err(NGramError::EmptyCorpus);
    }
    Ok(10.0.powf(-total / predicted as f64))
}
