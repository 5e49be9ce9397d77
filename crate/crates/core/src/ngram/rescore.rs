use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::LN_10;

use super::{NGramError, NGramModel};

/// One N-best entry; `acoustic_score` is a natural-log score.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub words: Vec<String>,
    pub acoustic_score: f64,
}

impl Hypothesis {
    pub fn new(words: Vec<String>, acoustic_score: f64) -> Result<Self, NGramError> {
        if words.is_empty() {
            return Err(NGramError::EmptyHypothesis);
        }
        Ok(Self {
            words,
            acoustic_score,
        })
    }
}

/// `acoustic + lm_weight * ln(10) * log10 P_LM(words) + length_bonus * |words|`.
pub fn fused_score(hyp: &Hypothesis, model: &NGramModel, lm_weight: f64, length_bonus: f64) -> f64 {
    hyp.acoustic_score
        + lm_weight * LN_10 * model.logprob(&hyp.words)
        + length_bonus * hyp.words.len() as f64
}

/// Index of the best hypothesis under shallow fusion; the earliest wins ties.
pub fn rescore_nbest(
    hyps: &[Hypothesis],
    model: &NGramModel,
    lm_weight: f64,
    length_bonus: f64,
) -> Result<usize, NGramError> {
    let mut best: Option<(usize, f64)> = None;
    for (i, h) in hyps.iter().enumerate() {
        let s = fused_score(h, model, lm_weight, length_bonus);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i).ok_or(NGramError::EmptyNBest)
}
