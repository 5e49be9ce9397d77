//! Levenshtein alignment and word error rate.
//!
//! Tokenization is plain whitespace splitting. Transcripts are assumed to be
//! normalized upstream, so there is no case folding or punctuation handling.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("reference has no tokens")]
    EmptyReference,
}

/// Edit counts from a unit-cost alignment of hypothesis against reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditSummary {
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub ref_len: usize,
    pub wer: f64,
}

impl EditSummary {
    pub fn errors(&self) -> usize {
        self.substitutions + self.insertions + self.deletions
    }
}

/// Unit-cost Levenshtein alignment of `hyp` against the non-empty `reference`.
///
/// Counts come from a backtrace that prefers the diagonal (match or
/// substitution), then deletion, then insertion, so equal-cost alignments are
/// always resolved the same way.
pub fn edit_distance<T: PartialEq>(reference: &[T], hyp: &[T]) -> Result<EditSummary, TextError> {
    if reference.is_empty() {
        return Err(TextError::EmptyReference);
    }
    let (n, m) = (reference.len(), hyp.len());
    let width = m + 1;
    let mut d = vec![0usize; (n + 1) * width];
    for (j, cell) in d[..width].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=n {
        d[i * width] = i;
        for j in 1..=m {
            let sub = d[(i - 1) * width + j - 1] + usize::from(reference[i - 1] != hyp[j - 1]);
            let del = d[(i - 1) * width + j] + 1;
            let ins = d[i * width + j - 1] + 1;
            d[i * width + j] = sub.min(del).min(ins);
        }
    }

    let (mut i, mut j) = (n, m);
    let (mut s, mut ins, mut del) = (0, 0, 0);
    while i > 0 || j > 0 {
        let here = d[i * width + j];
        if i > 0 && j > 0 {
            let mismatch = usize::from(reference[i - 1] != hyp[j - 1]);
            if d[(i - 1) * width + j - 1] + mismatch == here {
                s += mismatch;
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && d[(i - 1) * width + j] + 1 == here {
            del += 1;
            i -= 1;
        } else {
            ins += 1;
            j -= 1;
        }
    }
    Ok(EditSummary {
        substitutions: s,
        insertions: ins,
        deletions: del,
        ref_len: n,
        wer: (s + ins + del) as f64 / n as f64,
    })
}

/// Plain Levenshtein distance, no reference-side requirement.
pub fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = (prev[j] + usize::from(x != y))
                .min(prev[j + 1] + 1)
                .min(cur[j] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Distance between two words counted in Unicode scalar values.
pub fn char_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    levenshtein(&a, &b)
}

pub fn tokenize(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

/// Word-level alignment summary of two text lines.
pub fn align_lines(reference: &str, hyp: &str) -> Result<EditSummary, TextError> {
    edit_distance(&tokenize(reference), &tokenize(hyp))
}

/// Unclamped WER of `hyp` against `reference`; may exceed 1.
pub fn word_error_rate(reference: &str, hyp: &str) -> Result<f64, TextError> {
    align_lines(reference, hyp).map(|s| s.wer)
}

/// Corpus WER: total errors over total reference words.
pub fn corpus_wer(summaries: &[EditSummary]) -> f64 {
    let errors: usize = summaries.iter().map(EditSummary::errors).sum();
    let words: usize = summaries.iter().map(|s| s.ref_len).sum();
    if words == 0 {
        0.0
    } else {
        errors as f64 / words as f64
    }
}
