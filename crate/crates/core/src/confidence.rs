//! Static data-quality scores, their aggregation, and the hybrid confidence
//! that blends them with the entropy of a model's posteriors.
//!
//! Every score and confidence produced here lies in `[0, 1]`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use thiserror::Error;

use crate::corpus::{availability_mask, CorpusRecord, SourceKind};
use crate::dsp::{MfccSequence, PerceptualFeatures};
use crate::textmetrics;

/// Model confidence used when no posteriors are available.
pub const NEUTRAL_MODEL_CONFIDENCE: f64 = 0.5;
/// Slack allowed when checking that weights or probabilities sum to one.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfidenceError {
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite value at index {0}")]
    NonFiniteValue(usize),
    #[error("{0} is outside [0, 1]")]
    OutOfRange(&'static str),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("reference transcript is empty")]
    EmptyReference,
    #[error("aggregation weights must be non-negative and sum to 1")]
    InvalidWeights,
    #[error("weight logits must be finite")]
    NonFiniteLogit,
    #[error("frame {0} is not a probability distribution")]
    NotADistribution(usize),
    #[error("posteriors need at least two classes")]
    DegenerateVocab,
    #[error("no decoded hypothesis for aligned record `{0}`")]
    MissingHypothesis(String),
    #[error("no MFCCs for record `{0}`")]
    MissingMfcc(String),
    #[error("{records} records but {features} feature rows")]
    FeatureCountMismatch { records: usize, features: usize },
}

type Result<T> = core::result::Result<T, ConfidenceError>;

fn check_unit(value: f64, what: &'static str) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(ConfidenceError::OutOfRange(what))
    }
}

/// The three per-utterance static scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticScores {
    pub s_perceptual: f64,
    pub s_sim: f64,
    pub s_wer: f64,
}

impl StaticScores {
    pub fn new(s_perceptual: f64, s_sim: f64, s_wer: f64) -> Result<Self> {
        Ok(Self {
            s_perceptual: check_unit(s_perceptual, "s_perceptual")?,
            s_sim: check_unit(s_sim, "s_sim")?,
            s_wer: check_unit(s_wer, "s_wer")?,
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.s_perceptual, self.s_sim, self.s_wer]
    }
}

/// Convex weights (alpha, beta, gamma) over the three static scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregationWeights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AggregationWeights {
    /// The fixed weights used by default: 0.4 perceptual, 0.3 similarity,
    /// 0.3 WER.
    pub const DEFAULT: Self = Self {
        alpha: 0.4,
        beta: 0.3,
        gamma: 0.3,
    };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let w = Self { alpha, beta, gamma };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let all = self.as_array();
        let valid = all.iter().all(|w| w.is_finite() && *w >= 0.0 && *w <= 1.0)
            && (all.iter().sum::<f64>() - 1.0).abs() <= WEIGHT_SUM_TOLERANCE;
        if valid {
            Ok(())
        } else {
            Err(ConfidenceError::InvalidWeights)
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

impl Default for AggregationWeights {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Unconstrained parameters whose softmax gives the aggregation weights.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WeightLogits(pub [f64; 3]);

impl WeightLogits {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Self {
        Self([w1, w2, w3])
    }
}

/// Linear annealing of the static/model mixing coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealSchedule {
    pub lambda_start: f64,
    pub lambda_end: f64,
    pub total_epochs: usize,
}

impl AnnealSchedule {
    /// 1.0 down to 0.5 over `total_epochs`.
    pub fn standard(total_epochs: usize) -> Self {
        Self {
            lambda_start: 1.0,
            lambda_end: 0.5,
            total_epochs,
        }
    }

    /// A schedule that never leaves `lambda`.
    pub fn constant(lambda: f64, total_epochs: usize) -> Self {
        Self {
            lambda_start: lambda,
            lambda_end: lambda,
            total_epochs,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.total_epochs >= 1
            && 0.0 <= self.lambda_end
            && self.lambda_end <= self.lambda_start
            && self.lambda_start <= 1.0;
        if ok {
            Ok(())
        } else {
            Err(ConfidenceError::OutOfRange("anneal schedule"))
        }
    }
}

/// Per-utterance output of [`score_corpus`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceReport {
    pub utt_id: String,
    pub scores: StaticScores,
    /// Fixed-weight or learnable-weight aggregate, whichever was requested.
    pub c_static: f64,
    pub c_model: f64,
    pub c_final: f64,
    pub lambda_used: f64,
}

/// Min-max normalization of one feature across the corpus. A constant
/// column maps to 0.5 everywhere.
pub fn normalize_minmax(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(ConfidenceError::EmptyInput);
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(ConfidenceError::NonFiniteValue(i));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return Ok(alloc::vec![0.5; values.len()]);
    }
    let range = hi - lo;
    Ok(values
        .iter()
        .map(|v| ((v - lo) / range).clamp(0.0, 1.0))
        .collect())
}

const FEATURE_NAMES: [&str; 5] = ["f_sc", "f_sr", "f_mfcc", "f_pv", "f_e"];

/// Mean of the five normalized features.
pub fn perceptual_score(normalized: [f64; 5]) -> Result<f64> {
    for (v, name) in normalized.iter().zip(FEATURE_NAMES) {
        check_unit(*v, name)?;
    }
    Ok((normalized.iter().sum::<f64>() / 5.0).clamp(0.0, 1.0))
}

/// Time pooling of an MFCC matrix: per-coefficient means followed by
/// per-coefficient population standard deviations.
pub fn pool_mfcc(seq: &MfccSequence) -> Vec<f64> {
    let d = seq.n_mfcc();
    let t = seq.frames().len() as f64;
    let mut mean = alloc::vec![0.0; d];
    for frame in seq.frames() {
        for (m, v) in mean.iter_mut().zip(frame) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= t);
    let mut var = alloc::vec![0.0; d];
    for frame in seq.frames() {
        for ((s, v), m) in var.iter_mut().zip(frame).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    mean.extend(var.into_iter().map(|s| (s / t).sqrt()));
    mean
}

/// Cosine of two vectors, 0 if either has zero norm.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(ConfidenceError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (na * nb))
}

/// Cosine similarity of the pooled MFCC representations, clamped to `[0, 1]`.
pub fn acoustic_similarity(real: &MfccSequence, synth: &MfccSequence) -> Result<f64> {
    if real.n_mfcc() != synth.n_mfcc() {
        return Err(ConfidenceError::DimensionMismatch {
            left: real.n_mfcc(),
            right: synth.n_mfcc(),
        });
    }
    let c = cosine(&pool_mfcc(real), &pool_mfcc(synth))?;
    Ok(c.clamp(0.0, 1.0))
}

/// `1 - WER`, floored at 0.
pub fn wer_score<S: AsRef<str>>(reference: &[S], hyp: &[S]) -> Result<f64> {
    let r: Vec<&str> = reference.iter().map(AsRef::as_ref).collect();
    let h: Vec<&str> = hyp.iter().map(AsRef::as_ref).collect();
    let summary =
        textmetrics::edit_distance(&r, &h).map_err(|_| ConfidenceError::EmptyReference)?;
    Ok((1.0 - summary.wer).max(0.0))
}

pub fn aggregate_fixed(scores: &StaticScores, weights: &AggregationWeights) -> Result<f64> {
    weights.validate()?;
    Ok(weighted_sum(scores, &weights.as_array()))
}

fn weighted_sum(scores: &StaticScores, w: &[f64; 3]) -> f64 {
    let s = scores.as_array();
    (w[0] * s[0] + w[1] * s[1] + w[2] * s[2]).clamp(0.0, 1.0)
}

/// Softmax of the logits, shifted by their maximum before exponentiation.
pub fn softmax_weights(logits: &WeightLogits) -> Result<AggregationWeights> {
    let w = logits.0;
    if w.iter().any(|v| !v.is_finite()) {
        return Err(ConfidenceError::NonFiniteLogit);
    }
    let max = w[0].max(w[1]).max(w[2]);
    let e = w.map(|v| (v - max).exp());
    let sum: f64 = e.iter().sum();
    Ok(AggregationWeights {
        alpha: e[0] / sum,
        beta: e[1] / sum,
        gamma: e[2] / sum,
    })
}

pub fn aggregate_learnable(scores: &StaticScores, logits: &WeightLogits) -> Result<f64> {
    let w = softmax_weights(logits)?;
    Ok(weighted_sum(scores, &w.as_array()))
}

/// Gradient of the learnable aggregate with respect to the logits:
/// `a_k * (S_k - C)` with `a = softmax(logits)`.
pub fn aggregation_gradient(scores: &StaticScores, logits: &WeightLogits) -> Result<[f64; 3]> {
    let a = softmax_weights(logits)?.as_array();
    let s = scores.as_array();
    let c = a[0] * s[0] + a[1] * s[1] + a[2] * s[2];
    Ok([a[0] * (s[0] - c), a[1] * (s[1] - c), a[2] * (s[2] - c)])
}

fn check_distribution(p: &[f64], frame: usize) -> Result<()> {
    let valid = p.iter().all(|v| v.is_finite() && *v >= 0.0)
        && (p.iter().sum::<f64>() - 1.0).abs() <= DISTRIBUTION_TOLERANCE;
    if valid {
        Ok(())
    } else {
        Err(ConfidenceError::NotADistribution(frame))
    }
}

fn entropy_unchecked(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>()
}

/// Shannon entropy in nats, with `0 ln 0 = 0`.
pub fn posterior_entropy(p: &[f64]) -> Result<f64> {
    check_distribution(p, 0)?;
    Ok(entropy_unchecked(p).max(0.0))
}

/// One minus the mean per-frame entropy, each frame's entropy divided by
/// `ln V`.
pub fn model_confidence(posteriors: &[Vec<f64>]) -> Result<f64> {
    let first = posteriors.first().ok_or(ConfidenceError::EmptyInput)?;
    let v = first.len();
    if v < 2 {
        return Err(ConfidenceError::DegenerateVocab);
    }
    let max_entropy = (v as f64).ln();
    let mut total = 0.0;
    for (i, p) in posteriors.iter().enumerate() {
        if p.len() != v {
            return Err(ConfidenceError::NotADistribution(i));
        }
        check_distribution(p, i)?;
        total += entropy_unchecked(p) / max_entropy;
    }
    Ok((1.0 - total / posteriors.len() as f64).clamp(0.0, 1.0))
}

/// Mixing coefficient for `epoch` (0-based), linear from `lambda_start` at
/// the first epoch to `lambda_end` at the last and held there afterwards.
pub fn lambda_at_epoch(schedule: &AnnealSchedule, epoch: usize) -> f64 {
    if schedule.total_epochs <= 1 {
        return schedule.lambda_end;
    }
    let progress = (epoch as f64 / (schedule.total_epochs - 1) as f64).min(1.0);
    if progress >= 1.0 {
        return schedule.lambda_end;
    }
    schedule.lambda_start - (schedule.lambda_start - schedule.lambda_end) * progress
}

/// `lambda * c + (1 - lambda) * c_model`.
pub fn hybrid_confidence(c: f64, c_model: f64, lambda: f64) -> Result<f64> {
    check_unit(c, "static confidence")?;
    check_unit(c_model, "model confidence")?;
    check_unit(lambda, "lambda")?;
    Ok((lambda * c + (1.0 - lambda) * c_model).clamp(0.0, 1.0))
}

/// How the three static scores are combined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aggregation {
    Fixed(AggregationWeights),
    Learnable(WeightLogits),
}

impl Aggregation {
    pub fn combine(&self, scores: &StaticScores) -> Result<f64> {
        match self {
            Aggregation::Fixed(w) => aggregate_fixed(scores, w),
            Aggregation::Learnable(l) => aggregate_learnable(scores, l),
        }
    }

    pub fn weights(&self) -> Result<AggregationWeights> {
        match self {
            Aggregation::Fixed(w) => {
                w.validate()?;
                Ok(*w)
            }
            Aggregation::Learnable(l) => softmax_weights(l),
        }
    }
}

impl Default for Aggregation {
    fn default() -> Self {
        Aggregation::Fixed(AggregationWeights::DEFAULT)
    }
}

/// Everything needed to score a manifest. `features` is parallel to
/// `records`; the maps are keyed by utterance id.
#[derive(Debug, Clone, Copy)]
pub struct ScoringInput<'a> {
    pub records: &'a [CorpusRecord],
    pub features: &'a [PerceptualFeatures],
    /// Needed for every aligned synthetic record and its real partner.
    pub mfccs: &'a BTreeMap<String, MfccSequence>,
    /// Decoded transcripts of aligned synthetic records.
    pub hypotheses: &'a BTreeMap<String, Vec<String>>,
    /// Optional per-utterance posterior matrices.
    pub posteriors: &'a BTreeMap<String, Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoringOptions {
    pub aggregation: Aggregation,
    pub lambda: f64,
    /// Score aligned records without a hypothesis as `s_wer = 0` instead of
    /// failing.
    pub allow_missing_hypothesis: bool,
}

impl Default for ScoringOptions {
    fn default() -> Self {
        Self {
            aggregation: Aggregation::default(),
            lambda: 1.0,
            allow_missing_hypothesis: false,
        }
    }
}

/// Normalized perceptual score for every record, with min-max ranges taken
/// over the whole manifest.
pub fn corpus_perceptual_scores(features: &[PerceptualFeatures]) -> Result<Vec<f64>> {
    let columns: Vec<Vec<f64>> = (0..5)
        .map(|k| {
            let col: Vec<f64> = features.iter().map(|f| f.as_array()[k]).collect();
            normalize_minmax(&col)
        })
        .collect::<Result<_>>()?;
    (0..features.len())
        .map(|i| perceptual_score(core::array::from_fn(|k| columns[k][i])))
        .collect()
}

/// Scores a whole manifest; reports come back in manifest order.
pub fn score_corpus(
    input: &ScoringInput<'_>,
    opts: &ScoringOptions,
) -> Result<Vec<ConfidenceReport>> {
    if input.records.len() != input.features.len() {
        return Err(ConfidenceError::FeatureCountMismatch {
            records: input.records.len(),
            features: input.features.len(),
        });
    }
    if input.records.is_empty() {
        return Err(ConfidenceError::EmptyInput);
    }
    check_unit(opts.lambda, "lambda")?;
    opts.aggregation.weights()?;

    let by_id: BTreeMap<&str, &CorpusRecord> = input
        .records
        .iter()
        .map(|r| (r.utt_id.as_str(), r))
        .collect();
    let perceptual = corpus_perceptual_scores(input.features)?;
    let mfcc_of = |id: &str| {
        input
            .mfccs
            .get(id)
            .ok_or_else(|| ConfidenceError::MissingMfcc(id.into()))
    };

    let mut reports = Vec::with_capacity(input.records.len());
    for (record, s_perceptual) in input.records.iter().zip(perceptual) {
        let mask = availability_mask(record);
        let partner = match (record.source, record.aligned_ref_id.as_deref()) {
            (SourceKind::SyntheticAligned, Some(id)) => by_id.get(id).copied(),
            _ => None,
        };
        let s_sim = match (mask.fixed_sim, partner) {
            (Some(v), _) => v,
            (None, Some(real)) => {
                acoustic_similarity(mfcc_of(&real.utt_id)?, mfcc_of(&record.utt_id)?)?
            }
            (None, None) => 0.0,
        };
        let s_wer = match (mask.fixed_wer, partner) {
            (Some(v), _) => v,
            (None, Some(real)) => match input.hypotheses.get(&record.utt_id) {
                Some(hyp) => wer_score(&real.transcript, hyp)?,
                None if opts.allow_missing_hypothesis => 0.0,
                None => return Err(ConfidenceError::MissingHypothesis(record.utt_id.clone())),
            },
            (None, None) => 0.0,
        };
        let scores = StaticScores::new(s_perceptual, s_sim, s_wer)?;
        let c_static = opts.aggregation.combine(&scores)?;
        let c_model = match input.posteriors.get(&record.utt_id) {
            Some(frames) => model_confidence(frames)?,
            None => NEUTRAL_MODEL_CONFIDENCE,
        };
        let c_final = hybrid_confidence(c_static, c_model, opts.lambda)?;
        reports.push(ConfidenceReport {
            utt_id: record.utt_id.clone(),
            scores,
            c_static,
            c_model,
            c_final,
            lambda_used: opts.lambda,
        });
    }
    Ok(reports)
}
