//! Confidence-weighted training of a linear softmax classifier.
//!
//! Each sample's cross-entropy is multiplied by its hybrid confidence
//! `c_final = lambda * c_static + (1 - lambda) * c_model`, and the batch loss
//! is the mean of those products. `c_model` comes from the entropy of the
//! classifier's own prediction and is treated as a constant when
//! differentiating. In learnable mode the aggregation logits are trained
//! jointly with the classifier.

mod experiment;

use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::f64::consts::PI;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::confidence::{
    aggregate_fixed, aggregate_learnable, hybrid_confidence, lambda_at_epoch, softmax_weights,
    AggregationWeights, AnnealSchedule, ConfidenceError, StaticScores, WeightLogits,
};

pub use experiment::{
    generate_noisy_clusters, noise_robustness_experiment, ExperimentConfig, ExperimentOutcome,
    NoisyClusters, ScoreProfile, DIMS, TEST_SIZE, TRAIN_SIZE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrainError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("batch is empty")]
    EmptyBatch,
    #[error("expected {expected} features, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("invalid training config: {0}")]
    InvalidConfig(&'static str),
    #[error("non-finite loss in epoch {epoch}")]
    NumericFailure { epoch: usize },
    #[error("model produced a non-finite output")]
    NonFiniteOutput,
    #[error(transparent)]
    Confidence(#[from] ConfidenceError),
}

type Result<T> = core::result::Result<T, TrainError>;

/// `softmax(W x + b)` classifier; `weights` is row-major `classes x dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyModel {
    classes: usize,
    dims: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

impl ToyModel {
    pub fn zeros(classes: usize, dims: usize) -> Result<Self> {
        if classes < 2 || dims < 1 {
            return Err(TrainError::InvalidConfig(
                "need at least 2 classes and 1 feature",
            ));
        }
        Ok(Self {
            classes,
            dims,
            weights: vec![0.0; classes * dims],
            bias: vec![0.0; classes],
        })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn forward(&self, features: &[f64]) -> Result<Vec<f64>> {
        if features.len() != self.dims {
            return Err(TrainError::DimensionMismatch {
                expected: self.dims,
                found: features.len(),
            });
        }
        let z: Vec<f64> = (0..self.classes)
            .map(|k| {
                let row = &self.weights[k * self.dims..(k + 1) * self.dims];
                self.bias[k] + row.iter().zip(features).map(|(w, x)| w * x).sum::<f64>()
            })
            .collect();
        Ok(softmax(&z))
    }

    pub fn predict(&self, features: &[f64]) -> Result<usize> {
        let p = self.forward(features)?;
        Ok(argmax(&p))
    }
}

pub fn softmax(z: &[f64]) -> Vec<f64> {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = z.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = e.iter().sum();
    e.into_iter().map(|v| v / sum).collect()
}

fn argmax(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in p.iter().enumerate() {
        if *v > p[best] {
            best = i;
        }
    }
    best
}

pub fn forward(model: &ToyModel, features: &[f64]) -> Result<Vec<f64>> {
    model.forward(features)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainSample {
    pub features: Vec<f64>,
    pub label: usize,
    pub static_scores: StaticScores,
}

/// How per-sample static confidence is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleWeighting {
    /// Plain cross-entropy: every `c_final` is 1.
    Unweighted,
    Fixed(AggregationWeights),
    Learnable(WeightLogits),
}

/// Weighting mode of a training run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightMode {
    Unweighted,
    Fixed(AggregationWeights),
    /// Starts from these logits and learns them.
    Learnable(WeightLogits),
}

/// Per-sample quantities of the weighted loss.
#[derive(Debug, Clone, PartialEq)]
pub struct LossTerm {
    pub loss: f64,
    pub cross_entropy: f64,
    pub c_static: f64,
    pub c_model: f64,
    pub c_final: f64,
    pub probs: Vec<f64>,
}

fn normalized_entropy(p: &[f64]) -> f64 {
    let h: f64 = -p
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>();
    (h / (p.len() as f64).ln()).clamp(0.0, 1.0)
}

/// `c_final * CE` for one sample. `c_model` overrides the entropy-based
/// model confidence when given.
pub fn weighted_loss(
    sample: &TrainSample,
    model: &ToyModel,
    weighting: &SampleWeighting,
    lambda: f64,
    c_model: Option<f64>,
) -> Result<LossTerm> {
    if sample.label >= model.classes {
        return Err(TrainError::LabelOutOfRange {
            label: sample.label,
            classes: model.classes,
        });
    }
    let probs = model.forward(&sample.features)?;
    if probs.iter().any(|p| !p.is_finite()) {
        return Err(TrainError::NonFiniteOutput);
    }
    let cross_entropy = -probs[sample.label].ln();
    let c_model = c_model.unwrap_or_else(|| 1.0 - normalized_entropy(&probs));
    let (c_static, c_final) = match weighting {
        SampleWeighting::Unweighted => (1.0, 1.0),
        SampleWeighting::Fixed(w) => {
            let c = aggregate_fixed(&sample.static_scores, w)?;
            (c, hybrid_confidence(c, c_model, lambda)?)
        }
        SampleWeighting::Learnable(l) => {
            let c = aggregate_learnable(&sample.static_scores, l)?;
            (c, hybrid_confidence(c, c_model, lambda)?)
        }
    };
    Ok(LossTerm {
        loss: c_final * cross_entropy,
        cross_entropy,
        c_static,
        c_model,
        c_final,
        probs,
    })
}

/// Mean weighted loss over a batch.
pub fn batch_loss<B: Borrow<TrainSample>>(
    batch: &[B],
    model: &ToyModel,
    weighting: &SampleWeighting,
    lambda: f64,
) -> Result<f64> {
    if batch.is_empty() {
        return Err(TrainError::EmptyBatch);
    }
    let mut total = 0.0;
    for s in batch {
        total += weighted_loss(s.borrow(), model, weighting, lambda, None)?.loss;
    }
    Ok(total / batch.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
    /// Zero unless the weighting is learnable.
    pub logits: [f64; 3],
    /// Batch loss at the point of evaluation.
    pub loss: f64,
}

/// Gradients of the batch loss (plus `-mu * H(softmax(logits))` in learnable
/// mode) with `c_model` held constant. `frozen_c_model`, if given, supplies
/// `c_model` per sample instead of recomputing it.
pub fn backward<B: Borrow<TrainSample>>(
    batch: &[B],
    model: &ToyModel,
    weighting: &SampleWeighting,
    lambda: f64,
    mu: f64,
    frozen_c_model: Option<&[f64]>,
) -> Result<Gradients> {
    if batch.is_empty() {
        return Err(TrainError::EmptyBatch);
    }
    let n = batch.len() as f64;
    let (k_cls, dims) = (model.classes, model.dims);
    let mut g = Gradients {
        weights: vec![0.0; k_cls * dims],
        bias: vec![0.0; k_cls],
        logits: [0.0; 3],
        loss: 0.0,
    };
    let mix = match weighting {
        SampleWeighting::Learnable(l) => Some(softmax_weights(l)?.as_array()),
        _ => None,
    };
    for (i, s) in batch.iter().enumerate() {
        let s = s.borrow();
        let term = weighted_loss(s, model, weighting, lambda, frozen_c_model.map(|c| c[i]))?;
        g.loss += term.loss / n;
        for k in 0..k_cls {
            let target = if k == s.label { 1.0 } else { 0.0 };
            let dz = term.c_final * (term.probs[k] - target) / n;
            g.bias[k] += dz;
            for (gw, x) in g.weights[k * dims..(k + 1) * dims]
                .iter_mut()
                .zip(&s.features)
            {
                *gw += dz * x;
            }
        }
        if let Some(a) = mix {
            let scores = s.static_scores.as_array();
            let c: f64 = a.iter().zip(&scores).map(|(w, v)| w * v).sum();
            for ((gk, ak), sk) in g.logits.iter_mut().zip(&a).zip(&scores) {
                *gk += term.cross_entropy * lambda * ak * (sk - c) / n;
            }
        }
    }
    if let (Some(a), true) = (mix, mu > 0.0) {
        let h: f64 = -a
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|v| v * v.ln())
            .sum::<f64>();
        for (gk, &ak) in g.logits.iter_mut().zip(&a) {
            if ak > 0.0 {
                *gk += mu * ak * (ak.ln() + h);
            }
        }
        g.loss -= mu * h;
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    /// Rate for the aggregation logits; `None` shares `learning_rate`.
    pub logits_learning_rate: Option<f64>,
    pub batch_size: usize,
    pub cosine_lr: bool,
    pub seed: u64,
    pub mode: WeightMode,
    pub schedule: AnnealSchedule,
    /// Strength of the weight-entropy regularizer (learnable mode only).
    pub mu: f64,
    /// Compute `c_model` once per sample at the start of each epoch instead
    /// of at every step.
    pub freeze_confidence_per_epoch: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 50,
            learning_rate: 1e-2,
            logits_learning_rate: None,
            batch_size: 16,
            cosine_lr: true,
            seed: 0,
            mode: WeightMode::Fixed(AggregationWeights::DEFAULT),
            schedule: AnnealSchedule::standard(50),
            mu: 0.0,
            freeze_confidence_per_epoch: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(TrainError::InvalidConfig("epochs must be positive"));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(TrainError::InvalidConfig("learning rate must be positive"));
        }
        if let Some(r) = self.logits_learning_rate {
            if !(r.is_finite() && r > 0.0) {
                return Err(TrainError::InvalidConfig(
                    "logits learning rate must be positive",
                ));
            }
        }
        if self.batch_size == 0 {
            return Err(TrainError::InvalidConfig("batch size must be positive"));
        }
        if !(self.mu.is_finite() && self.mu >= 0.0) {
            return Err(TrainError::InvalidConfig("mu must be non-negative"));
        }
        if let WeightMode::Fixed(w) = &self.mode {
            w.validate()?;
        }
        self.schedule.validate()?;
        Ok(())
    }

    /// Learning rate of epoch `e`, cosine-decayed when enabled.
    pub fn lr_at_epoch(&self, e: usize) -> f64 {
        if self.cosine_lr {
            self.learning_rate * 0.5 * (1.0 + (PI * e as f64 / self.epochs as f64).cos())
        } else {
            self.learning_rate
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainState {
    pub model: ToyModel,
    pub logits: WeightLogits,
    pub epoch: usize,
    pub rng: ChaCha8Rng,
}

impl TrainState {
    fn weighting(&self, mode: &WeightMode) -> SampleWeighting {
        match mode {
            WeightMode::Unweighted => SampleWeighting::Unweighted,
            WeightMode::Fixed(w) => SampleWeighting::Fixed(*w),
            WeightMode::Learnable(_) => SampleWeighting::Learnable(self.logits),
        }
    }
}

/// One row of the training log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochLog {
    pub epoch: usize,
    /// Mean weighted loss over the epoch's batches, before each update.
    pub loss: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub state: TrainState,
    pub log: Vec<EpochLog>,
}

/// Class count of a dataset: at least 2 and above the largest label.
pub fn class_count(dataset: &[TrainSample]) -> usize {
    dataset
        .iter()
        .map(|s| s.label + 1)
        .max()
        .unwrap_or(0)
        .max(2)
}

pub fn train(dataset: &[TrainSample], config: &TrainConfig) -> Result<TrainOutcome> {
    train_with_observer(dataset, config, |_, _| {})
}

/// Same as [`train`], calling `observe(step, state)` after every update.
pub fn train_with_observer<F>(
    dataset: &[TrainSample],
    config: &TrainConfig,
    mut observe: F,
) -> Result<TrainOutcome>
where
    F: FnMut(usize, &TrainState),
{
    config.validate()?;
    let first = dataset.first().ok_or(TrainError::EmptyDataset)?;
    let dims = first.features.len();
    let classes = class_count(dataset);
    for s in dataset {
        if s.features.len() != dims {
            return Err(TrainError::DimensionMismatch {
                expected: dims,
                found: s.features.len(),
            });
        }
    }
    let mut state = TrainState {
        model: ToyModel::zeros(classes, dims)?,
        logits: match config.mode {
            WeightMode::Learnable(l) => l,
            _ => WeightLogits::default(),
        },
        epoch: 0,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
    };
    let logits_lr_scale = config
        .logits_learning_rate
        .map_or(1.0, |r| r / config.learning_rate);
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    let mut log = Vec::with_capacity(config.epochs);
    let mut step = 0;

    for epoch in 0..config.epochs {
        state.epoch = epoch;
        let lambda = lambda_at_epoch(&config.schedule, epoch);
        let lr = config.lr_at_epoch(epoch);
        order.shuffle(&mut state.rng);

        let frozen: Option<Vec<f64>> = if config.freeze_confidence_per_epoch {
            Some(
                dataset
                    .iter()
                    .map(|s| {
                        state
                            .model
                            .forward(&s.features)
                            .map(|p| 1.0 - normalized_entropy(&p))
                    })
                    .collect::<Result<_>>()?,
            )
        } else {
            None
        };

        let mut epoch_loss = 0.0;
        for chunk in order.chunks(config.batch_size) {
            let batch: Vec<&TrainSample> = chunk.iter().map(|&i| &dataset[i]).collect();
            let frozen_batch: Option<Vec<f64>> = frozen
                .as_ref()
                .map(|f| chunk.iter().map(|&i| f[i]).collect());
            let weighting = state.weighting(&config.mode);
            let g = backward(
                &batch,
                &state.model,
                &weighting,
                lambda,
                config.mu,
                frozen_batch.as_deref(),
            )
            .map_err(|e| match e {
                TrainError::NonFiniteOutput => TrainError::NumericFailure { epoch },
                other => other,
            })?;
            if !g.loss.is_finite() {
                return Err(TrainError::NumericFailure { epoch });
            }
            epoch_loss += g.loss * batch.len() as f64;

            for (w, d) in state.model.weights.iter_mut().zip(&g.weights) {
                *w -= lr * d;
            }
            for (b, d) in state.model.bias.iter_mut().zip(&g.bias) {
                *b -= lr * d;
            }
            if matches!(config.mode, WeightMode::Learnable(_)) {
                for (l, d) in state.logits.0.iter_mut().zip(&g.logits) {
                    *l -= lr * logits_lr_scale * d;
                }
            }
            let finite = state
                .model
                .weights
                .iter()
                .chain(&state.model.bias)
                .all(|v| v.is_finite())
                && state.logits.0.iter().all(|v| v.is_finite());
            if !finite {
                return Err(TrainError::NumericFailure { epoch });
            }
            observe(step, &state);
            step += 1;
        }

        let weights = match config.mode {
            WeightMode::Unweighted => AggregationWeights {
                alpha: 1.0 / 3.0,
                beta: 1.0 / 3.0,
                gamma: 1.0 / 3.0,
            },
            WeightMode::Fixed(w) => w,
            WeightMode::Learnable(_) => softmax_weights(&state.logits)?,
        };
        log.push(EpochLog {
            epoch,
            loss: epoch_loss / dataset.len() as f64,
            lambda,
            alpha: weights.alpha,
            beta: weights.beta,
            gamma: weights.gamma,
            lr,
        });
    }
    state.epoch = config.epochs;
    Ok(TrainOutcome { state, log })
}

/// Fraction of samples whose argmax prediction equals the label.
pub fn accuracy(model: &ToyModel, samples: &[TrainSample]) -> Result<f64> {
    if samples.is_empty() {
        return Err(TrainError::EmptyDataset);
    }
    let mut correct = 0usize;
    for s in samples {
        if model.predict(&s.features)? == s.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / samples.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(features: Vec<f64>, label: usize, s: (f64, f64, f64)) -> TrainSample {
        TrainSample {
            features,
            label,
            static_scores: StaticScores::new(s.0, s.1, s.2).unwrap(),
        }
    }

    #[test]
    fn forward_examples() {
        let m = ToyModel::zeros(3, 2).unwrap();
        let p = m.forward(&[0.3, -2.0]).unwrap();
        assert!(p.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));

        let mut m = ToyModel::zeros(2, 1).unwrap();
        m.bias = vec![1000.0, 0.0];
        let p = m.forward(&[0.0]).unwrap();
        assert_eq!(p[0], 1.0);
        assert!(p[1] < 1e-300);
        assert!(m.forward(&[0.0, 1.0]).is_err());
        assert!(ToyModel::zeros(1, 3).is_err());
    }

    #[test]
    fn weighted_loss_examples() {
        let m = ToyModel::zeros(2, 1).unwrap();
        let s = sample(vec![1.0], 0, (1.0, 1.0, 1.0));
        let fixed = SampleWeighting::Fixed(AggregationWeights::DEFAULT);
        let t = weighted_loss(&s, &m, &fixed, 1.0, None).unwrap();
        assert_eq!(t.loss, t.cross_entropy);
        assert!((t.cross_entropy - 2f64.ln()).abs() < 1e-15);

        let zero = sample(vec![1.0], 0, (0.0, 0.0, 0.0));
        let t = weighted_loss(&zero, &m, &fixed, 1.0, None).unwrap();
        assert_eq!(t.loss, 0.0);
        let g = backward(&[zero], &m, &fixed, 1.0, 0.0, None).unwrap();
        assert!(g.weights.iter().chain(&g.bias).all(|v| *v == 0.0));

        // CE of 2 nats: p[label] = e^-2
        let mut m = ToyModel::zeros(2, 1).unwrap();
        m.bias = vec![0.0, (2f64.exp() - 1.0).ln()];
        let s = sample(vec![0.0], 0, (0.5, 1.0, 1.0));
        let t = weighted_loss(&s, &m, &fixed, 1.0, None).unwrap();
        assert!((t.cross_entropy - 2.0).abs() < 1e-12);
        assert!((t.loss - 1.6).abs() < 1e-12);
    }

    #[test]
    fn batch_loss_is_a_mean() {
        let mut m = ToyModel::zeros(3, 2).unwrap();
        m.weights = vec![0.1, -0.2, 0.3, 0.0, -0.5, 0.4];
        let w = SampleWeighting::Fixed(AggregationWeights::DEFAULT);
        let a = sample(vec![1.0, 2.0], 0, (0.2, 0.5, 0.9));
        let b = sample(vec![-1.0, 0.5], 2, (0.7, 0.1, 0.3));
        let single = weighted_loss(&a, &m, &w, 0.7, None).unwrap().loss;
        assert_eq!(
            batch_loss(core::slice::from_ref(&a), &m, &w, 0.7).unwrap(),
            single
        );
        let same = batch_loss(&[a.clone(), a.clone(), a.clone()], &m, &w, 0.7).unwrap();
        assert!((same - single).abs() < 1e-15);
        let l1 = batch_loss(&[a.clone(), b.clone()], &m, &w, 0.7).unwrap();
        let l2 = batch_loss(&[b.clone(), b.clone()], &m, &w, 0.7).unwrap();
        let joint = batch_loss(&[a, b.clone(), b.clone(), b], &m, &w, 0.7).unwrap();
        assert!((joint - (l1 + l2) / 2.0).abs() < 1e-15);
        assert_eq!(
            batch_loss::<TrainSample>(&[], &m, &w, 0.7),
            Err(TrainError::EmptyBatch)
        );
    }

    #[test]
    fn unit_confidence_gives_plain_ce_gradient() {
        let mut m = ToyModel::zeros(2, 2).unwrap();
        m.weights = vec![0.3, -0.1, 0.2, 0.4];
        let batch = [
            sample(vec![1.0, 0.0], 0, (1.0, 1.0, 1.0)),
            sample(vec![0.5, -1.0], 1, (1.0, 1.0, 1.0)),
        ];
        let weighted = backward(
            &batch,
            &m,
            &SampleWeighting::Fixed(AggregationWeights::DEFAULT),
            1.0,
            0.0,
            None,
        )
        .unwrap();
        let plain = backward(&batch, &m, &SampleWeighting::Unweighted, 1.0, 0.0, None).unwrap();
        assert_eq!(weighted.weights, plain.weights);
        assert_eq!(weighted.bias, plain.bias);
    }

    #[test]
    fn equal_scores_give_zero_logit_gradient() {
        let m = ToyModel::zeros(2, 1).unwrap();
        let batch = [
            sample(vec![1.0], 0, (0.4, 0.4, 0.4)),
            sample(vec![2.0], 1, (0.8, 0.8, 0.8)),
        ];
        let w = SampleWeighting::Learnable(WeightLogits::new(0.2, -0.3, 1.0));
        let g = backward(&batch, &m, &w, 0.8, 0.0, None).unwrap();
        assert!(g.logits.iter().all(|v| v.abs() < 1e-16));
    }

    #[test]
    fn cosine_schedule() {
        let cfg = TrainConfig::default();
        assert_eq!(cfg.lr_at_epoch(0), 1e-2);
        assert!((cfg.lr_at_epoch(25) - 5e-3).abs() < 1e-15);
        let flat = TrainConfig {
            cosine_lr: false,
            ..TrainConfig::default()
        };
        assert_eq!(flat.lr_at_epoch(30), 1e-2);
    }

    #[test]
    fn separable_data_is_learned() {
        let data: Vec<TrainSample> = (0..100)
            .map(|i| {
                let label = i % 2;
                let x = (i / 2) as f64 * 0.02 + 0.5;
                let sign = if label == 0 { -1.0 } else { 1.0 };
                sample(
                    vec![sign * x, 0.3 * (i as f64 * 0.7).sin()],
                    label,
                    (0.9, 0.9, 0.9),
                )
            })
            .collect();
        let out = train(&data, &TrainConfig::default()).unwrap();
        assert_eq!(accuracy(&out.state.model, &data).unwrap(), 1.0);
        assert_eq!(out.log.len(), 50);
        assert_eq!(out.log[0].lambda, 1.0);
        assert_eq!(out.log[49].lambda, 0.5);
    }

    #[test]
    fn rejects_bad_configs() {
        let data = [sample(vec![1.0], 0, (1.0, 1.0, 1.0))];
        let bad = [
            TrainConfig {
                epochs: 0,
                ..TrainConfig::default()
            },
            TrainConfig {
                batch_size: 0,
                ..TrainConfig::default()
            },
            TrainConfig {
                learning_rate: -1.0,
                ..TrainConfig::default()
            },
            TrainConfig {
                mu: -0.1,
                ..TrainConfig::default()
            },
            TrainConfig {
                mode: WeightMode::Fixed(AggregationWeights {
                    alpha: 0.5,
                    beta: 0.5,
                    gamma: 0.5,
                }),
                ..TrainConfig::default()
            },
        ];
        for cfg in bad {
            assert!(train(&data, &cfg).is_err());
        }
        assert_eq!(
            train(&[], &TrainConfig::default()),
            Err(TrainError::EmptyDataset)
        );
    }
}
