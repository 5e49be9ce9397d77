//! Synthetic label-noise experiment: two Gaussian clusters, a fraction of
//! training labels corrupted, and static scores that flag corrupted samples.

use alloc::vec::Vec;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{accuracy, train, TrainConfig, TrainError, TrainSample, WeightMode};
use crate::confidence::{AggregationWeights, AnnealSchedule, StaticScores};

pub const DIMS: usize = 5;
pub const TRAIN_SIZE: usize = 400;
pub const TEST_SIZE: usize = 200;
/// Distance of each cluster mean from the origin.
pub const CLUSTER_OFFSET: f64 = 1.0;
const CLEAN_SCORE: f64 = 0.9;
const CORRUPT_SCORE: f64 = 0.1;
const SCORE_JITTER: f64 = 0.05;

/// Which static score components carry the corruption signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoreProfile {
    /// All three components are ~0.1 on corrupted and ~0.9 on clean samples.
    #[default]
    AllInformative,
    /// Only `s_perceptual` tracks cleanliness. `s_sim` and `s_wer` are
    /// independently shuffled copies of the perceptual column: same marginal
    /// distribution, no relation to the labels.
    PerceptualOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub corruption_rate: f64,
    pub profile: ScoreProfile,
    /// Replace every static score by 1 and hold lambda at 1.
    pub force_unit_confidence: bool,
    /// Shared by both arms; the unweighted arm overrides `mode`.
    pub train: TrainConfig,
}

impl ExperimentConfig {
    pub fn new(seed: u64, corruption_rate: f64) -> Self {
        Self {
            seed,
            corruption_rate,
            profile: ScoreProfile::default(),
            force_unit_confidence: false,
            train: TrainConfig {
                seed,
                ..TrainConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentOutcome {
    pub acc_weighted: f64,
    pub acc_unweighted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoisyClusters {
    pub train: Vec<TrainSample>,
    pub test: Vec<TrainSample>,
    /// Whether each training label was corrupted.
    pub corrupted: Vec<bool>,
}

fn cluster_point(rng: &mut ChaCha8Rng, label: usize) -> Vec<f64> {
    let sign = if label == 0 { -1.0 } else { 1.0 };
    let shift = sign * CLUSTER_OFFSET / (DIMS as f64).sqrt();
    (0..DIMS)
        .map(|_| shift + rng.sample::<f64, _>(StandardNormal))
        .collect()
}

fn jitter(rng: &mut ChaCha8Rng, centre: f64) -> f64 {
    (centre + rng.random_range(-SCORE_JITTER..=SCORE_JITTER)).clamp(0.0, 1.0)
}

fn centre(corrupted: bool) -> f64 {
    if corrupted {
        CORRUPT_SCORE
    } else {
        CLEAN_SCORE
    }
}

fn static_scores(
    rng: &mut ChaCha8Rng,
    corrupted: &[bool],
    profile: ScoreProfile,
) -> Vec<StaticScores> {
    let columns: [Vec<f64>; 3] = match profile {
        ScoreProfile::AllInformative => {
            let mut cols = [Vec::new(), Vec::new(), Vec::new()];
            for &bad in corrupted {
                for col in &mut cols {
                    col.push(jitter(rng, centre(bad)));
                }
            }
            cols
        }
        ScoreProfile::PerceptualOnly => {
            let p: Vec<f64> = corrupted
                .iter()
                .map(|&bad| jitter(rng, centre(bad)))
                .collect();
            let mut s = p.clone();
            s.shuffle(rng);
            let mut w = p.clone();
            w.shuffle(rng);
            [p, s, w]
        }
    };
    (0..corrupted.len())
        .map(|i| {
            StaticScores::new(columns[0][i], columns[1][i], columns[2][i])
                .expect("scores are clamped to [0, 1]")
        })
        .collect()
}

/// Balanced clusters. Corruption relabels class-0 training samples as class
/// 1, so the noise biases the decision boundary instead of cancelling out.
/// The number of corrupted samples is `round(rate * TRAIN_SIZE)`, capped at
/// the class-0 count. The test set is clean.
pub fn generate_noisy_clusters(
    seed: u64,
    corruption_rate: f64,
    profile: ScoreProfile,
) -> Result<NoisyClusters, TrainError> {
    if !(0.0..=1.0).contains(&corruption_rate) {
        return Err(TrainError::InvalidConfig(
            "corruption rate must lie in [0, 1]",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let make = |n: usize, rng: &mut ChaCha8Rng| -> Vec<(Vec<f64>, usize)> {
        (0..n)
            .map(|i| {
                let label = i % 2;
                (cluster_point(rng, label), label)
            })
            .collect()
    };
    let train_points = make(TRAIN_SIZE, &mut rng);
    let test_points = make(TEST_SIZE, &mut rng);

    let mut class0: Vec<usize> = (0..TRAIN_SIZE)
        .filter(|i| train_points[*i].1 == 0)
        .collect();
    class0.shuffle(&mut rng);
    let n_corrupt = ((corruption_rate * TRAIN_SIZE as f64).round() as usize).min(class0.len());
    let mut corrupted = alloc::vec![false; TRAIN_SIZE];
    for &i in &class0[..n_corrupt] {
        corrupted[i] = true;
    }

    let scores = static_scores(&mut rng, &corrupted, profile);
    let train = train_points
        .into_iter()
        .zip(corrupted.iter().zip(scores))
        .map(|((features, label), (&bad, static_scores))| TrainSample {
            features,
            label: if bad { 1 } else { label },
            static_scores,
        })
        .collect();
    let test = test_points
        .into_iter()
        .map(|(features, label)| TrainSample {
            features,
            label,
            static_scores: StaticScores::new(1.0, 1.0, 1.0).expect("unit scores"),
        })
        .collect();
    Ok(NoisyClusters {
        train,
        test,
        corrupted,
    })
}

/// Trains a weighted and an unweighted model on the same noisy data and
/// shuffling seed and returns their clean test accuracies.
pub fn noise_robustness_experiment(
    cfg: &ExperimentConfig,
) -> Result<ExperimentOutcome, TrainError> {
    let mut data = generate_noisy_clusters(cfg.seed, cfg.corruption_rate, cfg.profile)?;
    let mut weighted_cfg = cfg.train.clone();
    if matches!(weighted_cfg.mode, WeightMode::Unweighted) {
        weighted_cfg.mode = WeightMode::Fixed(AggregationWeights::DEFAULT);
    }
    if cfg.force_unit_confidence {
        let unit = StaticScores::new(1.0, 1.0, 1.0).expect("unit scores");
        for s in &mut data.train {
            s.static_scores = unit;
        }
        weighted_cfg.schedule = AnnealSchedule::constant(1.0, weighted_cfg.epochs);
    }
    let unweighted_cfg = TrainConfig {
        mode: WeightMode::Unweighted,
        ..weighted_cfg.clone()
    };
    let weighted = train(&data.train, &weighted_cfg)?;
    let unweighted = train(&data.train, &unweighted_cfg)?;
    Ok(ExperimentOutcome {
        acc_weighted: accuracy(&weighted.state.model, &data.test)?,
        acc_unweighted: accuracy(&unweighted.state.model, &data.test)?,
    })
}
