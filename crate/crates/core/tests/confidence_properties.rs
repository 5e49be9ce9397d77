use std::collections::BTreeMap;

use hycon_core::confidence::{
    aggregate_fixed, aggregate_learnable, aggregation_gradient, hybrid_confidence, score_corpus,
    softmax_weights, Aggregation, ScoringInput, ScoringOptions,
};
use hycon_core::dsp::FrameConfig;
use hycon_core::{
    AggregationWeights, CorpusRecord, MfccSequence, PerceptualFeatures, SourceKind, StaticScores,
    WeightLogits,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scores_strategy() -> impl Strategy<Value = StaticScores> {
    (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0)
        .prop_map(|(p, s, w)| StaticScores::new(p, s, w).unwrap())
}

fn logits_strategy() -> impl Strategy<Value = WeightLogits> {
    (-6.0f64..6.0, -6.0f64..6.0, -6.0f64..6.0).prop_map(|(a, b, c)| WeightLogits::new(a, b, c))
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gradient_matches_central_differences(s in scores_strategy(), l in logits_strategy()) {
        let g = aggregation_gradient(&s, &l).unwrap();
        let h = 1e-5;
        for (k, &gk) in g.iter().enumerate() {
            let mut up = l;
            up.0[k] += h;
            let mut down = l;
            down.0[k] -= h;
            let fd = (aggregate_learnable(&s, &up).unwrap() - aggregate_learnable(&s, &down).unwrap())
                / (2.0 * h);
            prop_assert!(rel_err(gk, fd) < 1e-5, "k={} analytic={} numeric={}", k, gk, fd);
        }
    }

    #[test]
    fn softmax_weights_sum_to_one(l in logits_strategy(), shift in -50.0f64..50.0, s in scores_strategy()) {
        let w = softmax_weights(&l).unwrap();
        prop_assert!((w.alpha + w.beta + w.gamma - 1.0).abs() <= 1e-12);
        let shifted = WeightLogits::new(l.0[0] + shift, l.0[1] + shift, l.0[2] + shift);
        let a = aggregate_learnable(&s, &l).unwrap();
        let b = aggregate_learnable(&s, &shifted).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn fixed_aggregate_is_monotone(
        s in scores_strategy(),
        k in 0usize..3,
        bump in 0.0f64..1.0,
        raw in (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0),
    ) {
        let total = raw.0 + raw.1 + raw.2 + 1e-9;
        let w = AggregationWeights {
            alpha: raw.0 / total,
            beta: raw.1 / total,
            gamma: 1.0 - raw.0 / total - raw.1 / total,
        };
        let mut v = s.as_array();
        v[k] = (v[k] + bump).min(1.0);
        let higher = StaticScores::new(v[0], v[1], v[2]).unwrap();
        prop_assert!(aggregate_fixed(&higher, &w).unwrap() >= aggregate_fixed(&s, &w).unwrap());
    }

    #[test]
    fn hybrid_endpoints(c in 0.0f64..=1.0, m in 0.0f64..=1.0) {
        prop_assert_eq!(hybrid_confidence(c, m, 1.0).unwrap(), c);
        prop_assert_eq!(hybrid_confidence(c, m, 0.0).unwrap(), m);
    }
}

fn random_mfcc(rng: &mut ChaCha8Rng) -> MfccSequence {
    let frames = rng.random_range(1..6);
    let seq = (0..frames)
        .map(|_| (0..13).map(|_| rng.random_range(-20.0..20.0)).collect())
        .collect();
    MfccSequence::from_frames(seq, FrameConfig::default()).unwrap()
}

fn random_words(rng: &mut ChaCha8Rng) -> Vec<String> {
    let n = rng.random_range(1..6);
    (0..n)
        .map(|_| ["a", "b", "c", "d"][rng.random_range(0..4)].to_string())
        .collect()
}

fn random_posteriors(rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..rng.random_range(1..5))
        .map(|_| {
            let raw: Vec<f64> = (0..4).map(|_| rng.random_range(0.0..1.0)).collect();
            let sum: f64 = raw.iter().sum::<f64>() + 1e-12;
            raw.iter().map(|v| v / sum).collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn corpus_scores_stay_in_unit_interval(seed in any::<u64>(), lambda in 0.0f64..=1.0, learnable in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut records = Vec::new();
        let mut mfccs = BTreeMap::new();
        let mut hypotheses = BTreeMap::new();
        let mut posteriors = BTreeMap::new();
        for i in 0..60 {
            let id = format!("u{i}");
            let reals: Vec<String> = records
                .iter()
                .filter(|r: &&CorpusRecord| r.source == SourceKind::Real)
                .map(|r| r.utt_id.clone())
                .collect();
            let kind = match rng.random_range(0..3) {
                1 if !reals.is_empty() => SourceKind::SyntheticAligned,
                2 => SourceKind::SyntheticUnaligned,
                _ => SourceKind::Real,
            };
            let aligned = (kind == SourceKind::SyntheticAligned)
                .then(|| reals[rng.random_range(0..reals.len())].clone());
            if kind == SourceKind::SyntheticAligned {
                hypotheses.insert(id.clone(), random_words(&mut rng));
            }
            if rng.random_bool(0.5) {
                posteriors.insert(id.clone(), random_posteriors(&mut rng));
            }
            mfccs.insert(id.clone(), random_mfcc(&mut rng));
            records.push(CorpusRecord {
                utt_id: id,
                source: kind,
                audio_path: format!("{i}.wav"),
                transcript: random_words(&mut rng),
                aligned_ref_id: aligned,
            });
        }
        let features: Vec<PerceptualFeatures> = (0..records.len())
            .map(|_| PerceptualFeatures::from_array(core::array::from_fn(|_| rng.random_range(0.0..5000.0))))
            .collect();
        let input = ScoringInput {
            records: &records,
            features: &features,
            mfccs: &mfccs,
            hypotheses: &hypotheses,
            posteriors: &posteriors,
        };
        let aggregation = if learnable {
            Aggregation::Learnable(WeightLogits::new(rng.random_range(-3.0..3.0), 0.0, rng.random_range(-3.0..3.0)))
        } else {
            Aggregation::Fixed(AggregationWeights::DEFAULT)
        };
        let opts = ScoringOptions { aggregation, lambda, allow_missing_hypothesis: false };
        let reports = score_corpus(&input, &opts).unwrap();
        prop_assert_eq!(reports.len(), records.len());
        for r in &reports {
            for v in [r.scores.s_perceptual, r.scores.s_sim, r.scores.s_wer, r.c_static, r.c_model, r.c_final] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
        prop_assert_eq!(score_corpus(&input, &opts).unwrap(), reports);
    }
}
