use hycon::manifest::{format_manifest, parse_manifest};
use hycon::tables::{format_dataset, parse_dataset};
use hycon_core::trainer::TrainSample;
use hycon_core::{CorpusRecord, SourceKind, StaticScores};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["rakta", "సుగర్", "పరీక్ష", "a", "ಮಧುಮೇಹ", "x1"]).prop_map(String::from)
}

fn manifest_strategy() -> impl Strategy<Value = Vec<CorpusRecord>> {
    let row = (
        0u8..3,
        prop::collection::vec(word(), 1..5),
        any::<prop::sample::Index>(),
    );
    prop::collection::vec(row, 1..12).prop_map(|rows| {
        let mut records: Vec<CorpusRecord> = Vec::new();
        for (i, (kind, words, pick)) in rows.into_iter().enumerate() {
            let reals: Vec<String> = records
                .iter()
                .filter(|r| r.source == SourceKind::Real)
                .map(|r| r.utt_id.clone())
                .collect();
            let source = match kind {
                1 if !reals.is_empty() => SourceKind::SyntheticAligned,
                2 => SourceKind::SyntheticUnaligned,
                _ => SourceKind::Real,
            };
            let aligned_ref_id =
                (source == SourceKind::SyntheticAligned).then(|| pick.get(&reals).clone());
            records.push(CorpusRecord {
                utt_id: format!("id{i}"),
                source,
                audio_path: format!("audio dir/{i}.wav"),
                transcript: words,
                aligned_ref_id,
            });
        }
        records
    })
}

proptest! {
    #[test]
    fn manifest_round_trip(records in manifest_strategy()) {
        let text = format_manifest(&records);
        let parsed = parse_manifest(&text).unwrap();
        prop_assert_eq!(&parsed, &records);
        prop_assert_eq!(format_manifest(&parsed), text);
    }

    #[test]
    fn dataset_round_trip_is_exact(
        rows in prop::collection::vec(
            (prop::collection::vec(-1e6f64..1e6, 3), 0usize..4, 0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=1.0),
            1..20,
        )
    ) {
        let samples: Vec<TrainSample> = rows
            .into_iter()
            .map(|(features, label, a, b, c)| TrainSample {
                features,
                label,
                static_scores: StaticScores::new(a, b, c).unwrap(),
            })
            .collect();
        let parsed = parse_dataset(&format_dataset(&samples)).unwrap();
        prop_assert_eq!(parsed, samples);
    }
}
