//! Corpus records and the per-source availability of static scores.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// The only sample rate accepted after ingestion.
pub const REQUIRED_SAMPLE_RATE: u32 = 16_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("malformed manifest line {0}")]
    MalformedLine(usize),
    #[error("duplicate utterance id `{0}`")]
    DuplicateId(String),
    #[error("record `{0}` has an invalid or unresolved alignment")]
    DanglingAlignment(String),
    #[error("unknown source kind `{0}`")]
    UnknownSource(String),
    #[error("audio clip has no samples")]
    EmptyClip,
    #[error("unsupported sample rate {0} Hz (expected 16000)")]
    UnsupportedRate(u32),
}

/// Where an utterance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SourceKind {
    Real,
    /// Synthetic rendition of a transcript that also has a real recording.
    SyntheticAligned,
    SyntheticUnaligned,
}

impl SourceKind {
    /// Manifest token for this kind.
    pub fn token(self) -> &'static str {
        match self {
            SourceKind::Real => "real",
            SourceKind::SyntheticAligned => "synth_aligned",
            SourceKind::SyntheticUnaligned => "synth_unaligned",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for SourceKind {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(SourceKind::Real),
            "synth_aligned" => Ok(SourceKind::SyntheticAligned),
            "synth_unaligned" => Ok(SourceKind::SyntheticUnaligned),
            other => Err(CorpusError::UnknownSource(other.into())),
        }
    }
}

/// One utterance of the manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub utt_id: String,
    pub source: SourceKind,
    pub audio_path: String,
    pub transcript: Vec<String>,
    /// Real partner for [`SourceKind::SyntheticAligned`]; `None` otherwise.
    pub aligned_ref_id: Option<String>,
}

impl CorpusRecord {
    /// Transcript as a single space-joined line.
    pub fn transcript_line(&self) -> String {
        self.transcript.join(" ")
    }
}

/// Decoded mono audio.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioClip {
    samples: Vec<f64>,
    sample_rate_hz: u32,
}

impl AudioClip {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self, CorpusError> {
        if sample_rate_hz != REQUIRED_SAMPLE_RATE {
            return Err(CorpusError::UnsupportedRate(sample_rate_hz));
        }
        if samples.is_empty() {
            return Err(CorpusError::EmptyClip);
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Which similarity/WER scores a record can have computed, and the constant
/// substituted when it cannot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Availability {
    pub has_sim: bool,
    pub has_wer: bool,
    pub fixed_sim: Option<f64>,
    pub fixed_wer: Option<f64>,
}

/// Real recordings are their own reference (1.0, 1.0), unaligned synthetic
/// speech has no reference at all (0, 0), and aligned synthetic speech gets
/// both scores computed against its real partner.
pub fn availability_mask(record: &CorpusRecord) -> Availability {
    match record.source {
        SourceKind::Real => Availability {
            has_sim: false,
            has_wer: false,
            fixed_sim: Some(1.0),
            fixed_wer: Some(1.0),
        },
        SourceKind::SyntheticAligned => Availability {
            has_sim: true,
            has_wer: true,
            fixed_sim: None,
            fixed_wer: None,
        },
        SourceKind::SyntheticUnaligned => Availability {
            has_sim: false,
            has_wer: false,
            fixed_sim: Some(0.0),
            fixed_wer: Some(0.0),
        },
    }
}

/// Checks id uniqueness and alignment rules over a whole manifest.
///
/// Several synthetic records may reference the same real record.
pub fn validate_records(records: &[CorpusRecord]) -> Result<(), CorpusError> {
    let mut kinds: BTreeMap<&str, SourceKind> = BTreeMap::new();
    for r in records {
        if kinds.insert(r.utt_id.as_str(), r.source).is_some() {
            return Err(CorpusError::DuplicateId(r.utt_id.clone()));
        }
    }
    for r in records {
        let alignment = r.aligned_ref_id.as_deref().filter(|s| !s.is_empty());
        let ok = match (r.source, alignment) {
            (SourceKind::SyntheticAligned, Some(target)) => {
                kinds.get(target) == Some(&SourceKind::Real)
            }
            (SourceKind::SyntheticAligned, None) => false,
            (_, Some(_)) => false,
            (_, None) => true,
        };
        if !ok {
            return Err(CorpusError::DanglingAlignment(r.utt_id.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::borrow::ToOwned;
    use alloc::vec;

    fn rec(id: &str, source: SourceKind, aligned: Option<&str>) -> CorpusRecord {
        CorpusRecord {
            utt_id: id.to_owned(),
            source,
            audio_path: "x.wav".to_owned(),
            transcript: vec!["a".to_owned()],
            aligned_ref_id: aligned.map(|s| s.to_owned()),
        }
    }

    #[test]
    fn table_rows() {
        let real = availability_mask(&rec("u1", SourceKind::Real, None));
        assert_eq!((real.has_sim, real.has_wer), (false, false));
        assert_eq!((real.fixed_sim, real.fixed_wer), (Some(1.0), Some(1.0)));

        let aligned = availability_mask(&rec("u2", SourceKind::SyntheticAligned, Some("u1")));
        assert_eq!((aligned.has_sim, aligned.has_wer), (true, true));
        assert_eq!((aligned.fixed_sim, aligned.fixed_wer), (None, None));

        let unaligned = availability_mask(&rec("u3", SourceKind::SyntheticUnaligned, None));
        assert_eq!((unaligned.has_sim, unaligned.has_wer), (false, false));
        assert_eq!(
            (unaligned.fixed_sim, unaligned.fixed_wer),
            (Some(0.0), Some(0.0))
        );
    }

    #[test]
    fn validation_rules() {
        let ok = vec![
            rec("u1", SourceKind::Real, None),
            rec("u2", SourceKind::SyntheticAligned, Some("u1")),
            rec("u3", SourceKind::SyntheticAligned, Some("u1")),
        ];
        assert!(validate_records(&ok).is_ok());

        let dup = vec![
            rec("u1", SourceKind::Real, None),
            rec("u1", SourceKind::Real, None),
        ];
        assert_eq!(
            validate_records(&dup),
            Err(CorpusError::DuplicateId("u1".into()))
        );

        let dangling = vec![rec("u3", SourceKind::SyntheticAligned, None)];
        assert_eq!(
            validate_records(&dangling),
            Err(CorpusError::DanglingAlignment("u3".into()))
        );

        let to_synth = vec![
            rec("u1", SourceKind::SyntheticUnaligned, None),
            rec("u2", SourceKind::SyntheticAligned, Some("u1")),
        ];
        assert!(validate_records(&to_synth).is_err());

        let real_with_ref = vec![
            rec("u1", SourceKind::Real, None),
            rec("u2", SourceKind::Real, Some("u1")),
        ];
        assert!(validate_records(&real_with_ref).is_err());
    }

    #[test]
    fn clip_rejects_other_rates() {
        assert_eq!(
            AudioClip::new(vec![0.0; 4], 44_100),
            Err(CorpusError::UnsupportedRate(44_100))
        );
        assert_eq!(AudioClip::new(vec![], 16_000), Err(CorpusError::EmptyClip));
    }

    #[test]
    fn source_tokens_round_trip() {
        for kind in [
            SourceKind::Real,
            SourceKind::SyntheticAligned,
            SourceKind::SyntheticUnaligned,
        ] {
            assert_eq!(kind.token().parse::<SourceKind>(), Ok(kind));
        }
        assert!("tts".parse::<SourceKind>().is_err());
    }
}
