//! Data-quality scoring for mixed real and synthetic speech corpora.
//!
//! The crate is `no_std` and only needs an allocator. It contains the
//! numerical parts of the pipeline:
//!
//! - [`corpus`]: record types and per-source score availability.
//! - [`dsp`]: framing, FFT, MFCCs, perceptual features and pitch.
//! - [`confidence`]: static scores, fixed/learnable aggregation, entropy-based
//!   model confidence and the hybrid blend with its annealing schedule.
//! - [`textmetrics`]: Levenshtein alignment and word error rate.
//! - [`ngram`]: interpolated Kneser-Ney language model, N-best rescoring and
//!   lexicon-constrained transcript correction.
//! - [`trainer`]: a small softmax classifier trained with the
//!   confidence-weighted loss, and the label-noise experiment harness.
//!
//! File formats, WAV decoding and the command-line tool live in the `hycon`
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod confidence;
pub mod corpus;
pub mod dsp;
pub mod ngram;
pub mod textmetrics;
pub mod trainer;

pub use confidence::{
    AggregationWeights, AnnealSchedule, ConfidenceError, ConfidenceReport, StaticScores,
    WeightLogits,
};
pub use corpus::{AudioClip, CorpusError, CorpusRecord, SourceKind};
pub use dsp::{FrameConfig, MfccSequence, PerceptualFeatures};
pub use ngram::{NGramError, NGramModel};
pub use textmetrics::EditSummary;
