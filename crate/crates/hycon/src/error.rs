use std::io;
use std::path::{Path, PathBuf};

use hycon_core::confidence::ConfidenceError;
use hycon_core::dsp::DspError;
use hycon_core::textmetrics::TextError;
use hycon_core::trainer::TrainError;
use hycon_core::{CorpusError, NGramError};
use thiserror::Error;

use crate::arpa::ArpaError;
use crate::tables::TableError;
use crate::wav::WavError;

/// Process exit status of the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Validation = 1,
    Io = 2,
    Numeric = 3,
}

#[derive(Debug, Error)]
pub enum HyconError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Wav(#[from] WavError),
    #[error(transparent)]
    Arpa(#[from] ArpaError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Dsp(#[from] DspError),
    #[error(transparent)]
    Confidence(#[from] ConfidenceError),
    #[error(transparent)]
    NGram(#[from] NGramError),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn io_error(path: &Path, source: io::Error) -> HyconError {
    HyconError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl HyconError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            HyconError::Io { .. } => ExitStatus::Io,
            HyconError::Wav(WavError::Io { .. }) => ExitStatus::Io,
            HyconError::Train(TrainError::NumericFailure { .. } | TrainError::NonFiniteOutput) => {
                ExitStatus::Numeric
            }
            _ => ExitStatus::Validation,
        }
    }
}
