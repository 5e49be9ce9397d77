//! Tab-separated corpus manifest.
//!
//! ```text
//! utt_id<TAB>source<TAB>audio_path<TAB>transcript<TAB>aligned_ref_id
//! ```
//!
//! The header line is required. Transcripts are space-separated words and an
//! empty last field means "no alignment".

use std::fs;
use std::path::Path;

use hycon_core::corpus::validate_records;
use hycon_core::{CorpusError, CorpusRecord, SourceKind};

use crate::error::{io_error, HyconError};

pub const HEADER: &str = "utt_id\tsource\taudio_path\ttranscript\taligned_ref_id";

/// Parses manifest text; line numbers in errors are 1-based and count the
/// header.
pub fn parse_manifest(text: &str) -> Result<Vec<CorpusRecord>, CorpusError> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(CorpusError::MalformedLine(1));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let fields: Vec<&str> = line.split('\t').collect();
        let [utt_id, source, audio_path, transcript, aligned] = fields[..] else {
            return Err(CorpusError::MalformedLine(line_no));
        };
        if utt_id.is_empty() || audio_path.is_empty() || utt_id.contains(char::is_whitespace) {
            return Err(CorpusError::MalformedLine(line_no));
        }
        records.push(CorpusRecord {
            utt_id: utt_id.to_string(),
            source: source.parse::<SourceKind>()?,
            audio_path: audio_path.to_string(),
            transcript: transcript.split_whitespace().map(str::to_string).collect(),
            aligned_ref_id: (!aligned.is_empty()).then(|| aligned.to_string()),
        });
    }
    validate_records(&records)?;
    Ok(records)
}

pub fn format_manifest(records: &[CorpusRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.utt_id,
            r.source,
            r.audio_path,
            r.transcript_line(),
            r.aligned_ref_id.as_deref().unwrap_or("")
        ));
    }
    out
}

pub fn load_manifest(path: &Path) -> Result<Vec<CorpusRecord>, HyconError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(parse_manifest(&text)?)
}

pub fn write_manifest(path: &Path, records: &[CorpusRecord]) -> Result<(), HyconError> {
    validate_records(records)?;
    fs::write(path, format_manifest(records)).map_err(|e| io_error(path, e))
}
