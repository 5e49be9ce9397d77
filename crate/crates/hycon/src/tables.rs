//! Tab-separated formats read and written by the command-line tool.
//!
//! Numeric output columns use six decimal places. Input files are UTF-8;
//! blank lines are skipped where noted.

use std::collections::BTreeSet;

use hycon_core::confidence::ConfidenceReport;
use hycon_core::ngram::Hypothesis;
use hycon_core::trainer::{EpochLog, TrainSample};
use hycon_core::{PerceptualFeatures, StaticScores};
use thiserror::Error;

pub const FEATURES_HEADER: &str = "utt_id\tf_sc\tf_sr\tf_mfcc\tf_pv\tf_e";
pub const REPORT_HEADER: &str =
    "utt_id\ts_perceptual\ts_sim\ts_wer\tc_static\tc_model\tc_final\tlambda";
pub const TRAIN_LOG_HEADER: &str = "epoch\tloss\tlambda\talpha\tbeta\tgamma\tlr";
const SCORE_COLUMNS: [&str; 4] = ["label", "s_perc", "s_sim", "s_wer"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("{what}: malformed line {line}")]
    Malformed { what: &'static str, line: usize },
    #[error("{what}: duplicate id `{id}`")]
    DuplicateId { what: &'static str, id: String },
    #[error("{what}: no entries")]
    Empty { what: &'static str },
}

fn malformed(what: &'static str, line: usize) -> TableError {
    TableError::Malformed { what, line }
}

fn number(s: &str, what: &'static str, line: usize) -> Result<f64, TableError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(malformed(what, line)),
    }
}

fn check_unique<'a>(
    seen: &mut BTreeSet<&'a str>,
    id: &'a str,
    what: &'static str,
) -> Result<(), TableError> {
    if seen.insert(id) {
        Ok(())
    } else {
        Err(TableError::DuplicateId {
            what,
            id: id.to_string(),
        })
    }
}

/// Non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

pub fn format_features(rows: &[(String, PerceptualFeatures)]) -> String {
    let mut out = format!("{FEATURES_HEADER}\n");
    for (id, f) in rows {
        out.push_str(id);
        for v in f.as_array() {
            out.push_str(&format!("\t{v:.6}"));
        }
        out.push('\n');
    }
    out
}

pub fn parse_features(text: &str) -> Result<Vec<(String, PerceptualFeatures)>, TableError> {
    const WHAT: &str = "features";
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, h)) if h == FEATURES_HEADER => {}
        Some((no, _)) => return Err(malformed(WHAT, no)),
        None => return Err(TableError::Empty { what: WHAT }),
    }
    let mut rows = Vec::new();
    for (no, line) in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 || fields[0].is_empty() {
            return Err(malformed(WHAT, no));
        }
        let mut v = [0.0; 5];
        for (slot, f) in v.iter_mut().zip(&fields[1..]) {
            *slot = number(f, WHAT, no)?;
        }
        rows.push((fields[0].to_string(), PerceptualFeatures::from_array(v)));
    }
    let mut seen = BTreeSet::new();
    for (id, _) in &rows {
        check_unique(&mut seen, id, WHAT)?;
    }
    Ok(rows)
}

pub fn format_report(reports: &[ConfidenceReport]) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for r in reports {
        out.push_str(&format!(
            "{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\n",
            r.utt_id,
            r.scores.s_perceptual,
            r.scores.s_sim,
            r.scores.s_wer,
            r.c_static,
            r.c_model,
            r.c_final,
            r.lambda_used
        ));
    }
    out
}

/// `utt_id<TAB>words`, one utterance per line, in file order.
pub fn parse_transcripts(text: &str) -> Result<Vec<(String, Vec<String>)>, TableError> {
    const WHAT: &str = "transcripts";
    let mut rows = Vec::new();
    for (no, line) in content_lines(text) {
        let (id, words) = line.split_once('\t').ok_or(malformed(WHAT, no))?;
        if id.is_empty() || words.contains('\t') {
            return Err(malformed(WHAT, no));
        }
        rows.push((
            id.to_string(),
            words.split_whitespace().map(str::to_string).collect(),
        ));
    }
    let mut seen = BTreeSet::new();
    for (id, _) in &rows {
        check_unique(&mut seen, id, WHAT)?;
    }
    Ok(rows)
}

pub fn format_transcripts(rows: &[(String, Vec<String>)]) -> String {
    rows.iter()
        .map(|(id, words)| format!("{id}\t{}\n", words.join(" ")))
        .collect()
}

/// One frame per line, tab-separated class probabilities.
pub fn parse_posteriors(text: &str) -> Result<Vec<Vec<f64>>, TableError> {
    const WHAT: &str = "posteriors";
    let frames = content_lines(text)
        .map(|(no, line)| {
            line.split('\t')
                .map(|v| number(v, WHAT, no))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if frames.is_empty() {
        return Err(TableError::Empty { what: WHAT });
    }
    Ok(frames)
}

/// `utt_id<TAB>acoustic<TAB>words`; hypotheses are grouped per utterance in
/// order of first appearance.
pub fn parse_nbest(text: &str) -> Result<Vec<(String, Vec<Hypothesis>)>, TableError> {
    const WHAT: &str = "nbest";
    let mut groups: Vec<(String, Vec<Hypothesis>)> = Vec::new();
    for (no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, score, words] = fields[..] else {
            return Err(malformed(WHAT, no));
        };
        let words: Vec<String> = words.split_whitespace().map(str::to_string).collect();
        let hyp =
            Hypothesis::new(words, number(score, WHAT, no)?).map_err(|_| malformed(WHAT, no))?;
        match groups.iter_mut().find(|(g, _)| g == id) {
            Some((_, list)) => list.push(hyp),
            None => groups.push((id.to_string(), vec![hyp])),
        }
    }
    Ok(groups)
}

/// One word per line.
pub fn parse_lexicon(text: &str) -> Result<Vec<String>, TableError> {
    const WHAT: &str = "lexicon";
    let mut words = Vec::new();
    for (no, line) in content_lines(text) {
        let w = line.trim();
        if w.contains(char::is_whitespace) {
            return Err(malformed(WHAT, no));
        }
        words.push(w.to_string());
    }
    if words.is_empty() {
        return Err(TableError::Empty { what: WHAT });
    }
    Ok(words)
}

pub fn format_train_log(log: &[EpochLog]) -> String {
    let mut out = format!("{TRAIN_LOG_HEADER}\n");
    for r in log {
        out.push_str(&format!(
            "{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6e}\n",
            r.epoch, r.loss, r.lambda, r.alpha, r.beta, r.gamma, r.lr
        ));
    }
    out
}

/// Header `x0 .. x{D-1} label s_perc s_sim s_wer`, then one sample per line.
/// Values are written with Rust's shortest round-trip formatting so a
/// reloaded snapshot is bit-identical.
pub fn format_dataset(samples: &[TrainSample]) -> String {
    let dims = samples.first().map_or(0, |s| s.features.len());
    let mut header: Vec<String> = (0..dims).map(|j| format!("x{j}")).collect();
    header.extend(SCORE_COLUMNS.iter().map(|s| s.to_string()));
    let mut out = header.join("\t");
    out.push('\n');
    for s in samples {
        for x in &s.features {
            out.push_str(&format!("{x}\t"));
        }
        let sc = s.static_scores;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            s.label, sc.s_perceptual, sc.s_sim, sc.s_wer
        ));
    }
    out
}

pub fn parse_dataset(text: &str) -> Result<Vec<TrainSample>, TableError> {
    const WHAT: &str = "dataset";
    let mut lines = content_lines(text);
    let (hno, header) = lines.next().ok_or(TableError::Empty { what: WHAT })?;
    let cols: Vec<&str> = header.split('\t').collect();
    let dims = cols
        .len()
        .checked_sub(4)
        .filter(|d| *d > 0)
        .ok_or(malformed(WHAT, hno))?;
    let names_ok = cols[..dims]
        .iter()
        .enumerate()
        .all(|(j, c)| *c == format!("x{j}"))
        && cols[dims..] == SCORE_COLUMNS;
    if !names_ok {
        return Err(malformed(WHAT, hno));
    }
    let mut samples = Vec::new();
    for (no, line) in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != dims + 4 {
            return Err(malformed(WHAT, no));
        }
        let features = fields[..dims]
            .iter()
            .map(|f| number(f, WHAT, no))
            .collect::<Result<Vec<_>, _>>()?;
        let label: usize = fields[dims]
            .trim()
            .parse()
            .map_err(|_| malformed(WHAT, no))?;
        let s: Vec<f64> = fields[dims + 1..]
            .iter()
            .map(|f| number(f, WHAT, no))
            .collect::<Result<_, _>>()?;
        let static_scores = StaticScores::new(s[0], s[1], s[2]).map_err(|_| malformed(WHAT, no))?;
        samples.push(TrainSample {
            features,
            label,
            static_scores,
        });
    }
    if samples.is_empty() {
        return Err(TableError::Empty { what: WHAT });
    }
    Ok(samples)
}
