//! ARPA text serialization of n-gram models.
//!
//! Log10 values are printed with exactly seven significant digits in
//! positional notation. Every order below the highest carries a backoff
//! column, and entries are sorted by their token sequence.

use std::fs;
use std::path::Path;

use hycon_core::ngram::{NGramEntry, NGramModel};
use thiserror::Error;

use crate::error::{io_error, HyconError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArpaError {
    #[error("malformed ARPA file at line {0}")]
    MalformedArpa(usize),
    #[error("ARPA file has no section for order {0}")]
    MissingSection(usize),
    #[error("ARPA file is inconsistent: {0}")]
    Inconsistent(String),
}

/// Seven significant digits, positional; `-0` is printed as `0`.
pub fn format_log10(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    let sci = format!("{v:.6e}");
    let exponent: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (6 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn dump_arpa(model: &NGramModel) -> String {
    let n = model.order();
    let mut out = String::from("\\data\\\n");
    for k in 1..=n {
        out.push_str(&format!("ngram {k}={}\n", model.count(k)));
    }
    for k in 1..=n {
        out.push_str(&format!("\n\\{k}-grams:\n"));
        for (tokens, e) in model.sorted_entries(k) {
            out.push_str(&format_log10(e.log10_prob));
            out.push('\t');
            out.push_str(&tokens.join(" "));
            if k < n {
                out.push('\t');
                out.push_str(&format_log10(e.log10_backoff.unwrap_or(0.0)));
            }
            out.push('\n');
        }
    }
    out.push_str("\n\\end\\\n");
    out
}

fn parse_value(s: &str, line: usize) -> Result<f64, ArpaError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| ArpaError::MalformedArpa(line))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ArpaError::MalformedArpa(line))
    }
}

/// Parses ARPA text. Blank lines are ignored; a missing backoff below the
/// highest order reads as 0.
pub fn parse_arpa(text: &str) -> Result<NGramModel, ArpaError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    match lines.next() {
        Some((_, "\\data\\")) => {}
        Some((no, _)) => return Err(ArpaError::MalformedArpa(no)),
        None => return Err(ArpaError::MalformedArpa(1)),
    }

    let mut counts: Vec<usize> = Vec::new();
    let mut pending = None;
    for (no, line) in lines.by_ref() {
        if let Some(rest) = line.strip_prefix("ngram ") {
            let (k, c) = rest.split_once('=').ok_or(ArpaError::MalformedArpa(no))?;
            let k: usize = k.trim().parse().map_err(|_| ArpaError::MalformedArpa(no))?;
            let c: usize = c.trim().parse().map_err(|_| ArpaError::MalformedArpa(no))?;
            if k != counts.len() + 1 {
                return Err(ArpaError::MalformedArpa(no));
            }
            counts.push(c);
        } else {
            pending = Some((no, line));
            break;
        }
    }
    let n = counts.len();
    if n == 0 {
        return Err(ArpaError::MissingSection(1));
    }

    let mut orders: Vec<Vec<(Vec<String>, NGramEntry)>> = vec![Vec::new(); n];
    let mut current: Option<usize> = None;
    let mut seen = vec![false; n];
    let mut ended = false;
    let mut last_line = pending.map_or(1, |(no, _)| no);
    for (no, line) in pending.into_iter().chain(lines) {
        last_line = no;
        if ended {
            return Err(ArpaError::MalformedArpa(no));
        }
        if line == "\\end\\" {
            ended = true;
            continue;
        }
        if let Some(k) = line
            .strip_prefix('\\')
            .and_then(|l| l.strip_suffix("-grams:"))
        {
            let k: usize = k.parse().map_err(|_| ArpaError::MalformedArpa(no))?;
            if k == 0 || k > n || seen[k - 1] {
                return Err(ArpaError::MalformedArpa(no));
            }
            seen[k - 1] = true;
            current = Some(k);
            continue;
        }
        let k = current.ok_or(ArpaError::MalformedArpa(no))?;
        let fields: Vec<&str> = line.split('\t').collect();
        let (prob, tokens, backoff) = match fields[..] {
            [p, t] => (p, t, None),
            [p, t, b] => (p, t, Some(b)),
            _ => return Err(ArpaError::MalformedArpa(no)),
        };
        if backoff.is_some() && k == n {
            return Err(ArpaError::MalformedArpa(no));
        }
        let tokens: Vec<String> = tokens.split(' ').map(str::to_string).collect();
        if tokens.len() != k || tokens.iter().any(String::is_empty) {
            return Err(ArpaError::MalformedArpa(no));
        }
        let log10_prob = parse_value(prob, no)?;
        let log10_backoff = if k < n {
            Some(backoff.map_or(Ok(0.0), |b| parse_value(b, no))?)
        } else {
            None
        };
        orders[k - 1].push((
            tokens,
            NGramEntry {
                log10_prob,
                log10_backoff,
            },
        ));
    }
    if !ended {
        return Err(ArpaError::MalformedArpa(last_line));
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(ArpaError::MissingSection(k + 1));
    }
    for (k, (list, &declared)) in orders.iter().zip(&counts).enumerate() {
        if list.len() != declared {
            return Err(ArpaError::Inconsistent(format!(
                "order {} declares {declared} entries but lists {}",
                k + 1,
                list.len()
            )));
        }
    }
    NGramModel::from_entries(orders).map_err(|e| ArpaError::Inconsistent(e.to_string()))
}

pub fn load_arpa(path: &Path) -> Result<NGramModel, HyconError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(parse_arpa(&text)?)
}

pub fn write_arpa(path: &Path, model: &NGramModel) -> Result<(), HyconError> {
    fs::write(path, dump_arpa(model)).map_err(|e| io_error(path, e))
}
