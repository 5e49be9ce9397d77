use alloc::vec::Vec;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use super::{hamming, windowed_rms, DspError, FrameConfig};
use crate::corpus::AudioClip;

pub const MIN_F0_HZ: f64 = 50.0;
pub const MAX_F0_HZ: f64 = 400.0;
/// Peak normalized autocorrelation needed for a voiced frame.
pub const VOICING_THRESHOLD: f64 = 0.5;
/// Windowed frame RMS below which a frame is unvoiced.
pub const RMS_GATE: f64 = 0.01;
/// The reported lag is the shortest local peak reaching this fraction of
/// the best correlation, which keeps period multiples from winning.
const PEAK_FRACTION: f64 = 0.9;

/// Per-frame F0 in Hz, `None` for unvoiced frames.
pub type PitchTrack = Vec<Option<f64>>;

fn normalized_autocorrelation(frame: &[f64], lag: usize) -> f64 {
    let n = frame.len() - lag;
    let (mut xy, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for t in 0..n {
        let (a, b) = (frame[t], frame[t + lag]);
        xy += a * b;
        xx += a * a;
        yy += b * b;
    }
    let denom = (xx * yy).sqrt();
    if denom > 0.0 {
        xy / denom
    } else {
        0.0
    }
}

fn frame_f0(frame: &[f64], min_lag: usize, max_lag: usize, sample_rate: f64) -> Option<f64> {
    if min_lag > max_lag {
        return None;
    }
    let r: Vec<f64> = (min_lag..=max_lag)
        .map(|lag| normalized_autocorrelation(frame, lag))
        .collect();
    let best = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if best < VOICING_THRESHOLD {
        return None;
    }
    let last = r.len() - 1;
    let chosen = (0..r.len()).find(|&i| {
        let left_ok = i == 0 || r[i] >= r[i - 1];
        let right_ok = i == last || r[i] >= r[i + 1];
        left_ok && right_ok && r[i] >= PEAK_FRACTION * best
    })?;
    Some(sample_rate / (min_lag + chosen) as f64)
}

/// Autocorrelation pitch tracker over lags covering 50-400 Hz.
///
/// Frames are the raw (un-emphasized, un-windowed) samples. A frame is voiced
/// when its peak normalized autocorrelation reaches 0.5 and its windowed RMS
/// reaches 0.01.
pub fn estimate_pitch_track(clip: &AudioClip, cfg: &FrameConfig) -> Result<PitchTrack, DspError> {
    cfg.check_clip(clip)?;
    let sr = clip.sample_rate_hz() as f64;
    let min_lag = (sr / MAX_F0_HZ).ceil() as usize;
    let max_lag = ((sr / MIN_F0_HZ).floor() as usize).min(cfg.frame_len - 1);
    let window = hamming(cfg.frame_len);
    Ok(cfg
        .frames(clip.samples())
        .map(|frame| {
            if windowed_rms(frame, &window) < RMS_GATE {
                None
            } else {
                frame_f0(frame, min_lag, max_lag, sr)
            }
        })
        .collect())
}

/// Population standard deviation of voiced F0 values; 0 with fewer than two
/// voiced frames.
pub fn pitch_variation(track: &PitchTrack) -> f64 {
    let voiced: Vec<f64> = track.iter().flatten().copied().collect();
    if voiced.len() < 2 {
        return 0.0;
    }
    let n = voiced.len() as f64;
    let mean = voiced.iter().sum::<f64>() / n;
    (voiced.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / n).sqrt()
}
