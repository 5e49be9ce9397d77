//! Short-time spectral analysis of [`AudioClip`]s.
//!
//! All analysis uses fixed-length frames taken every `hop` samples; a clip of
//! `N >= frame_len` samples yields `1 + (N - frame_len) / hop` frames and any
//! trailing partial frame is dropped.

mod fft;
mod mfcc;
mod pitch;

use alloc::vec::Vec;
use core::f64::consts::PI;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use thiserror::Error;

use crate::corpus::AudioClip;

pub use fft::PowerSpectrum;
pub use mfcc::{
    compute_mfcc, dct_ii, inverse_dct_ii, log_mel_energies, mel_filterbank, MfccSequence,
};
pub use pitch::{estimate_pitch_track, pitch_variation, PitchTrack, MAX_F0_HZ, MIN_F0_HZ};

/// Floor applied to mel energies before taking the log.
pub const LOG_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DspError {
    #[error("clip has {len} samples, fewer than one frame of {frame_len}")]
    ClipTooShort { len: usize, frame_len: usize },
    #[error("invalid frame configuration: {0}")]
    InvalidConfig(&'static str),
}

/// Framing and filterbank parameters. Defaults are the usual 25 ms / 10 ms
/// speech settings at 16 kHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameConfig {
    pub frame_len: usize,
    pub hop: usize,
    pub fft_size: usize,
    pub preemphasis: f64,
    pub n_mels: usize,
    pub n_mfcc: usize,
    pub rolloff_fraction: f64,
}

impl Default for FrameConfig {
    fn default() -> Self {
        Self {
            frame_len: 400,
            hop: 160,
            fft_size: 512,
            preemphasis: 0.97,
            n_mels: 26,
            n_mfcc: 13,
            rolloff_fraction: 0.85,
        }
    }
}

impl FrameConfig {
    pub fn validate(&self) -> Result<(), DspError> {
        if self.hop == 0 || self.hop > self.frame_len {
            return Err(DspError::InvalidConfig("need 0 < hop <= frame_len"));
        }
        if self.frame_len > self.fft_size {
            return Err(DspError::InvalidConfig("need frame_len <= fft_size"));
        }
        if !self.fft_size.is_power_of_two() {
            return Err(DspError::InvalidConfig("fft_size must be a power of two"));
        }
        if !(0.0..1.0).contains(&self.preemphasis) {
            return Err(DspError::InvalidConfig("need 0 <= preemphasis < 1"));
        }
        if !(self.rolloff_fraction > 0.0 && self.rolloff_fraction <= 1.0) {
            return Err(DspError::InvalidConfig("need 0 < rolloff_fraction <= 1"));
        }
        if self.n_mfcc == 0 || self.n_mfcc > self.n_mels {
            return Err(DspError::InvalidConfig("need 1 <= n_mfcc <= n_mels"));
        }
        Ok(())
    }

    /// Number of complete frames in a clip of `len` samples.
    pub fn frame_count(&self, len: usize) -> usize {
        if len < self.frame_len {
            0
        } else {
            1 + (len - self.frame_len) / self.hop
        }
    }

    pub(crate) fn check_clip(&self, clip: &AudioClip) -> Result<usize, DspError> {
        self.validate()?;
        let count = self.frame_count(clip.len());
        if count == 0 {
            return Err(DspError::ClipTooShort {
                len: clip.len(),
                frame_len: self.frame_len,
            });
        }
        Ok(count)
    }

    pub(crate) fn frames<'a>(&self, samples: &'a [f64]) -> impl Iterator<Item = &'a [f64]> + 'a {
        let (frame_len, hop) = (self.frame_len, self.hop);
        (0..self.frame_count(samples.len())).map(move |i| &samples[i * hop..i * hop + frame_len])
    }
}

/// Symmetric Hamming window.
pub fn hamming(len: usize) -> Vec<f64> {
    if len == 1 {
        return alloc::vec![1.0];
    }
    let denom = (len - 1) as f64;
    let mut w: Vec<f64> = (0..len)
        .map(|n| 0.54 - 0.46 * (2.0 * PI * n as f64 / denom).cos())
        .collect();
    // mirror so the window is exactly symmetric
    for n in 0..len / 2 {
        w[len - 1 - n] = w[n];
    }
    w
}

/// The five clip-level features entering the perceptual score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerceptualFeatures {
    /// Mean spectral centroid in Hz.
    pub f_sc: f64,
    /// Mean spectral rolloff in Hz.
    pub f_sr: f64,
    /// Mean over frames and coefficients of the MFCC matrix.
    pub f_mfcc: f64,
    /// Population standard deviation of voiced F0 in Hz.
    pub f_pv: f64,
    /// Mean frame RMS of the windowed signal.
    pub f_e: f64,
}

impl PerceptualFeatures {
    pub fn as_array(&self) -> [f64; 5] {
        [self.f_sc, self.f_sr, self.f_mfcc, self.f_pv, self.f_e]
    }

    pub fn from_array(v: [f64; 5]) -> Self {
        Self {
            f_sc: v[0],
            f_sr: v[1],
            f_mfcc: v[2],
            f_pv: v[3],
            f_e: v[4],
        }
    }
}

/// Per-frame spectral statistics of the windowed, un-emphasized signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameStats {
    pub centroid_hz: f64,
    pub rolloff_hz: f64,
    pub rms: f64,
}

pub(crate) fn windowed_rms(frame: &[f64], window: &[f64]) -> f64 {
    let sum: f64 = frame
        .iter()
        .zip(window)
        .map(|(x, w)| (x * w) * (x * w))
        .sum();
    (sum / frame.len() as f64).sqrt()
}

/// Centroid, rolloff and RMS for every frame of the clip.
pub fn frame_stats(clip: &AudioClip, cfg: &FrameConfig) -> Result<Vec<FrameStats>, DspError> {
    cfg.check_clip(clip)?;
    let window = hamming(cfg.frame_len);
    let fft = PowerSpectrum::new(cfg.fft_size);
    let bin_hz = clip.sample_rate_hz() as f64 / cfg.fft_size as f64;
    let mut buf = alloc::vec![0.0; cfg.frame_len];
    let stats = cfg
        .frames(clip.samples())
        .map(|frame| {
            for ((b, x), w) in buf.iter_mut().zip(frame).zip(&window) {
                *b = x * w;
            }
            let power = fft.compute(&buf);
            let total: f64 = power.iter().sum();
            let (centroid_hz, rolloff_hz) = if total > 0.0 {
                let weighted: f64 = power
                    .iter()
                    .enumerate()
                    .map(|(k, p)| k as f64 * bin_hz * p)
                    .sum();
                let target = cfg.rolloff_fraction * total;
                let mut cum = 0.0;
                let mut roll_bin = power.len() - 1;
                for (k, p) in power.iter().enumerate() {
                    cum += p;
                    if cum >= target {
                        roll_bin = k;
                        break;
                    }
                }
                (weighted / total, roll_bin as f64 * bin_hz)
            } else {
                (0.0, 0.0)
            };
            FrameStats {
                centroid_hz,
                rolloff_hz,
                rms: windowed_rms(frame, &window),
            }
        })
        .collect();
    Ok(stats)
}

/// Computes the five perceptual features of a clip.
///
/// Centroid, rolloff and energy come from Hamming-windowed frames of the raw
/// signal (zero-energy frames count as 0 Hz). The MFCC mean includes c0.
pub fn extract_perceptual_features(
    clip: &AudioClip,
    cfg: &FrameConfig,
) -> Result<PerceptualFeatures, DspError> {
    let stats = frame_stats(clip, cfg)?;
    let n = stats.len() as f64;
    let f_sc = stats.iter().map(|s| s.centroid_hz).sum::<f64>() / n;
    let f_sr = stats.iter().map(|s| s.rolloff_hz).sum::<f64>() / n;
    let f_e = stats.iter().map(|s| s.rms).sum::<f64>() / n;

    let mfcc = compute_mfcc(clip, cfg)?;
    let cells = (mfcc.frames().len() * cfg.n_mfcc) as f64;
    let f_mfcc = mfcc.frames().iter().flatten().sum::<f64>() / cells;

    let f_pv = pitch_variation(&estimate_pitch_track(clip, cfg)?);
    Ok(PerceptualFeatures {
        f_sc,
        f_sr,
        f_mfcc,
        f_pv,
        f_e,
    })
}
