use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

use super::{hamming, DspError, FrameConfig, PowerSpectrum, LOG_FLOOR};
use crate::corpus::AudioClip;

/// A `T x n_mfcc` cepstral matrix, one row per frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MfccSequence {
    frames: Vec<Vec<f64>>,
    config: FrameConfig,
}

impl MfccSequence {
    /// Wraps precomputed rows; every row must have `config.n_mfcc` entries.
    pub fn from_frames(frames: Vec<Vec<f64>>, config: FrameConfig) -> Option<Self> {
        if frames.is_empty() || frames.iter().any(|f| f.len() != config.n_mfcc) {
            return None;
        }
        Some(Self { frames, config })
    }

    pub fn frames(&self) -> &[Vec<f64>] {
        &self.frames
    }

    pub fn config(&self) -> &FrameConfig {
        &self.config
    }

    pub fn n_mfcc(&self) -> usize {
        self.config.n_mfcc
    }
}

pub fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

pub fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10.0.powf(mel / 2595.0) - 1.0)
}

/// Triangular filters equally spaced on the mel scale from 0 Hz to Nyquist,
/// evaluated at the FFT bin centre frequencies. Returns `n_mels` rows of
/// `fft_size / 2 + 1` weights.
pub fn mel_filterbank(n_mels: usize, fft_size: usize, sample_rate: f64) -> Vec<Vec<f64>> {
    let nyquist = sample_rate / 2.0;
    let top = hz_to_mel(nyquist);
    let edges: Vec<f64> = (0..n_mels + 2)
        .map(|i| mel_to_hz(top * i as f64 / (n_mels + 1) as f64))
        .collect();
    let bins = fft_size / 2 + 1;
    let bin_hz = sample_rate / fft_size as f64;
    (0..n_mels)
        .map(|m| {
            let (lo, mid, hi) = (edges[m], edges[m + 1], edges[m + 2]);
            (0..bins)
                .map(|k| {
                    let f = k as f64 * bin_hz;
                    if f > lo && f < mid {
                        (f - lo) / (mid - lo)
                    } else if f >= mid && f < hi {
                        (hi - f) / (hi - mid)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// Orthonormal DCT-II.
pub fn dct_ii(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    (0..x.len())
        .map(|k| {
            let scale = if k == 0 {
                (1.0 / n).sqrt()
            } else {
                (2.0 / n).sqrt()
            };
            scale
                * x.iter()
                    .enumerate()
                    .map(|(i, v)| v * (PI * k as f64 * (2 * i + 1) as f64 / (2.0 * n)).cos())
                    .sum::<f64>()
        })
        .collect()
}

/// Inverse of [`dct_ii`] (orthonormal DCT-III). Missing trailing
/// coefficients are treated as zero.
pub fn inverse_dct_ii(coeffs: &[f64], n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..n)
        .map(|i| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let scale = if k == 0 {
                        (1.0 / nf).sqrt()
                    } else {
                        (2.0 / nf).sqrt()
                    };
                    scale * c * (PI * k as f64 * (2 * i + 1) as f64 / (2.0 * nf)).cos()
                })
                .sum()
        })
        .collect()
}

/// Log mel-filterbank energies of the pre-emphasized, Hamming-windowed
/// frames, floored at [`LOG_FLOOR`] before the log.
pub fn log_mel_energies(clip: &AudioClip, cfg: &FrameConfig) -> Result<Vec<Vec<f64>>, DspError> {
    cfg.check_clip(clip)?;
    let x = clip.samples();
    let mut emphasized = Vec::with_capacity(x.len());
    emphasized.push(x[0]);
    emphasized.extend(x.windows(2).map(|w| w[1] - cfg.preemphasis * w[0]));

    let window = hamming(cfg.frame_len);
    let fft = PowerSpectrum::new(cfg.fft_size);
    let bank = mel_filterbank(cfg.n_mels, cfg.fft_size, clip.sample_rate_hz() as f64);
    let mut buf = vec![0.0; cfg.frame_len];
    Ok(cfg
        .frames(&emphasized)
        .map(|frame| {
            for ((b, s), w) in buf.iter_mut().zip(frame).zip(&window) {
                *b = s * w;
            }
            let power = fft.compute(&buf);
            bank.iter()
                .map(|filter| {
                    let e: f64 = filter.iter().zip(&power).map(|(w, p)| w * p).sum();
                    e.max(LOG_FLOOR).ln()
                })
                .collect()
        })
        .collect())
}

/// MFCCs with c0 included: the first `n_mfcc` orthonormal DCT-II
/// coefficients of each frame's log mel energies.
pub fn compute_mfcc(clip: &AudioClip, cfg: &FrameConfig) -> Result<MfccSequence, DspError> {
    let frames = log_mel_energies(clip, cfg)?
        .iter()
        .map(|logmel| {
            let mut c = dct_ii(logmel);
            c.truncate(cfg.n_mfcc);
            c
        })
        .collect();
    Ok(MfccSequence {
        frames,
        config: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clip(samples: Vec<f64>) -> AudioClip {
        AudioClip::new(samples, 16_000).unwrap()
    }

    #[test]
    fn silence_gives_floor_energies_and_identical_frames() {
        let cfg = FrameConfig::default();
        let silent = clip(vec![0.0; 4000]);
        let logmel = log_mel_energies(&silent, &cfg).unwrap();
        let floor = LOG_FLOOR.ln();
        assert!(logmel.iter().flatten().all(|&v| v == floor));
        let mfcc = compute_mfcc(&silent, &cfg).unwrap();
        assert!(mfcc.frames().windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn full_dct_inverts_to_log_mel() {
        let cfg = FrameConfig {
            n_mfcc: 26,
            ..FrameConfig::default()
        };
        let samples: Vec<f64> = (0..3200)
            .map(|i| (i as f64 * 0.37).sin() * 0.3 + (i as f64 * 0.011).cos() * 0.2)
            .collect();
        let c = clip(samples);
        let logmel = log_mel_energies(&c, &cfg).unwrap();
        let mfcc = compute_mfcc(&c, &cfg).unwrap();
        for (row, coeffs) in logmel.iter().zip(mfcc.frames()) {
            let back = inverse_dct_ii(coeffs, cfg.n_mels);
            for (a, b) in row.iter().zip(&back) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn frame_count_for_one_second() {
        let samples: Vec<f64> = (0..16_000)
            .map(|i| (2.0 * PI * 440.0 * i as f64 / 16_000.0).sin())
            .collect();
        let mfcc = compute_mfcc(&clip(samples), &FrameConfig::default()).unwrap();
        // enumerate frame starts directly
        let starts = (0..)
            .map(|i| i * 160)
            .take_while(|s| s + 400 <= 16_000)
            .count();
        assert_eq!(starts, 98);
        assert_eq!(mfcc.frames().len(), starts);
        assert!(mfcc.frames().iter().all(|f| f.len() == 13));
    }

    #[test]
    fn filterbank_rows_are_nonempty_and_bounded() {
        let bank = mel_filterbank(26, 512, 16_000.0);
        assert_eq!(bank.len(), 26);
        for row in &bank {
            assert_eq!(row.len(), 257);
            assert!(row.iter().any(|&w| w > 0.0));
            assert!(row.iter().all(|&w| (0.0..=1.0).contains(&w)));
        }
    }

    #[test]
    fn mel_scale_round_trip() {
        for hz in [0.0, 100.0, 700.0, 4000.0, 8000.0] {
            assert!((mel_to_hz(hz_to_mel(hz)) - hz).abs() < 1e-9);
        }
        assert!((hz_to_mel(700.0) - 2595.0 * 2f64.log10()).abs() < 1e-12);
    }
}
