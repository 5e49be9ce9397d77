use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// unused when std is in the build graph and its inherent float methods win
#[allow(unused_imports)]
use num_traits::Float;

/// Radix-2 power spectrum of real frames, zero-padded to a fixed size.
#[derive(Debug, Clone)]
pub struct PowerSpectrum {
    size: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
    bitrev: Vec<usize>,
}

impl PowerSpectrum {
    /// `size` must be a power of two.
    pub fn new(size: usize) -> Self {
        assert!(size.is_power_of_two(), "FFT size must be a power of two");
        let half = size / 2;
        let cos = (0..half)
            .map(|k| (2.0 * PI * k as f64 / size as f64).cos())
            .collect();
        let sin = (0..half)
            .map(|k| -(2.0 * PI * k as f64 / size as f64).sin())
            .collect();
        let bits = size.trailing_zeros();
        let bitrev = (0..size)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        Self {
            size,
            cos,
            sin,
            bitrev,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of non-negative frequency bins, `size / 2 + 1`.
    pub fn bins(&self) -> usize {
        self.size / 2 + 1
    }

    /// |X_k|^2 for k in 0..=size/2.
    pub fn compute(&self, frame: &[f64]) -> Vec<f64> {
        debug_assert!(frame.len() <= self.size);
        let n = self.size;
        let mut re = vec![0.0; n];
        let mut im = vec![0.0; n];
        for (i, &x) in frame.iter().enumerate() {
            re[self.bitrev[i]] = x;
        }
        let mut len = 2;
        while len <= n {
            let step = n / len;
            let half = len / 2;
            for start in (0..n).step_by(len) {
                for j in 0..half {
                    let (wr, wi) = (self.cos[j * step], self.sin[j * step]);
                    let (a, b) = (start + j, start + j + half);
                    let tr = re[b] * wr - im[b] * wi;
                    let ti = re[b] * wi + im[b] * wr;
                    re[b] = re[a] - tr;
                    im[b] = im[a] - ti;
                    re[a] += tr;
                    im[a] += ti;
                }
            }
            len <<= 1;
        }
        (0..self.bins())
            .map(|k| re[k] * re[k] + im[k] * im[k])
            .collect()
    }
}
