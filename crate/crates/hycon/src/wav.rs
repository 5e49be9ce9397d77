//! 16 kHz, 16-bit, mono PCM WAV input.

use std::fs::File;
use std::io::{self, BufReader, Read, Seek, SeekFrom};
use std::path::{Path, PathBuf};

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};
use hycon_core::corpus::REQUIRED_SAMPLE_RATE;
use hycon_core::AudioClip;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WavError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: not a RIFF/WAVE file", .0.display())]
    NotRiff(PathBuf),
    #[error("{}: unsupported format (tag {tag}, {bits} bits, {channels} channels); need 16-bit mono PCM", path.display())]
    UnsupportedFormat {
        path: PathBuf,
        tag: u16,
        bits: u16,
        channels: u16,
    },
    #[error("{}: unsupported sample rate {rate} Hz; need 16000", path.display())]
    UnsupportedRate { path: PathBuf, rate: u32 },
    #[error("{}: data chunk is truncated or malformed", .0.display())]
    TruncatedData(PathBuf),
}

fn has_riff_header(file: &mut File) -> io::Result<bool> {
    let mut head = [0u8; 12];
    let ok = match file.read_exact(&mut head) {
        Ok(()) => &head[0..4] == b"RIFF" && &head[8..12] == b"WAVE",
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => false,
        Err(e) => return Err(e),
    };
    file.seek(SeekFrom::Start(0))?;
    Ok(ok)
}

/// Decodes a WAV file; samples are `value / 32768`, so they lie in [-1, 1).
pub fn decode_wav(path: &Path) -> Result<AudioClip, WavError> {
    let io_err = |source| WavError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = File::open(path).map_err(io_err)?;
    if !has_riff_header(&mut file).map_err(io_err)? {
        return Err(WavError::NotRiff(path.to_path_buf()));
    }
    let reader = WavReader::new(BufReader::new(file)).map_err(|e| match e {
        hound::Error::IoError(e) if e.kind() == io::ErrorKind::UnexpectedEof => {
            WavError::TruncatedData(path.to_path_buf())
        }
        hound::Error::IoError(e) => io_err(e),
        _ => WavError::TruncatedData(path.to_path_buf()),
    })?;
    let spec = reader.spec();
    let tag = match spec.sample_format {
        SampleFormat::Int => 1,
        SampleFormat::Float => 3,
    };
    if tag != 1 || spec.bits_per_sample != 16 || spec.channels != 1 {
        return Err(WavError::UnsupportedFormat {
            path: path.to_path_buf(),
            tag,
            bits: spec.bits_per_sample,
            channels: spec.channels,
        });
    }
    if spec.sample_rate != REQUIRED_SAMPLE_RATE {
        return Err(WavError::UnsupportedRate {
            path: path.to_path_buf(),
            rate: spec.sample_rate,
        });
    }
    let samples = reader
        .into_samples::<i16>()
        .map(|s| s.map(|v| f64::from(v) / 32768.0))
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|_| WavError::TruncatedData(path.to_path_buf()))?;
    AudioClip::new(samples, spec.sample_rate)
        .map_err(|_| WavError::TruncatedData(path.to_path_buf()))
}

/// Writes 16-bit mono PCM. Samples are scaled by 32768 and clamped.
pub fn write_wav(path: &Path, samples: &[f64], sample_rate: u32) -> Result<(), WavError> {
    let spec = WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 16,
        sample_format: SampleFormat::Int,
    };
    let to_io = |e: hound::Error| WavError::Io {
        path: path.to_path_buf(),
        source: match e {
            hound::Error::IoError(e) => e,
            other => io::Error::other(other.to_string()),
        },
    };
    let mut writer = WavWriter::create(path, spec).map_err(to_io)?;
    for &s in samples {
        let v = (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        writer.write_sample(v).map_err(to_io)?;
    }
    writer.finalize().map_err(to_io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silence_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("z.wav");
        write_wav(&p, &[0.0; 160], 16_000).unwrap();
        let clip = decode_wav(&p).unwrap();
        assert_eq!(clip.samples(), &[0.0; 160][..]);
    }

    #[test]
    fn full_scale_sample() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("max.wav");
        write_wav(&p, &[32767.0 / 32768.0, -1.0], 16_000).unwrap();
        let clip = decode_wav(&p).unwrap();
        assert_eq!(clip.samples(), &[32767.0 / 32768.0, -1.0]);
    }

    #[test]
    fn rejections() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("cd.wav");
        write_wav(&p, &[0.1; 10], 44_100).unwrap();
        assert!(matches!(
            decode_wav(&p),
            Err(WavError::UnsupportedRate { rate: 44_100, .. })
        ));

        let junk = dir.path().join("junk.wav");
        std::fs::write(&junk, b"not a wave file at all").unwrap();
        assert!(matches!(decode_wav(&junk), Err(WavError::NotRiff(_))));

        let stereo = dir.path().join("stereo.wav");
        let spec = WavSpec {
            channels: 2,
            sample_rate: 16_000,
            bits_per_sample: 16,
            sample_format: SampleFormat::Int,
        };
        let mut w = WavWriter::create(&stereo, spec).unwrap();
        w.write_sample(0i16).unwrap();
        w.write_sample(0i16).unwrap();
        w.finalize().unwrap();
        assert!(matches!(
            decode_wav(&stereo),
            Err(WavError::UnsupportedFormat { channels: 2, .. })
        ));

        let short = dir.path().join("short.wav");
        write_wav(&short, &[0.2; 100], 16_000).unwrap();
        let bytes = std::fs::read(&short).unwrap();
        std::fs::write(&short, &bytes[..bytes.len() - 51]).unwrap();
        assert!(matches!(
            decode_wav(&short),
            Err(WavError::TruncatedData(_))
        ));

        assert!(matches!(
            decode_wav(&dir.path().join("missing.wav")),
            Err(WavError::Io { .. })
        ));
    }
}
