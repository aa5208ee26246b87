//! Multi-channel PCM buffers and WAV file I/O.

use std::path::Path;

use crate::error::{Error, Result};

/// Multi-channel audio with a sample rate. All channels have equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    channels: Vec<Vec<f64>>,
    sample_rate: u32,
}

impl AudioBuffer {
    pub fn new(channels: Vec<Vec<f64>>, sample_rate: u32) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::EmptyInput("AudioBuffer needs at least one channel"));
        }
        if sample_rate == 0 {
            return Err(Error::InvalidConfig("sample_rate must be > 0".into()));
        }
        let len = channels[0].len();
        if channels.iter().any(|c| c.len() != len) {
            return Err(Error::InvalidConfig(
                "all channels must have equal length".into(),
            ));
        }
        Ok(Self {
            channels,
            sample_rate,
        })
    }

    pub fn mono(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        Self::new(vec![samples], sample_rate)
    }

    pub fn stereo(left: Vec<f64>, right: Vec<f64>, sample_rate: u32) -> Result<Self> {
        Self::new(vec![left, right], sample_rate)
    }

    pub fn zeros(channel_count: usize, len: usize, sample_rate: u32) -> Result<Self> {
        Self::new(vec![vec![0.0; len]; channel_count], sample_rate)
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn duration_seconds(&self) -> f64 {
        self.len() as f64 / f64::from(self.sample_rate)
    }

    pub fn channel(&self, idx: usize) -> &[f64] {
        &self.channels[idx]
    }

    pub fn channel_mut(&mut self, idx: usize) -> &mut Vec<f64> {
        &mut self.channels[idx]
    }

    pub fn channels(&self) -> &[Vec<f64>] {
        &self.channels
    }

    /// Mean power (mean squared sample) averaged over all channels.
    pub fn power(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let per_channel: f64 = self
            .channels
            .iter()
            .map(|c| c.iter().map(|s| s * s).sum::<f64>() / c.len() as f64)
            .sum();
        per_channel / self.channels.len() as f64
    }

    /// New buffer with channel order reversed (stereo: left/right swapped).
    pub fn swapped_channels(&self) -> AudioBuffer {
        let mut channels = self.channels.clone();
        channels.reverse();
        AudioBuffer {
            channels,
            sample_rate: self.sample_rate,
        }
    }

    /// Truncate all channels to `len` samples.
    pub fn truncate(&mut self, len: usize) {
        for c in &mut self.channels {
            c.truncate(len);
        }
    }
}

/// WAV sample encodings supported for output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavFormat {
    Pcm16,
    Float32,
}

/// Read a WAV file (PCM 16-bit or IEEE float-32). Samples are scaled to
/// [-1, 1] for PCM input.
pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioBuffer> {
    let reader = hound::WavReader::open(path)?;
    let spec = reader.spec();
    let n_channels = spec.channels as usize;
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, 16) => reader
            .into_samples::<i16>()
            .map(|s| s.map(|v| f64::from(v) / 32768.0))
            .collect::<std::result::Result<_, _>>()?,
        (hound::SampleFormat::Float, 32) => reader
            .into_samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()?,
        (fmt, bits) => {
            return Err(Error::InvalidConfig(format!(
                "unsupported wav encoding: {fmt:?} {bits}-bit"
            )))
        }
    };
    let frames = interleaved.len() / n_channels;
    let mut channels = vec![Vec::with_capacity(frames); n_channels];
    for (i, s) in interleaved.into_iter().enumerate() {
        channels[i % n_channels].push(s);
    }
    AudioBuffer::new(channels, spec.sample_rate)
}

/// Write a WAV file in the requested encoding. PCM output clamps to [-1, 1].
pub fn write_wav(path: impl AsRef<Path>, buffer: &AudioBuffer, format: WavFormat) -> Result<()> {
    let spec = hound::WavSpec {
        channels: buffer.channel_count() as u16,
        sample_rate: buffer.sample_rate(),
        bits_per_sample: match format {
            WavFormat::Pcm16 => 16,
            WavFormat::Float32 => 32,
        },
        sample_format: match format {
            WavFormat::Pcm16 => hound::SampleFormat::Int,
            WavFormat::Float32 => hound::SampleFormat::Float,
        },
    };
    let mut writer = hound::WavWriter::create(path, spec)?;
    for i in 0..buffer.len() {
        for ch in buffer.channels() {
            match format {
                WavFormat::Pcm16 => {
                    let v = (ch[i].clamp(-1.0, 1.0) * 32767.0).round() as i16;
                    writer.write_sample(v)?;
                }
                WavFormat::Float32 => writer.write_sample(ch[i] as f32)?,
            }
        }
    }
    writer.finalize()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_channels() {
        assert!(AudioBuffer::new(vec![vec![0.0; 4], vec![0.0; 3]], 16000).is_err());
    }

    #[test]
    fn rejects_zero_sample_rate() {
        assert!(AudioBuffer::mono(vec![0.0; 4], 0).is_err());
    }

    #[test]
    fn power_averages_channels() {
        let buf = AudioBuffer::stereo(vec![1.0, 1.0], vec![0.0, 0.0], 16000).unwrap();
        assert!((buf.power() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn wav_roundtrip_float32_stereo() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.wav");
        let buf = AudioBuffer::stereo(
            vec![0.1, -0.5, 0.25, 0.0],
            vec![0.9, -0.9, 0.5, -0.125],
            16000,
        )
        .unwrap();
        write_wav(&path, &buf, WavFormat::Float32).unwrap();
        let back = read_wav(&path).unwrap();
        assert_eq!(back.sample_rate(), 16000);
        assert_eq!(back.channel_count(), 2);
        for ch in 0..2 {
            for (a, b) in buf.channel(ch).iter().zip(back.channel(ch)) {
                assert!((a - b).abs() < 1e-7, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn wav_roundtrip_pcm16_mono() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.wav");
        let buf = AudioBuffer::mono(vec![0.0, 0.5, -0.5, 0.999], 16000).unwrap();
        write_wav(&path, &buf, WavFormat::Pcm16).unwrap();
        let back = read_wav(&path).unwrap();
        for (a, b) in buf.channel(0).iter().zip(back.channel(0)) {
            assert!((a - b).abs() < 1.0 / 32000.0, "{a} vs {b}");
        }
    }
}
