//! Time- and frequency-domain primitives: DFT, STFT, convolution, SNR mixing.

use std::cell::RefCell;
use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan_forward(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(len))
}

fn plan_inverse(len: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(len))
}

/// Unnormalized forward DFT: X[k] = sum_n x[n] e^{-j 2 pi k n / L}.
pub fn dft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::EmptyInput("dft"));
    }
    let mut buf = x.to_vec();
    plan_forward(buf.len()).process(&mut buf);
    Ok(buf)
}

/// Inverse DFT with 1/L scaling, so that idft(dft(x)) == x.
pub fn idft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::EmptyInput("idft"));
    }
    let mut buf = x.to_vec();
    plan_inverse(buf.len()).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(buf)
}

/// Analysis window shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    #[default]
    Hann,
    Rectangular,
}

impl WindowKind {
    /// Window coefficients of the given length (periodic Hann).
    pub fn coefficients(self, len: usize) -> Vec<f64> {
        match self {
            WindowKind::Rectangular => vec![1.0; len],
            WindowKind::Hann => (0..len)
                .map(|i| 0.5 - 0.5 * (std::f64::consts::TAU * i as f64 / len as f64).cos())
                .collect(),
        }
    }
}

/// STFT analysis parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StftConfig {
    pub window_length: usize,
    pub hop_length: usize,
    pub fft_size: usize,
    pub window: WindowKind,
}

impl Default for StftConfig {
    fn default() -> Self {
        Self {
            window_length: 400,
            hop_length: 160,
            fft_size: 512,
            window: WindowKind::Hann,
        }
    }
}

impl StftConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window_length == 0 || self.hop_length == 0 || self.fft_size == 0 {
            return Err(Error::InvalidConfig(
                "window_length, hop_length and fft_size must be > 0".into(),
            ));
        }
        if self.window_length > self.fft_size {
            return Err(Error::InvalidConfig(format!(
                "window_length {} exceeds fft_size {}",
                self.window_length, self.fft_size
            )));
        }
        if self.hop_length > self.window_length {
            return Err(Error::InvalidConfig(format!(
                "hop_length {} exceeds window_length {}",
                self.hop_length, self.window_length
            )));
        }
        Ok(())
    }

    /// One-sided bin count F = fft_size/2 + 1.
    pub fn n_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    /// Frame count for a signal of `len` samples (no centering/padding).
    pub fn n_frames(&self, len: usize) -> Result<usize> {
        if len < self.window_length {
            return Err(Error::SignalTooShort {
                len,
                min: self.window_length,
            });
        }
        Ok((len - self.window_length) / self.hop_length + 1)
    }

    /// Bin center frequency in Hz.
    pub fn bin_hz(&self, bin: usize, sample_rate: u32) -> f64 {
        bin as f64 * f64::from(sample_rate) / self.fft_size as f64
    }
}

/// One-sided complex STFT of a single channel: N frames x F bins.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrogram {
    pub frames: Array2<Complex64>,
    pub config: StftConfig,
    pub sample_rate: u32,
}

impl ComplexSpectrogram {
    pub fn n_frames(&self) -> usize {
        self.frames.nrows()
    }

    pub fn n_bins(&self) -> usize {
        self.frames.ncols()
    }
}

/// STFT with frame n covering samples [n*hop, n*hop + window_length),
/// windowed and zero-padded to fft_size; one-sided bins returned.
pub fn stft(channel: &[f64], config: &StftConfig, sample_rate: u32) -> Result<ComplexSpectrogram> {
    config.validate()?;
    let n_frames = config.n_frames(channel.len())?;
    let n_bins = config.n_bins();
    let window = config.window.coefficients(config.window_length);
    let fft = plan_forward(config.fft_size);

    let mut frames = Array2::zeros((n_frames, n_bins));
    let mut buf = vec![Complex64::default(); config.fft_size];
    for n in 0..n_frames {
        let start = n * config.hop_length;
        for (i, w) in window.iter().enumerate() {
            buf[i] = Complex64::new(channel[start + i] * w, 0.0);
        }
        for v in buf.iter_mut().skip(config.window_length) {
            *v = Complex64::default();
        }
        fft.process(&mut buf);
        for f in 0..n_bins {
            frames[(n, f)] = buf[f];
        }
    }
    Ok(ComplexSpectrogram {
        frames,
        config: *config,
        sample_rate,
    })
}

/// Output length selection for [`convolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvMode {
    /// Full linear convolution, length len(signal) + len(ir) - 1.
    Full,
    /// Head-aligned truncation to len(signal): y[t] = sum_k ir[k] x[t-k].
    /// Keeps the direct path of a causal impulse response time-aligned
    /// with the dry signal.
    Same,
}

/// Linear convolution; FFT-based for long inputs, direct sum otherwise.
pub fn convolve(signal: &[f64], ir: &[f64], mode: ConvMode) -> Result<Vec<f64>> {
    if signal.is_empty() || ir.is_empty() {
        return Err(Error::EmptyInput("convolve"));
    }
    let full_len = signal.len() + ir.len() - 1;
    let direct_cost = signal.len().saturating_mul(ir.len());
    let mut full = if direct_cost <= 1 << 14 {
        convolve_direct(signal, ir)
    } else {
        convolve_fft(signal, ir)
    };
    match mode {
        ConvMode::Full => {
            debug_assert_eq!(full.len(), full_len);
            Ok(full)
        }
        ConvMode::Same => {
            full.truncate(signal.len());
            Ok(full)
        }
    }
}

fn convolve_direct(signal: &[f64], ir: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; signal.len() + ir.len() - 1];
    for (i, s) in signal.iter().enumerate() {
        for (j, h) in ir.iter().enumerate() {
            out[i + j] += s * h;
        }
    }
    out
}

fn convolve_fft(signal: &[f64], ir: &[f64]) -> Vec<f64> {
    let full_len = signal.len() + ir.len() - 1;
    let fft_len = full_len.next_power_of_two();
    let fft = plan_forward(fft_len);
    let ifft = plan_inverse(fft_len);

    let mut a = vec![Complex64::default(); fft_len];
    let mut b = vec![Complex64::default(); fft_len];
    for (dst, &s) in a.iter_mut().zip(signal) {
        *dst = Complex64::new(s, 0.0);
    }
    for (dst, &h) in b.iter_mut().zip(ir) {
        *dst = Complex64::new(h, 0.0);
    }
    fft.process(&mut a);
    fft.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    ifft.process(&mut a);
    let scale = 1.0 / fft_len as f64;
    a.truncate(full_len);
    a.iter().map(|c| c.re * scale).collect()
}

/// Mix noise into a clean signal at a target SNR (dB). Noise is scaled by
/// g = sqrt(P_clean / (P_noise * 10^(snr/10))); powers are averaged over
/// channels.
pub fn mix_at_snr(clean: &AudioBuffer, noise: &AudioBuffer, snr_db: f64) -> Result<AudioBuffer> {
    if clean.len() != noise.len()
        || clean.channel_count() != noise.channel_count()
        || clean.sample_rate() != noise.sample_rate()
    {
        return Err(Error::shape(
            "mix_at_snr requires matching length/channels/sample rate",
            &[clean.channel_count(), clean.len()],
            &[noise.channel_count(), noise.len()],
        ));
    }
    if !snr_db.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "snr_db must be finite, got {snr_db}"
        )));
    }
    let p_clean = clean.power();
    let p_noise = noise.power();
    if p_clean <= 0.0 {
        return Err(Error::ZeroPower("clean signal in mix_at_snr"));
    }
    if p_noise <= 0.0 {
        return Err(Error::ZeroPower("noise signal in mix_at_snr"));
    }
    let gain = (p_clean / (p_noise * 10f64.powf(snr_db / 10.0))).sqrt();
    let channels = clean
        .channels()
        .iter()
        .zip(noise.channels())
        .map(|(c, n)| c.iter().zip(n).map(|(a, b)| a + gain * b).collect())
        .collect();
    AudioBuffer::new(channels, clean.sample_rate())
}
