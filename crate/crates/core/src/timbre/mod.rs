//! Periodic waves in the time domain: FM synthesis, harmonic analysis by
//! projection, and 16-bit PCM WAV files.

mod analysis;
mod fm;
mod wav;

use thiserror::Error;

use crate::bessel::BesselError;

pub use analysis::{analyze_harmonics, analysis_window, AMPLITUDE_FLOOR, MIN_PERIODS};
pub use fm::{fm_sample, render_fm_path, render_fm_wave, AliasPolicy, FmParams, MAX_SAMPLES};
pub use wav::{decode_wav, encode_wav, read_wav, write_wav, WavError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TimbreError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("modulation index must be nonnegative and finite, got {0}")]
    InvalidIndex(f64),
    #[error("sample rate must be positive")]
    ZeroSampleRate,
    #[error("{name} {value} Hz is at or above the Nyquist frequency {nyquist} Hz")]
    AboveNyquist { name: &'static str, value: f64, nyquist: f64 },
    #[error("{count} samples exceeds the limit of {MAX_SAMPLES}")]
    TooManySamples { count: f64 },
    #[error("index grid must be nonempty and ascending")]
    InvalidIndexGrid,
    #[error("wave covers {periods:.2} fundamental periods, need at least {MIN_PERIODS}")]
    TooShort { periods: f64 },
    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("waves differ in sample rate or length")]
    ShapeMismatch,
    #[error(transparent)]
    Bessel(#[from] BesselError),
}

/// Audio sampled at a fixed rate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWave {
    sample_rate: u32,
    samples: Vec<f64>,
}

impl SampledWave {
    pub fn new(sample_rate: u32, samples: Vec<f64>) -> Result<Self, TimbreError> {
        if sample_rate == 0 {
            return Err(TimbreError::ZeroSampleRate);
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(TimbreError::NonFiniteSample { index });
        }
        Ok(SampledWave { sample_rate, samples })
    }

    /// Samples `f(k / rate)` for `k = 0..count`.
    pub fn from_fn(sample_rate: u32, count: usize, f: impl Fn(f64) -> f64) -> Result<Self, TimbreError> {
        let rate = f64::from(sample_rate);
        Self::new(sample_rate, (0..count).map(|k| f(k as f64 / rate)).collect())
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_sec(&self) -> f64 {
        self.samples.len() as f64 / f64::from(self.sample_rate)
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    /// Scales the wave down so its peak is 1, if the peak exceeds 1.
    pub fn normalized(mut self) -> Self {
        let peak = self.peak();
        if peak > 1.0 {
            self.samples.iter_mut().for_each(|s| *s /= peak);
        }
        self
    }

    /// Samplewise sum, without clipping.
    pub fn add(&self, other: &SampledWave) -> Result<SampledWave, TimbreError> {
        if self.sample_rate != other.sample_rate || self.len() != other.len() {
            return Err(TimbreError::ShapeMismatch);
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect();
        Ok(SampledWave { sample_rate: self.sample_rate, samples })
    }
}
