use std::f64::consts::TAU;

use super::{SampledWave, TimbreError};
use crate::bessel::{bessel_row, DEFAULT_TAIL_TOLERANCE};

/// Largest wave `render_fm_wave` and `render_fm_path` will produce.
pub const MAX_SAMPLES: f64 = 1e8;

/// Carrier, modulator and modulation index of a two-operator FM tone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FmParams {
    pub carrier_hz: f64,
    pub modulator_hz: f64,
    pub modulation_index: f64,
}

impl FmParams {
    pub fn new(carrier_hz: f64, modulator_hz: f64, modulation_index: f64) -> Result<Self, TimbreError> {
        check_positive("carrier frequency", carrier_hz)?;
        check_positive("modulator frequency", modulator_hz)?;
        if !(modulation_index >= 0.0 && modulation_index.is_finite()) {
            return Err(TimbreError::InvalidIndex(modulation_index));
        }
        Ok(FmParams { carrier_hz, modulator_hz, modulation_index })
    }

    /// `fc + N fm` with `N` the smallest order meeting the default energy
    /// bound.
    pub fn highest_sideband_hz(&self) -> Result<f64, TimbreError> {
        let n = bessel_row(self.modulation_index, DEFAULT_TAIL_TOLERANCE)?.energy_order();
        Ok(self.carrier_hz + n as f64 * self.modulator_hz)
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<(), TimbreError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(TimbreError::NonPositive { name, value })
    }
}

/// `sin(2 pi fc t + I sin(2 pi fm t))`.
pub fn fm_sample(params: &FmParams, t: f64) -> f64 {
    (TAU * params.carrier_hz * t + params.modulation_index * (TAU * params.modulator_hz * t).sin()).sin()
}

/// What to do when significant sidebands reach the Nyquist frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AliasPolicy {
    /// Fail unless every sideband kept by the energy bound is below Nyquist.
    #[default]
    Reject,
    /// Only the carrier and modulator themselves must be below Nyquist.
    Allow,
}

fn sample_count(duration_sec: f64, sample_rate: u32) -> Result<usize, TimbreError> {
    check_positive("duration", duration_sec)?;
    if sample_rate == 0 {
        return Err(TimbreError::ZeroSampleRate);
    }
    let count = (duration_sec * f64::from(sample_rate)).round();
    if count > MAX_SAMPLES {
        return Err(TimbreError::TooManySamples { count });
    }
    Ok(count as usize)
}

fn check_alias(params: &FmParams, sample_rate: u32, policy: AliasPolicy) -> Result<(), TimbreError> {
    let nyquist = f64::from(sample_rate) / 2.0;
    for (name, value) in [("carrier", params.carrier_hz), ("modulator", params.modulator_hz)] {
        if value >= nyquist {
            return Err(TimbreError::AboveNyquist { name, value, nyquist });
        }
    }
    if policy == AliasPolicy::Reject {
        let top = params.highest_sideband_hz()?;
        if top >= nyquist {
            return Err(TimbreError::AboveNyquist { name: "highest significant sideband", value: top, nyquist });
        }
    }
    Ok(())
}

/// Samples the FM tone uniformly: `samples[k] = fm_sample(params, k / rate)`.
pub fn render_fm_wave(params: &FmParams, duration_sec: f64, sample_rate: u32) -> Result<SampledWave, TimbreError> {
    let count = sample_count(duration_sec, sample_rate)?;
    check_alias(params, sample_rate, AliasPolicy::Reject)?;
    // sin() keeps every sample in [-1, 1]; nothing to normalize.
    SampledWave::from_fn(sample_rate, count, |t| fm_sample(params, t))
}

/// Renders one segment per modulation index, back to back.
///
/// Carrier and modulator phases run on across segment boundaries, so only
/// the index changes at a boundary. Segment start phases are worked out
/// up front from the segment's first sample number.
pub fn render_fm_path(
    carrier_hz: f64,
    modulator_hz: f64,
    index_grid: &[f64],
    segment_duration_sec: f64,
    sample_rate: u32,
    policy: AliasPolicy,
) -> Result<SampledWave, TimbreError> {
    if index_grid.is_empty() || index_grid.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(TimbreError::InvalidIndexGrid);
    }
    let per_segment = sample_count(segment_duration_sec, sample_rate)?;
    let total = per_segment as f64 * index_grid.len() as f64;
    if total > MAX_SAMPLES {
        return Err(TimbreError::TooManySamples { count: total });
    }
    let params: Vec<FmParams> = index_grid
        .iter()
        .map(|&i| FmParams::new(carrier_hz, modulator_hz, i))
        .collect::<Result<_, _>>()?;
    for p in &params {
        check_alias(p, sample_rate, policy)?;
    }

    let rate = f64::from(sample_rate);
    let start_phases: Vec<(f64, f64)> = (0..params.len())
        .map(|seg| {
            let first = (seg * per_segment) as f64;
            (
                TAU * (carrier_hz * first / rate).fract(),
                TAU * (modulator_hz * first / rate).fract(),
            )
        })
        .collect();

    let mut samples = Vec::with_capacity(total as usize);
    for (p, &(carrier_phase, modulator_phase)) in params.iter().zip(&start_phases) {
        for k in 0..per_segment {
            let t = k as f64 / rate;
            let modulator = (modulator_phase + TAU * p.modulator_hz * t).sin();
            samples.push((carrier_phase + TAU * p.carrier_hz * t + p.modulation_index * modulator).sin());
        }
    }
    SampledWave::new(sample_rate, samples)
}
