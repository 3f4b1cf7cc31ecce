//! Line spectra: FM sidebands and their folding onto nonnegative frequencies.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::bessel::{bessel_row, BesselError};

/// Frequencies closer than this (Hz) are treated as the same line.
pub const FREQUENCY_MERGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Bessel(#[from] BesselError),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("line {index} has a non-finite or negative frequency, amplitude, or phase")]
    InvalidLine { index: usize },
}

/// One sinusoidal component `amplitude * sin(2 pi frequency t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub frequency: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl SpectralLine {
    pub fn new(frequency: f64, amplitude: f64) -> Self {
        SpectralLine { frequency, amplitude, phase: 0.0 }
    }

    pub fn with_phase(frequency: f64, amplitude: f64, phase: f64) -> Self {
        SpectralLine { frequency, amplitude, phase: phase.rem_euclid(TAU) }
    }
}

/// Discrete harmonic content of a periodic wave.
///
/// Lines are sorted by frequency, with no two closer than
/// [`FREQUENCY_MERGE_TOLERANCE`]. `dc_term` is the constant offset.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LineSpectrum {
    lines: Vec<SpectralLine>,
    dc_term: f64,
}

impl LineSpectrum {
    /// Validates, sorts and merges coincident lines.
    pub fn new(lines: Vec<SpectralLine>, dc_term: f64) -> Result<Self, SpectrumError> {
        for (index, l) in lines.iter().enumerate() {
            let ok = l.frequency.is_finite()
                && l.frequency >= 0.0
                && l.amplitude.is_finite()
                && l.phase.is_finite();
            if !ok {
                return Err(SpectrumError::InvalidLine { index });
            }
        }
        Ok(Self::merged(lines, dc_term))
    }

    fn merged(mut lines: Vec<SpectralLine>, dc_term: f64) -> Self {
        lines.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
        let mut out: Vec<SpectralLine> = Vec::with_capacity(lines.len());
        let mut group_start = 0;
        while group_start < lines.len() {
            let f0 = lines[group_start].frequency;
            let mut end = group_start + 1;
            while end < lines.len() && lines[end].frequency - f0 <= FREQUENCY_MERGE_TOLERANCE {
                end += 1;
            }
            out.push(merge_group(&lines[group_start..end]));
            group_start = end;
        }
        LineSpectrum { lines: out, dc_term }
    }

    pub fn lines(&self) -> &[SpectralLine] {
        &self.lines
    }

    pub fn dc_term(&self) -> f64 {
        self.dc_term
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The line at `frequency` (within the merge tolerance), if any.
    pub fn line_at(&self, frequency: f64) -> Option<&SpectralLine> {
        self.lines
            .iter()
            .find(|l| (l.frequency - frequency).abs() <= FREQUENCY_MERGE_TOLERANCE)
    }

    /// `dc + sum a sin(2 pi f t + phi)`.
    pub fn sample(&self, t: f64) -> f64 {
        self.dc_term + self.oscillating_sample(t)
    }

    /// The sum over lines only, without the constant term.
    pub fn oscillating_sample(&self, t: f64) -> f64 {
        self.lines
            .iter()
            .map(|l| l.amplitude * (TAU * l.frequency * t + l.phase).sin())
            .sum()
    }

    /// Sum of squared amplitudes, including the constant term.
    pub fn energy(&self) -> f64 {
        self.dc_term * self.dc_term + self.lines.iter().map(|l| l.amplitude * l.amplitude).sum::<f64>()
    }
}

// Phasor sum. When every phase is zero the signed amplitudes simply add.
fn merge_group(group: &[SpectralLine]) -> SpectralLine {
    let frequency = group[0].frequency;
    if group.iter().all(|l| l.phase == 0.0) {
        let amplitude = group.iter().map(|l| l.amplitude).sum();
        return SpectralLine { frequency, amplitude, phase: 0.0 };
    }
    let (s, c) = group.iter().fold((0.0, 0.0), |(s, c), l| {
        (s + l.amplitude * l.phase.cos(), c + l.amplitude * l.phase.sin())
    });
    SpectralLine::with_phase(frequency, s.hypot(c), c.atan2(s))
}

/// One term `J_n(I) sin(2 pi (fc + n fm) t)` of the two-sided FM expansion.
/// The frequency may be negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sideband {
    pub order: i64,
    pub frequency: f64,
    pub amplitude: f64,
}

impl Sideband {
    pub fn new(order: i64, frequency: f64, amplitude: f64) -> Self {
        Sideband { order, frequency, amplitude }
    }
}

/// Two-sided sideband list for `sin(2 pi fc t + I sin(2 pi fm t))`, one entry
/// per order `-N..=N` with `N` from the energy tail bound.
pub fn fm_sidebands(
    carrier_hz: f64,
    modulator_hz: f64,
    modulation_index: f64,
    tail_tolerance: f64,
) -> Result<Vec<Sideband>, SpectrumError> {
    for (name, value) in [("carrier frequency", carrier_hz), ("modulator frequency", modulator_hz)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(SpectrumError::NonPositive { name, value });
        }
    }
    let row = bessel_row(modulation_index, tail_tolerance)?;
    let n = row.max_order() as i64;
    Ok((-n..=n)
        .map(|order| {
            let amplitude = row.get(order).expect("order within row");
            Sideband::new(order, carrier_hz + order as f64 * modulator_hz, amplitude)
        })
        .collect())
}

/// Folds negative frequencies with `sin(-x) = -sin(x)` and merges equal
/// frequencies. A line landing on 0 Hz goes to `dc_term`; it contributes
/// nothing to the waveform because `sin(0) = 0`.
pub fn fold_spectrum(raw: &[Sideband]) -> LineSpectrum {
    let mut dc = 0.0;
    let mut lines = Vec::with_capacity(raw.len());
    for s in raw {
        let (frequency, amplitude) = if s.frequency < 0.0 {
            (-s.frequency, -s.amplitude)
        } else {
            (s.frequency, s.amplitude)
        };
        if frequency <= FREQUENCY_MERGE_TOLERANCE {
            dc += amplitude;
        } else {
            lines.push(SpectralLine::new(frequency, amplitude));
        }
    }
    LineSpectrum::merged(lines, dc)
}
