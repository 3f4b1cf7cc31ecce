use std::f64::consts::TAU;

use super::{SampledWave, TimbreError};
use crate::spectrum::{LineSpectrum, SpectralLine};

/// Lines quieter than this are dropped from the analysis.
pub const AMPLITUDE_FLOOR: f64 = 1e-6;

/// Shortest wave, in fundamental periods, that can be analysed.
pub const MIN_PERIODS: f64 = 10.0;

const WHOLE_SAMPLE_TOLERANCE: f64 = 1e-6;

/// Picks the projection window: the largest whole number of fundamental
/// periods that also spans a whole number of samples. Falls back to the
/// window closest to a whole sample count when none is exact.
///
/// Returns `(periods, samples)`.
pub fn analysis_window(len: usize, sample_rate: u32, fundamental_hz: f64) -> Result<(u64, usize), TimbreError> {
    let rate = f64::from(sample_rate);
    let available = len as f64 * fundamental_hz / rate;
    if !(available >= MIN_PERIODS) {
        return Err(TimbreError::TooShort { periods: available });
    }
    let samples_per_period = rate / fundamental_hz;
    let max_periods = (available + 1e-9).floor() as u64;
    let min_periods = MIN_PERIODS as u64;

    let mut best: Option<(u64, f64)> = None;
    for periods in (min_periods..=max_periods).rev() {
        let exact = periods as f64 * samples_per_period;
        if exact.round() as usize > len {
            continue;
        }
        let miss = (exact - exact.round()).abs();
        if miss < WHOLE_SAMPLE_TOLERANCE {
            best = Some((periods, miss));
            break;
        }
        if best.is_none_or(|(_, m)| miss < m) {
            best = Some((periods, miss));
        }
    }
    let (periods, _) = best.ok_or(TimbreError::TooShort { periods: available })?;
    Ok((periods, (periods as f64 * samples_per_period).round() as usize))
}

/// Harmonic amplitudes and phases of a periodic wave with a known
/// fundamental, by projection onto `sin` and `cos` of each harmonic over a
/// whole number of periods.
///
/// Each harmonic `n` is reported as `a_n sin(2 pi n f t + phi_n)` with
/// `a_n >= 0`; the mean goes to `dc_term`.
pub fn analyze_harmonics(
    wave: &SampledWave,
    fundamental_hz: f64,
    max_harmonic: u32,
) -> Result<LineSpectrum, TimbreError> {
    if !(fundamental_hz > 0.0 && fundamental_hz.is_finite()) {
        return Err(TimbreError::NonPositive { name: "fundamental", value: fundamental_hz });
    }
    let nyquist = f64::from(wave.sample_rate()) / 2.0;
    if fundamental_hz >= nyquist {
        return Err(TimbreError::AboveNyquist { name: "fundamental", value: fundamental_hz, nyquist });
    }
    let max_harmonic = max_harmonic.max(1);
    let top = f64::from(max_harmonic) * fundamental_hz;
    if top >= nyquist {
        return Err(TimbreError::AboveNyquist { name: "highest analysed harmonic", value: top, nyquist });
    }

    let (_, window) = analysis_window(wave.len(), wave.sample_rate(), fundamental_hz)?;
    let x = &wave.samples()[..window];
    let rate = f64::from(wave.sample_rate());
    let norm = 2.0 / window as f64;

    let dc = x.iter().sum::<f64>() / window as f64;
    let mut lines = Vec::new();
    for n in 1..=max_harmonic {
        let freq = f64::from(n) * fundamental_hz;
        let (mut s, mut c) = (0.0, 0.0);
        for (k, &v) in x.iter().enumerate() {
            let angle = TAU * (freq * k as f64 / rate).fract();
            let (sin, cos) = angle.sin_cos();
            s += v * sin;
            c += v * cos;
        }
        let (s, c) = (s * norm, c * norm);
        let amplitude = s.hypot(c);
        if amplitude >= AMPLITUDE_FLOOR {
            lines.push(SpectralLine::with_phase(freq, amplitude, c.atan2(s)));
        }
    }
    Ok(LineSpectrum::new(lines, dc).expect("harmonic lines are finite"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine(freq: f64, amp: f64, phase: f64, secs: f64) -> SampledWave {
        let n = (secs * 44100.0) as usize;
        SampledWave::from_fn(44100, n, |t| amp * (TAU * freq * t + phase).sin()).unwrap()
    }

    #[test]
    fn window_is_whole_periods_and_samples() {
        // 44100 / 440 = 2205 / 22
        assert_eq!(analysis_window(44100, 44100, 440.0).unwrap(), (440, 44100));
        assert_eq!(analysis_window(44099, 44100, 440.0).unwrap(), (418, 41895));
        assert!(matches!(analysis_window(1000, 44100, 440.0), Err(TimbreError::TooShort { .. })));
    }

    #[test]
    fn pure_sine() {
        let s = analyze_harmonics(&sine(440.0, 1.0, 0.0, 1.0), 440.0, 10).unwrap();
        assert_eq!(s.lines().len(), 1);
        let l = s.lines()[0];
        assert_eq!(l.frequency, 440.0);
        assert!((l.amplitude - 1.0).abs() < 1e-9);
        assert!(l.phase < 1e-9 || TAU - l.phase < 1e-9);
        assert!(s.dc_term().abs() < 1e-9);
    }

    #[test]
    fn two_partials_and_phase() {
        let w = SampledWave::from_fn(44100, 44100, |t| {
            0.5 * (TAU * 440.0 * t).sin() + 0.25 * (TAU * 880.0 * t + 1.0).sin() + 0.1
        })
        .unwrap();
        let s = analyze_harmonics(&w, 440.0, 20).unwrap();
        assert_eq!(s.lines().len(), 2);
        assert!((s.lines()[0].amplitude - 0.5).abs() < 1e-9);
        assert!((s.lines()[1].amplitude - 0.25).abs() < 1e-9);
        assert!((s.lines()[1].phase - 1.0).abs() < 1e-9);
        assert!((s.dc_term() - 0.1).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_requests() {
        let w = sine(440.0, 1.0, 0.0, 0.01);
        assert!(matches!(analyze_harmonics(&w, 440.0, 5), Err(TimbreError::TooShort { .. })));
        let w = sine(440.0, 1.0, 0.0, 1.0);
        assert!(matches!(analyze_harmonics(&w, 30000.0, 1), Err(TimbreError::AboveNyquist { .. })));
        assert!(matches!(analyze_harmonics(&w, 440.0, 60), Err(TimbreError::AboveNyquist { .. })));
        assert!(matches!(analyze_harmonics(&w, 0.0, 1), Err(TimbreError::NonPositive { .. })));
    }

    #[test]
    fn silence_has_no_lines() {
        let w = SampledWave::new(44100, vec![0.0; 44100]).unwrap();
        let s = analyze_harmonics(&w, 440.0, 40).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.dc_term(), 0.0);
    }
}
