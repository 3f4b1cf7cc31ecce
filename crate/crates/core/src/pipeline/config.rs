//! Run configuration: defaults, `key = value` files, and the index grid.
//!
//! Config files hold one `key = value` per line. A `#` at the start of a
//! line, or with whitespace on both sides, starts a comment, so
//! `color = #ff0000` keeps its value.
//! Keys are the long flag names without dashes, e.g. `fc = 440` or
//! `flip-orientation = true`. Command-line flags override file values.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::bessel::DEFAULT_TAIL_TOLERANCE;
use crate::colorimetry::{Orientation, SrgbColor};
use crate::gesture::AdsrParams;

/// Longest index grid a run will accept.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("config line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: bad value {value:?} for {key}")]
    BadValue { line: usize, key: String, value: String },
    #[error("reading config {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

pub fn parse_config_text(text: &str) -> Result<Vec<ConfigEntry>, ConfigError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::Syntax { line, message: format!("expected key = value, found {content:?}") })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::Syntax { line, message: "empty key".into() });
        }
        entries.push(ConfigEntry { line, key: key.to_string(), value: value.trim().to_string() });
    }
    Ok(entries)
}

fn strip_comment(raw: &str) -> &str {
    let bytes = raw.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b != b'#' {
            continue;
        }
        let before = i == 0 || bytes[i - 1].is_ascii_whitespace();
        let after = bytes.get(i + 1).is_none_or(|c| c.is_ascii_whitespace());
        if i == raw.len() - raw.trim_start().len() || (before && after) {
            return &raw[..i];
        }
    }
    raw
}

pub fn read_config_file(path: &Path) -> Result<Vec<ConfigEntry>, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError::Read { path: path.to_path_buf(), message: e.to_string() })?;
    parse_config_text(&text)
}

fn parse_value<T: std::str::FromStr>(e: &ConfigEntry) -> Result<T, ConfigError> {
    e.value
        .parse()
        .map_err(|_| ConfigError::BadValue { line: e.line, key: e.key.clone(), value: e.value.clone() })
}

fn check_positive(name: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Invalid(format!("{name} must be positive, got {v}")))
    }
}

fn orientation(flip: bool) -> Orientation {
    if flip {
        Orientation::Flipped
    } else {
        Orientation::Standard
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FmPathConfig {
    pub carrier_hz: f64,
    pub modulator_hz: f64,
    pub index_start: f64,
    pub index_end: f64,
    pub index_step: f64,
    pub base_hz: f64,
    pub sample_rate: u32,
    pub segment_duration_sec: f64,
    pub flip_orientation: bool,
    pub tail_tolerance: f64,
    pub out_wav: PathBuf,
    pub out_img: PathBuf,
    pub out_csv: PathBuf,
    pub out_log: PathBuf,
}

impl Default for FmPathConfig {
    fn default() -> Self {
        FmPathConfig {
            carrier_hz: 440.0,
            modulator_hz: 880.0,
            index_start: 0.0,
            index_end: 20.0,
            index_step: 0.1,
            base_hz: 440.0,
            sample_rate: 44100,
            segment_duration_sec: 0.1,
            flip_orientation: false,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            out_wav: "fm_path.wav".into(),
            out_img: "fm_path.ppm".into(),
            out_csv: "fm_path.csv".into(),
            out_log: "fm_path.log".into(),
        }
    }
}

impl FmPathConfig {
    pub fn apply(&mut self, entries: &[ConfigEntry]) -> Result<(), ConfigError> {
        for e in entries {
            match e.key.as_str() {
                "fc" => self.carrier_hz = parse_value(e)?,
                "fm" => self.modulator_hz = parse_value(e)?,
                "i-start" => self.index_start = parse_value(e)?,
                "i-end" => self.index_end = parse_value(e)?,
                "i-step" => self.index_step = parse_value(e)?,
                "base" => self.base_hz = parse_value(e)?,
                "rate" => self.sample_rate = parse_value(e)?,
                "seg-dur" => self.segment_duration_sec = parse_value(e)?,
                "flip-orientation" => self.flip_orientation = parse_value(e)?,
                "tail-tol" => self.tail_tolerance = parse_value(e)?,
                "out-wav" => self.out_wav = e.value.clone().into(),
                "out-img" => self.out_img = e.value.clone().into(),
                "out-csv" => self.out_csv = e.value.clone().into(),
                "out-log" => self.out_log = e.value.clone().into(),
                _ => return Err(ConfigError::UnknownKey { line: e.line, key: e.key.clone() }),
            }
        }
        Ok(())
    }

    pub fn orientation(&self) -> Orientation {
        orientation(self.flip_orientation)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        check_positive("carrier frequency", self.carrier_hz)?;
        check_positive("modulator frequency", self.modulator_hz)?;
        check_positive("segment duration", self.segment_duration_sec)?;
        check_positive("tail tolerance", self.tail_tolerance)?;
        if self.sample_rate == 0 {
            return Err(ConfigError::Invalid("sample rate must be positive".into()));
        }
        index_grid(self.index_start, self.index_end, self.index_step).map(|_| ())
    }
}

/// Index values from `start` to `end` in steps of `step`.
///
/// When the step divides the range, point `k` of `n` is
/// `start + (end - start) * k / n`, so the default grid hits `k / 10`
/// exactly and always ends on `end`.
pub fn index_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>, ConfigError> {
    if !(start.is_finite() && end.is_finite() && start >= 0.0) {
        return Err(ConfigError::Invalid(format!("index range [{start}, {end}] must be finite and nonnegative")));
    }
    if start > end {
        return Err(ConfigError::Invalid(format!("index start {start} exceeds end {end}")));
    }
    check_positive("index step", step)?;
    let span = end - start;
    let steps = (span / step).round();
    if steps >= MAX_GRID_POINTS as f64 {
        return Err(ConfigError::Invalid(format!("index grid has more than {MAX_GRID_POINTS} points")));
    }
    let n = steps as usize;
    if n > 0 && (start + steps * step - end).abs() <= 1e-9 * end.abs().max(1.0) {
        return Ok((0..=n).map(|k| start + span * k as f64 / n as f64).collect());
    }
    if n == 0 {
        return Ok(vec![start]);
    }
    let mut grid = Vec::new();
    let mut k = 0u32;
    loop {
        let v = start + f64::from(k) * step;
        if v > end + 1e-9 * end.abs().max(1.0) {
            break;
        }
        grid.push(v.min(end));
        k += 1;
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wav2ColorConfig {
    pub input: PathBuf,
    pub fundamental_hz: f64,
    /// `None` picks the highest harmonic below Nyquist, capped.
    pub max_harmonic: Option<u32>,
    pub base_hz: f64,
    pub flip_orientation: bool,
    pub out_img: PathBuf,
    pub out_csv: PathBuf,
}

impl Default for Wav2ColorConfig {
    fn default() -> Self {
        Wav2ColorConfig {
            input: PathBuf::new(),
            fundamental_hz: 0.0,
            max_harmonic: None,
            base_hz: 440.0,
            flip_orientation: false,
            out_img: "swatch.ppm".into(),
            out_csv: "swatch.csv".into(),
        }
    }
}

impl Wav2ColorConfig {
    pub fn apply(&mut self, entries: &[ConfigEntry]) -> Result<(), ConfigError> {
        for e in entries {
            match e.key.as_str() {
                "in" => self.input = e.value.clone().into(),
                "fundamental" => self.fundamental_hz = parse_value(e)?,
                "max-harmonic" => self.max_harmonic = Some(parse_value(e)?),
                "base" => self.base_hz = parse_value(e)?,
                "flip-orientation" => self.flip_orientation = parse_value(e)?,
                "out-img" => self.out_img = e.value.clone().into(),
                "out-csv" => self.out_csv = e.value.clone().into(),
                _ => return Err(ConfigError::UnknownKey { line: e.line, key: e.key.clone() }),
            }
        }
        Ok(())
    }

    pub fn orientation(&self) -> Orientation {
        orientation(self.flip_orientation)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.input.as_os_str().is_empty() {
            return Err(ConfigError::Invalid("no input WAV given".into()));
        }
        check_positive("fundamental", self.fundamental_hz)?;
        if self.max_harmonic == Some(0) {
            return Err(ConfigError::Invalid("max harmonic must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeConfig {
    pub color: SrgbColor,
    pub adsr: AdsrParams,
    pub samples_per_segment: usize,
    pub strip_width: usize,
    pub strip_height: usize,
    pub out_gesture: PathBuf,
    pub out_img: PathBuf,
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        EnvelopeConfig {
            color: SrgbColor::new(255, 255, 255),
            adsr: AdsrParams::default(),
            samples_per_segment: 16,
            strip_width: 400,
            strip_height: 32,
            out_gesture: "envelope.gesture".into(),
            out_img: "envelope.ppm".into(),
        }
    }
}

impl EnvelopeConfig {
    pub fn apply(&mut self, entries: &[ConfigEntry]) -> Result<(), ConfigError> {
        for e in entries {
            match e.key.as_str() {
                "color" => self.color = parse_value(e)?,
                "attack-level" => self.adsr.attack_level = parse_value(e)?,
                "attack" => self.adsr.attack = parse_value(e)?,
                "decay" => self.adsr.decay = parse_value(e)?,
                "sustain-level" => self.adsr.sustain_level = parse_value(e)?,
                "sustain" => self.adsr.sustain = parse_value(e)?,
                "release" => self.adsr.release = parse_value(e)?,
                "samples-per-segment" => self.samples_per_segment = parse_value(e)?,
                "strip-width" => self.strip_width = parse_value(e)?,
                "strip-height" => self.strip_height = parse_value(e)?,
                "out-gesture" => self.out_gesture = e.value.clone().into(),
                "out-img" => self.out_img = e.value.clone().into(),
                _ => return Err(ConfigError::UnknownKey { line: e.line, key: e.key.clone() }),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.adsr.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.samples_per_segment < 2 {
            return Err(ConfigError::Invalid("samples per segment must be at least 2".into()));
        }
        if self.strip_width == 0 || self.strip_height == 0 || self.strip_width.saturating_mul(self.strip_height) > crate::ppm::MAX_PIXELS {
            return Err(ConfigError::Invalid(format!("strip size {}x{} is out of range", self.strip_width, self.strip_height)));
        }
        Ok(())
    }
}
