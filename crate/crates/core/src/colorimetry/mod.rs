//! CIE 1931 colorimetry and the frequency-to-wavelength octave map.
//!
//! A line spectrum is coloured by sending every line through octave
//! reduction and the octave map, looking up its XYZ value in the colour
//! matching table, and averaging those XYZ values weighted by `|amplitude|`.
//! The constant term and the phases do not take part.

mod cmf;
mod octave;
mod srgb;

use std::ops::{Add, Sub};

use thiserror::Error;

use crate::spectrum::LineSpectrum;

pub use cmf::{CmfEntry, CmfError, CmfErrorKind, ColorMatchingTable, FIRST_WAVELENGTH, LAST_WAVELENGTH, ROW_COUNT, WAVELENGTH_STEP};
pub use octave::{OctaveMap, Orientation, RED_END, VIOLET_END};
pub use srgb::{encode_transfer, linear_rgb, quantize, xyz_to_srgb, SrgbColor, D65_WHITE, SRGB_FROM_XYZ};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ColorError {
    #[error("wavelength {0} nm outside [380, 780]")]
    WavelengthOutOfDomain(f64),
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("frequency {frequency} Hz outside the octave [{base}, 2*{base}]")]
    OutsideOctave { frequency: f64, base: f64 },
    #[error("octave base {0} Hz outside [20, 20000]")]
    InvalidOctaveBase(f64),
    #[error("spectrum has no nonzero line amplitudes")]
    DegenerateSpectrum,
    #[error("invalid colour {0:?}, expected RRGGBB")]
    InvalidHexColor(String),
}

/// CIE XYZ tristimulus coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct XyzColor {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl XyzColor {
    pub const BLACK: XyzColor = XyzColor { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        XyzColor { x, y, z }
    }

    pub fn scale(self, c: f64) -> Self {
        XyzColor::new(self.x * c, self.y * c, self.z * c)
    }

    pub fn max_component(&self) -> f64 {
        self.x.max(self.y).max(self.z)
    }

    pub fn min_component(&self) -> f64 {
        self.x.min(self.y).min(self.z)
    }

    /// `(x, y) = (X, Y) / (X + Y + Z)`.
    pub fn chromaticity(&self) -> (f64, f64) {
        let s = self.x + self.y + self.z;
        (self.x / s, self.y / s)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for XyzColor {
    type Output = XyzColor;
    fn add(self, o: XyzColor) -> XyzColor {
        XyzColor::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for XyzColor {
    type Output = XyzColor;
    fn sub(self, o: XyzColor) -> XyzColor {
        XyzColor::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Brings a colour into the unit cube. Colours already inside are returned
/// unchanged; otherwise all components are divided by the largest one and
/// negatives are clamped to zero.
pub fn project_to_cube(raw: XyzColor) -> XyzColor {
    if raw.max_component() <= 1.0 && raw.min_component() >= 0.0 {
        return raw;
    }
    let m = raw.max_component();
    let scaled = if m > 0.0 { raw.scale(1.0 / m) } else { raw };
    XyzColor::new(scaled.x.max(0.0), scaled.y.max(0.0), scaled.z.max(0.0))
}

/// Weighted average of the observer's XYZ at the given wavelengths, with
/// the weight sum. Zero weights are skipped; negative weights count by
/// magnitude.
pub fn average_xyz(
    samples: impl IntoIterator<Item = (f64, f64)>,
    cmf: &ColorMatchingTable,
) -> Result<(XyzColor, f64), ColorError> {
    let mut acc = XyzColor::BLACK;
    let mut weight = 0.0;
    for (wavelength, w) in samples {
        let w = w.abs();
        if w == 0.0 {
            continue;
        }
        acc = acc + cmf.xyz_at(wavelength)?.scale(w);
        weight += w;
    }
    if weight == 0.0 {
        return Err(ColorError::DegenerateSpectrum);
    }
    Ok((acc.scale(1.0 / weight), weight))
}

/// `|a|`-weighted average of the lines' XYZ values, before cube projection.
/// Also returns the weight sum.
pub fn weighted_xyz(
    spectrum: &LineSpectrum,
    map: &OctaveMap,
    cmf: &ColorMatchingTable,
) -> Result<(XyzColor, f64), ColorError> {
    let samples = spectrum
        .lines()
        .iter()
        .filter(|l| l.amplitude != 0.0)
        .map(|l| Ok((map.wavelength_of(l.frequency)?, l.amplitude)))
        .collect::<Result<Vec<_>, ColorError>>()?;
    average_xyz(samples, cmf)
}

/// Colour of a line spectrum, in the unit cube.
pub fn spectrum_to_xyz(
    spectrum: &LineSpectrum,
    map: &OctaveMap,
    cmf: &ColorMatchingTable,
) -> Result<XyzColor, ColorError> {
    weighted_xyz(spectrum, map, cmf).map(|(xyz, _)| project_to_cube(xyz))
}
