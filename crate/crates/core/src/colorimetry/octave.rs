use super::ColorError;

/// Longest wavelength of the colour octave, nm.
pub const RED_END: f64 = 760.0;
/// Shortest wavelength of the colour octave, nm.
pub const VIOLET_END: f64 = 380.0;

pub const MIN_BASE_HZ: f64 = 20.0;
pub const MAX_BASE_HZ: f64 = 20000.0;

/// Which end of the musical octave lands on red.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `lambda = 760 f / g`: rising pitch runs from red toward violet.
    #[default]
    Standard,
    /// `lambda = 380 g / f`: rising pitch runs from violet toward red.
    Flipped,
}

/// Identifies the musical octave `[f, 2f]` with the colour octave
/// `[380, 760]` nm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OctaveMap {
    base_hz: f64,
    orientation: Orientation,
}

impl Default for OctaveMap {
    fn default() -> Self {
        OctaveMap { base_hz: 440.0, orientation: Orientation::Standard }
    }
}

impl OctaveMap {
    pub fn new(base_hz: f64) -> Result<Self, ColorError> {
        Self::with_orientation(base_hz, Orientation::Standard)
    }

    pub fn with_orientation(base_hz: f64, orientation: Orientation) -> Result<Self, ColorError> {
        if !(MIN_BASE_HZ..=MAX_BASE_HZ).contains(&base_hz) {
            return Err(ColorError::InvalidOctaveBase(base_hz));
        }
        Ok(OctaveMap { base_hz, orientation })
    }

    pub fn base_hz(&self) -> f64 {
        self.base_hz
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `g * 2^k` for the unique integer `k` putting the result in `[f, 2f)`.
    /// Only exact doublings and halvings are applied.
    pub fn reduce(&self, g: f64) -> Result<f64, ColorError> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(ColorError::NonPositiveFrequency(g));
        }
        let f = self.base_hz;
        let mut r = g;
        while r >= 2.0 * f {
            r *= 0.5;
        }
        while r < f {
            r *= 2.0;
        }
        Ok(r)
    }

    /// Wavelength in nm of a frequency inside `[f, 2f]`.
    pub fn wavelength(&self, g: f64) -> Result<f64, ColorError> {
        let f = self.base_hz;
        if !(g >= f && g <= 2.0 * f) {
            return Err(ColorError::OutsideOctave { frequency: g, base: f });
        }
        Ok(match self.orientation {
            Orientation::Standard => RED_END * (f / g),
            Orientation::Flipped => VIOLET_END * (g / f),
        })
    }

    /// Octave-reduces `g` and then maps it to a wavelength.
    pub fn wavelength_of(&self, g: f64) -> Result<f64, ColorError> {
        self.wavelength(self.reduce(g)?)
    }
}
