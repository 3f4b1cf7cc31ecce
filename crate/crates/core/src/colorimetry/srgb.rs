use std::fmt;
use std::str::FromStr;

use super::{ColorError, XyzColor};

/// XYZ to linear sRGB (IEC 61966-2-1, D65 white).
pub const SRGB_FROM_XYZ: [[f64; 3]; 3] = [
    [3.2406, -1.5372, -0.4986],
    [-0.9689, 1.8758, 0.0415],
    [0.0557, -0.2040, 1.0570],
];

/// D65 white point, `Y = 1`.
pub const D65_WHITE: XyzColor = XyzColor { x: 0.95047, y: 1.0, z: 1.08883 };

const LINEAR_THRESHOLD: f64 = 0.0031308;

/// An 8-bit sRGB colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SrgbColor {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl SrgbColor {
    pub const BLACK: SrgbColor = SrgbColor { r: 0, g: 0, b: 0 };

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        SrgbColor { r, g, b }
    }

    pub fn channels(&self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    /// Euclidean distance in 8-bit channel units.
    pub fn distance(&self, other: &SrgbColor) -> f64 {
        self.channels()
            .iter()
            .zip(other.channels())
            .map(|(&a, b)| (f64::from(a) - f64::from(b)).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Display for SrgbColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }
}

/// Parses `RRGGBB`, with or without a leading `#`.
impl FromStr for SrgbColor {
    type Err = ColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let hex = s.strip_prefix('#').unwrap_or(s);
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(ColorError::InvalidHexColor(s.to_string()));
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).expect("validated hex");
        Ok(SrgbColor::new(channel(0), channel(2), channel(4)))
    }
}

/// Linear-light value in [0, 1] to the sRGB transfer curve.
pub fn encode_transfer(linear: f64) -> f64 {
    if linear <= LINEAR_THRESHOLD {
        12.92 * linear
    } else {
        1.055 * linear.powf(1.0 / 2.4) - 0.055
    }
}

/// Round half up to 0..=255.
pub fn quantize(encoded: f64) -> u8 {
    (encoded * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Linear sRGB, clamped to [0, 1] per channel.
pub fn linear_rgb(xyz: XyzColor) -> [f64; 3] {
    let v = [xyz.x, xyz.y, xyz.z];
    SRGB_FROM_XYZ.map(|row| (row[0] * v[0] + row[1] * v[1] + row[2] * v[2]).clamp(0.0, 1.0))
}

pub fn xyz_to_srgb(xyz: XyzColor) -> SrgbColor {
    let [r, g, b] = linear_rgb(xyz).map(|c| quantize(encode_transfer(c)));
    SrgbColor { r, g, b }
}
