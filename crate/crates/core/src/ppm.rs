//! Binary PPM (P6) images, 8 bits per channel.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::colorimetry::SrgbColor;

/// Refuse headers describing more pixels than this.
pub const MAX_PIXELS: usize = 1 << 28;

#[derive(Debug, Error)]
pub enum PpmError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("bad PPM header: {0}")]
    Header(String),
    #[error("pixel data holds {found} bytes, expected {expected}")]
    Truncated { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<SrgbColor>,
}

impl Image {
    pub fn new(width: usize, height: usize, fill: SrgbColor) -> Self {
        Image { width, height, pixels: vec![fill; width * height] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel(&self, x: usize, y: usize) -> SrgbColor {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: SrgbColor) {
        self.pixels[y * self.width + x] = c;
    }

    /// Fills the rectangle, clipped to the image.
    pub fn fill_rect(&mut self, x0: usize, y0: usize, w: usize, h: usize, c: SrgbColor) {
        for y in y0..(y0 + h).min(self.height) {
            for x in x0..(x0 + w).min(self.width) {
                self.set(x, y, c);
            }
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for p in &self.pixels {
            out.extend_from_slice(&p.channels());
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), PpmError> {
        fs::write(path, self.encode())?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Image, PpmError> {
        Self::decode(&fs::read(path)?)
    }

    /// Decodes a P6 file with maxval 255. `#` comments are allowed in the
    /// header.
    pub fn decode(bytes: &[u8]) -> Result<Image, PpmError> {
        let mut pos = 0;
        let magic = header_token(bytes, &mut pos)?;
        if magic != b"P6" {
            return Err(PpmError::Header(format!("magic {:?}, expected P6", String::from_utf8_lossy(magic))));
        }
        let width = header_number(bytes, &mut pos, "width")?;
        let height = header_number(bytes, &mut pos, "height")?;
        let maxval = header_number(bytes, &mut pos, "maxval")?;
        if maxval != 255 {
            return Err(PpmError::Header(format!("maxval {maxval}, only 255 is supported")));
        }
        let count = width
            .checked_mul(height)
            .filter(|&n| n <= MAX_PIXELS)
            .ok_or_else(|| PpmError::Header(format!("{width}x{height} is too large")))?;
        // Exactly one whitespace byte separates the header from the raster.
        match bytes.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => return Err(PpmError::Header("missing whitespace before pixel data".into())),
        }
        let raster = &bytes[pos..];
        if raster.len() != count * 3 {
            return Err(PpmError::Truncated { expected: count * 3, found: raster.len() });
        }
        let pixels = raster.chunks_exact(3).map(|c| SrgbColor::new(c[0], c[1], c[2])).collect();
        Ok(Image { width, height, pixels })
    }
}

fn header_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8], PpmError> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&b| b != b'\n') {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(_) => break,
            None => return Err(PpmError::Header("unexpected end of header".into())),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
        *pos += 1;
    }
    Ok(&bytes[start..*pos])
}

fn header_number(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize, PpmError> {
    let tok = header_token(bytes, pos)?;
    std::str::from_utf8(tok)
        .ok()
        .filter(|s| s.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| PpmError::Header(format!("{what} {:?} is not a number", String::from_utf8_lossy(tok))))
}
