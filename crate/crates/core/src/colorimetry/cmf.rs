use std::fmt;

use super::{ColorError, XyzColor};

pub const FIRST_WAVELENGTH: f64 = 380.0;
pub const LAST_WAVELENGTH: f64 = 780.0;
pub const WAVELENGTH_STEP: f64 = 5.0;
/// Rows in a complete table.
pub const ROW_COUNT: usize = 81;

const CIE1931_TEXT: &str = include_str!("../../data/cie1931_2deg_5nm.txt");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmfEntry {
    pub wavelength: f64,
    pub xbar: f64,
    pub ybar: f64,
    pub zbar: f64,
}

impl CmfEntry {
    pub fn xyz(&self) -> XyzColor {
        XyzColor::new(self.xbar, self.ybar, self.zbar)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CmfErrorKind {
    /// Wrong column count or a column that is not a finite number.
    Malformed(String),
    /// Wavelength out of sequence, or the table stops early.
    DomainGap { expected: f64, found: Option<f64> },
    NegativeValue { column: &'static str, value: f64 },
}

/// A table problem, with the 1-based line it was found on.
#[derive(Debug, Clone, PartialEq)]
pub struct CmfError {
    pub line: usize,
    pub kind: CmfErrorKind,
}

impl fmt::Display for CmfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            CmfErrorKind::Malformed(msg) => write!(f, "malformed row: {msg}"),
            CmfErrorKind::DomainGap { expected, found: Some(w) } => {
                write!(f, "domain gap: expected {expected} nm, found {w} nm")
            }
            CmfErrorKind::DomainGap { expected, found: None } => {
                write!(f, "domain gap: table ends before {expected} nm")
            }
            CmfErrorKind::NegativeValue { column, value } => {
                write!(f, "negative {column} value {value}")
            }
        }
    }
}

impl std::error::Error for CmfError {}

/// Colour matching functions sampled every 5 nm over [380, 780].
#[derive(Debug, Clone, PartialEq)]
pub struct ColorMatchingTable {
    entries: Vec<CmfEntry>,
}

impl ColorMatchingTable {
    /// The CIE 1931 2-degree observer shipped with the crate.
    pub fn cie1931() -> Self {
        Self::parse(CIE1931_TEXT).expect("bundled CIE 1931 table is valid")
    }

    /// Parses `wavelength xbar ybar zbar` rows. Blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self, CmfError> {
        let mut entries = Vec::with_capacity(ROW_COUNT);
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(CmfError {
                    line,
                    kind: CmfErrorKind::Malformed(format!("expected 4 columns, found {}", fields.len())),
                });
            }
            let mut nums = [0.0; 4];
            for (slot, field) in nums.iter_mut().zip(&fields) {
                *slot = match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => v,
                    _ => {
                        return Err(CmfError {
                            line,
                            kind: CmfErrorKind::Malformed(format!("not a finite number: {field:?}")),
                        })
                    }
                };
            }
            let [wavelength, xbar, ybar, zbar] = nums;

            if entries.len() >= ROW_COUNT {
                return Err(CmfError {
                    line,
                    kind: CmfErrorKind::Malformed(format!("row beyond {LAST_WAVELENGTH} nm")),
                });
            }
            let expected = FIRST_WAVELENGTH + WAVELENGTH_STEP * entries.len() as f64;
            if (wavelength - expected).abs() > 1e-9 {
                return Err(CmfError {
                    line,
                    kind: CmfErrorKind::DomainGap { expected, found: Some(wavelength) },
                });
            }
            for (column, value) in [("xbar", xbar), ("ybar", ybar), ("zbar", zbar)] {
                if value < 0.0 {
                    return Err(CmfError { line, kind: CmfErrorKind::NegativeValue { column, value } });
                }
            }
            entries.push(CmfEntry { wavelength: expected, xbar, ybar, zbar });
        }
        if entries.len() < ROW_COUNT {
            let expected = FIRST_WAVELENGTH + WAVELENGTH_STEP * entries.len() as f64;
            return Err(CmfError { line: last_line, kind: CmfErrorKind::DomainGap { expected, found: None } });
        }
        Ok(ColorMatchingTable { entries })
    }

    pub fn entries(&self) -> &[CmfEntry] {
        &self.entries
    }

    /// Componentwise sums over all rows: the equal-energy stimulus.
    pub fn column_sums(&self) -> XyzColor {
        self.entries.iter().fold(XyzColor::BLACK, |acc, e| acc + e.xyz())
    }

    /// Linear interpolation of the three columns at `wavelength` nm.
    pub fn xyz_at(&self, wavelength: f64) -> Result<XyzColor, ColorError> {
        if !(FIRST_WAVELENGTH..=LAST_WAVELENGTH).contains(&wavelength) {
            return Err(ColorError::WavelengthOutOfDomain(wavelength));
        }
        let pos = (wavelength - FIRST_WAVELENGTH) / WAVELENGTH_STEP;
        let i = pos.floor() as usize;
        if i + 1 >= self.entries.len() {
            return Ok(self.entries[self.entries.len() - 1].xyz());
        }
        let t = pos - i as f64;
        let a = self.entries[i];
        let b = self.entries[i + 1];
        Ok(XyzColor::new(
            a.xbar + (b.xbar - a.xbar) * t,
            a.ybar + (b.ybar - a.ybar) * t,
            a.zbar + (b.zbar - a.zbar) * t,
        ))
    }
}
