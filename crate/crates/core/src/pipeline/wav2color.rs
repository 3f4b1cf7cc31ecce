use std::fmt::Write;

use log::info;

use super::{write_text, PipelineError, Wav2ColorConfig};
use crate::colorimetry::{
    project_to_cube, weighted_xyz, xyz_to_srgb, ColorMatchingTable, OctaveMap, SrgbColor, XyzColor,
};
use crate::ppm::Image;
use crate::spectrum::LineSpectrum;
use crate::timbre::{analyze_harmonics, read_wav};

/// Cap on the harmonic count when none is given.
pub const MAX_DEFAULT_HARMONIC: u32 = 256;

const SWATCH_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Wav2ColorReport {
    pub spectrum: LineSpectrum,
    pub xyz: XyzColor,
    pub srgb: SrgbColor,
}

/// Largest `n` with `n * fundamental` below Nyquist, at most
/// [`MAX_DEFAULT_HARMONIC`].
pub fn default_max_harmonic(sample_rate: u32, fundamental_hz: f64) -> u32 {
    let nyquist = f64::from(sample_rate) / 2.0;
    let mut n = (nyquist / fundamental_hz).floor().min(f64::from(MAX_DEFAULT_HARMONIC)) as u32;
    while n > 1 && f64::from(n) * fundamental_hz >= nyquist {
        n -= 1;
    }
    n.max(1)
}

/// Analyses a WAV into harmonics and writes its colour as a swatch and CSV.
pub fn run_wav2color(cfg: &Wav2ColorConfig) -> Result<Wav2ColorReport, PipelineError> {
    cfg.validate()?;
    let wave = read_wav(&cfg.input)?;
    let max_harmonic = cfg
        .max_harmonic
        .unwrap_or_else(|| default_max_harmonic(wave.sample_rate(), cfg.fundamental_hz));
    let spectrum = analyze_harmonics(&wave, cfg.fundamental_hz, max_harmonic)?;
    let map = OctaveMap::with_orientation(cfg.base_hz, cfg.orientation())?;
    let cmf = ColorMatchingTable::cie1931();
    let (raw, _) = weighted_xyz(&spectrum, &map, &cmf)?;
    let xyz = project_to_cube(raw);
    let srgb = xyz_to_srgb(xyz);

    let mut out = String::from("kind,frequency,amplitude,phase,X,Y,Z,R,G,B\n");
    for line in spectrum.lines() {
        let line_xyz = cmf.xyz_at(map.wavelength_of(line.frequency)?)?;
        let c = xyz_to_srgb(project_to_cube(line_xyz));
        writeln!(
            out,
            "line,{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{}",
            line.frequency, line.amplitude, line.phase, line_xyz.x, line_xyz.y, line_xyz.z, c.r, c.g, c.b
        )
        .unwrap();
    }
    writeln!(
        out,
        "color,,,,{:.6},{:.6},{:.6},{},{},{}",
        xyz.x, xyz.y, xyz.z, srgb.r, srgb.g, srgb.b
    )
    .unwrap();
    write_text(&cfg.out_csv, &out)?;
    Image::new(SWATCH_SIZE, SWATCH_SIZE, srgb).write(&cfg.out_img)?;
    info!("{} lines up to harmonic {max_harmonic}, colour #{srgb}", spectrum.lines().len());
    Ok(Wav2ColorReport { spectrum, xyz, srgb })
}
