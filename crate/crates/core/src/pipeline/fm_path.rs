use std::fmt::Write;

use log::{info, warn};

use super::{write_text, FmPathConfig, PipelineError};
use crate::colorimetry::{
    project_to_cube, weighted_xyz, xyz_to_srgb, ColorMatchingTable, OctaveMap, SrgbColor, XyzColor,
};
use crate::ppm::Image;
use crate::spectrum::{fm_sidebands, fold_spectrum};
use crate::timbre::{render_fm_path, write_wav, AliasPolicy, FmParams};

/// Side of one colour square, in pixels.
pub const SQUARE_SIZE: usize = 32;
pub const SWATCH_COLUMNS: usize = 16;

/// The colour of one modulation index.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: f64,
    /// Highest sideband order kept.
    pub max_order: usize,
    /// Sum of `|a|` over the folded lines.
    pub weight: f64,
    pub xyz: XyzColor,
    pub srgb: SrgbColor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FmPathReport {
    pub rows: Vec<SweepRow>,
    pub audio_samples: usize,
    pub audio_duration_sec: f64,
    /// Segments whose significant sidebands reach Nyquist and alias.
    pub aliased_segments: usize,
    /// Largest sRGB distance between consecutive rows.
    pub max_adjacent_distance: f64,
    /// Diagonal of the sRGB bounding box of all rows.
    pub color_span: f64,
}

/// Colours along the index grid via sidebands, folding, and the octave map.
pub fn sweep_colors(
    carrier_hz: f64,
    modulator_hz: f64,
    grid: &[f64],
    map: &OctaveMap,
    tail_tolerance: f64,
) -> Result<Vec<SweepRow>, PipelineError> {
    let cmf = ColorMatchingTable::cie1931();
    grid.iter()
        .map(|&index| {
            let sidebands = fm_sidebands(carrier_hz, modulator_hz, index, tail_tolerance)?;
            let spectrum = fold_spectrum(&sidebands);
            let (raw, weight) = weighted_xyz(&spectrum, map, &cmf)?;
            let xyz = project_to_cube(raw);
            Ok(SweepRow { index, max_order: sidebands.len() / 2, weight, xyz, srgb: xyz_to_srgb(xyz) })
        })
        .collect()
}

fn swatch_grid(rows: &[SweepRow]) -> Image {
    let grid_rows = rows.len().div_ceil(SWATCH_COLUMNS).max(1);
    let columns = rows.len().clamp(1, SWATCH_COLUMNS);
    let mut img = Image::new(columns * SQUARE_SIZE, grid_rows * SQUARE_SIZE, SrgbColor::BLACK);
    for (n, row) in rows.iter().enumerate() {
        let (x, y) = (n % SWATCH_COLUMNS, n / SWATCH_COLUMNS);
        img.fill_rect(x * SQUARE_SIZE, y * SQUARE_SIZE, SQUARE_SIZE, SQUARE_SIZE, row.srgb);
    }
    img
}

fn csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("I,X,Y,Z,R,G,B\n");
    for r in rows {
        writeln!(
            out,
            "{:.6},{:.6},{:.6},{:.6},{},{},{}",
            r.index, r.xyz.x, r.xyz.y, r.xyz.z, r.srgb.r, r.srgb.g, r.srgb.b
        )
        .unwrap();
    }
    out
}

fn continuity(rows: &[SweepRow]) -> (f64, f64) {
    let adjacent = rows.windows(2).map(|w| w[0].srgb.distance(&w[1].srgb)).fold(0.0, f64::max);
    let mut lo = [u8::MAX; 3];
    let mut hi = [0u8; 3];
    for r in rows {
        for (c, v) in r.srgb.channels().into_iter().enumerate() {
            lo[c] = lo[c].min(v);
            hi[c] = hi[c].max(v);
        }
    }
    let span = if rows.is_empty() {
        0.0
    } else {
        SrgbColor::new(lo[0], lo[1], lo[2]).distance(&SrgbColor::new(hi[0], hi[1], hi[2]))
    };
    (adjacent, span)
}

/// Sweeps the modulation index, writing the WAV, the swatch grid, the CSV
/// and a run log.
pub fn run_fm_path(cfg: &FmPathConfig) -> Result<FmPathReport, PipelineError> {
    cfg.validate()?;
    let grid = super::index_grid(cfg.index_start, cfg.index_end, cfg.index_step)?;
    let map = OctaveMap::with_orientation(cfg.base_hz, cfg.orientation())?;
    let rows = sweep_colors(cfg.carrier_hz, cfg.modulator_hz, &grid, &map, cfg.tail_tolerance)?;

    let nyquist = f64::from(cfg.sample_rate) / 2.0;
    let mut aliased = Vec::new();
    for &i in &grid {
        let top = FmParams::new(cfg.carrier_hz, cfg.modulator_hz, i)?.highest_sideband_hz()?;
        if top >= nyquist {
            aliased.push((i, top));
        }
    }
    if let (Some(first), Some(last)) = (aliased.first(), aliased.last()) {
        warn!(
            "{} of {} segments alias (I = {} to {}, top sideband up to {:.0} Hz, Nyquist {} Hz)",
            aliased.len(),
            grid.len(),
            first.0,
            last.0,
            aliased.iter().map(|a| a.1).fold(0.0, f64::max),
            nyquist
        );
    }
    let wave = render_fm_path(
        cfg.carrier_hz,
        cfg.modulator_hz,
        &grid,
        cfg.segment_duration_sec,
        cfg.sample_rate,
        AliasPolicy::Allow,
    )?;
    write_wav(&wave, &cfg.out_wav)?;
    swatch_grid(&rows).write(&cfg.out_img)?;
    write_text(&cfg.out_csv, &csv(&rows))?;

    let (max_adjacent_distance, color_span) = continuity(&rows);
    let report = FmPathReport {
        audio_samples: wave.len(),
        audio_duration_sec: wave.duration_sec(),
        aliased_segments: aliased.len(),
        max_adjacent_distance,
        color_span,
        rows,
    };
    write_text(&cfg.out_log, &run_log(cfg, &report))?;
    info!(
        "{} colours, {:.3} s of audio, max adjacent distance {:.2} over span {:.2}",
        report.rows.len(),
        report.audio_duration_sec,
        max_adjacent_distance,
        color_span
    );
    Ok(report)
}

fn run_log(cfg: &FmPathConfig, report: &FmPathReport) -> String {
    let mut out = String::new();
    writeln!(out, "fm-path").unwrap();
    writeln!(out, "carrier_hz = {}", cfg.carrier_hz).unwrap();
    writeln!(out, "modulator_hz = {}", cfg.modulator_hz).unwrap();
    writeln!(out, "index = {} to {} step {}", cfg.index_start, cfg.index_end, cfg.index_step).unwrap();
    writeln!(out, "octave_base_hz = {}", cfg.base_hz).unwrap();
    writeln!(out, "orientation = {:?}", cfg.orientation()).unwrap();
    writeln!(out, "sample_rate = {}", cfg.sample_rate).unwrap();
    writeln!(out, "segment_duration_sec = {}", cfg.segment_duration_sec).unwrap();
    writeln!(out, "tail_tolerance = {:e}", cfg.tail_tolerance).unwrap();
    writeln!(out, "audio_samples = {}", report.audio_samples).unwrap();
    writeln!(out, "audio_duration_sec = {}", report.audio_duration_sec).unwrap();
    writeln!(out, "aliased_segments = {}", report.aliased_segments).unwrap();
    writeln!(out, "max_adjacent_srgb_distance = {:.4}", report.max_adjacent_distance).unwrap();
    writeln!(out, "srgb_span = {:.4}", report.color_span).unwrap();
    writeln!(out, "\nI,N,weight_sum").unwrap();
    for r in &report.rows {
        writeln!(out, "{:.6},{},{:.9}", r.index, r.max_order, r.weight).unwrap();
    }
    out
}
