//! The three command-line runs: the FM index sweep, WAV analysis, and
//! envelope transfer. Each writes its artifacts and returns a report.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::colorimetry::ColorError;
use crate::gesture::GestureError;
use crate::ppm::PpmError;
use crate::spectrum::SpectrumError;
use crate::timbre::{TimbreError, WavError};

mod config;
mod envelope;
mod fm_path;
mod wav2color;

pub use config::{
    index_grid, parse_config_text, read_config_file, ConfigEntry, ConfigError, EnvelopeConfig, FmPathConfig,
    Wav2ColorConfig, MAX_GRID_POINTS,
};
pub use envelope::{envelope_strip, run_envelope_transfer, scale_color, EnvelopeReport};
pub use fm_path::{run_fm_path, sweep_colors, FmPathReport, SweepRow, SQUARE_SIZE, SWATCH_COLUMNS};
pub use wav2color::{default_max_harmonic, run_wav2color, Wav2ColorReport, MAX_DEFAULT_HARMONIC};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error(transparent)]
    Timbre(#[from] TimbreError),
    #[error(transparent)]
    Wav(#[from] WavError),
    #[error(transparent)]
    Image(#[from] PpmError),
    #[error(transparent)]
    Gesture(#[from] GestureError),
    #[error("writing {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), PipelineError> {
    fs::write(path, text).map_err(|source| PipelineError::Write { path: path.to_path_buf(), source })
}
