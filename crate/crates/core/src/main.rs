use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use log::error;

use timbre_color::colorimetry::SrgbColor;
use timbre_color::pipeline::{
    read_config_file, run_envelope_transfer, run_fm_path, run_wav2color, ConfigEntry, EnvelopeConfig,
    FmPathConfig, Wav2ColorConfig,
};

#[derive(Parser)]
#[command(version, about = "Colours of FM timbres, WAV harmonics, and envelope gestures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the modulation index; write audio, a swatch grid, and a CSV.
    FmPath(FmPathArgs),
    /// Colour of a recorded tone from its harmonics.
    Wav2color(Wav2ColorArgs),
    /// Carry an ADSR envelope onto a single colour.
    EnvelopeTransfer(EnvelopeArgs),
}

#[derive(Args)]
struct FmPathArgs {
    /// key = value file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_name = "HZ")]
    fc: Option<f64>,
    #[arg(long, value_name = "HZ")]
    fm: Option<f64>,
    #[arg(long, value_name = "R")]
    i_start: Option<f64>,
    #[arg(long, value_name = "R")]
    i_end: Option<f64>,
    #[arg(long, value_name = "R")]
    i_step: Option<f64>,
    /// Octave base frequency
    #[arg(long, value_name = "HZ")]
    base: Option<f64>,
    #[arg(long, value_name = "N")]
    rate: Option<u32>,
    /// Seconds of audio per index value
    #[arg(long, value_name = "S")]
    seg_dur: Option<f64>,
    /// Map the octave base to violet instead of red
    #[arg(long)]
    flip_orientation: bool,
    #[arg(long, value_name = "P")]
    out_wav: Option<PathBuf>,
    #[arg(long, value_name = "P")]
    out_img: Option<PathBuf>,
    #[arg(long, value_name = "P")]
    out_csv: Option<PathBuf>,
    #[arg(long, value_name = "P")]
    out_log: Option<PathBuf>,
}

#[derive(Args)]
struct Wav2ColorArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "in", value_name = "P")]
    input: Option<PathBuf>,
    #[arg(long, value_name = "HZ")]
    fundamental: Option<f64>,
    #[arg(long, value_name = "N")]
    max_harmonic: Option<u32>,
    #[arg(long, value_name = "HZ")]
    base: Option<f64>,
    #[arg(long)]
    flip_orientation: bool,
    #[arg(long, value_name = "P")]
    out_img: Option<PathBuf>,
    #[arg(long, value_name = "P")]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct EnvelopeArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base colour, RRGGBB
    #[arg(long, value_name = "RRGGBB")]
    color: Option<SrgbColor>,
    #[arg(long, value_name = "R")]
    attack_level: Option<f64>,
    #[arg(long, value_name = "S")]
    attack: Option<f64>,
    #[arg(long, value_name = "S")]
    decay: Option<f64>,
    #[arg(long, value_name = "R")]
    sustain_level: Option<f64>,
    #[arg(long, value_name = "S")]
    sustain: Option<f64>,
    #[arg(long, value_name = "S")]
    release: Option<f64>,
    #[arg(long, value_name = "N")]
    samples_per_segment: Option<usize>,
    #[arg(long, value_name = "N")]
    strip_width: Option<usize>,
    #[arg(long, value_name = "N")]
    strip_height: Option<usize>,
    #[arg(long, value_name = "P")]
    out_gesture: Option<PathBuf>,
    #[arg(long, value_name = "P")]
    out_img: Option<PathBuf>,
}

fn config_entries(path: &Option<PathBuf>) -> Result<Vec<ConfigEntry>> {
    match path {
        Some(p) => Ok(read_config_file(p)?),
        None => Ok(Vec::new()),
    }
}

fn set<T>(field: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *field = v;
    }
}

fn fm_path(a: FmPathArgs) -> Result<()> {
    let mut cfg = FmPathConfig::default();
    cfg.apply(&config_entries(&a.config)?)?;
    set(&mut cfg.carrier_hz, a.fc);
    set(&mut cfg.modulator_hz, a.fm);
    set(&mut cfg.index_start, a.i_start);
    set(&mut cfg.index_end, a.i_end);
    set(&mut cfg.index_step, a.i_step);
    set(&mut cfg.base_hz, a.base);
    set(&mut cfg.sample_rate, a.rate);
    set(&mut cfg.segment_duration_sec, a.seg_dur);
    cfg.flip_orientation |= a.flip_orientation;
    set(&mut cfg.out_wav, a.out_wav);
    set(&mut cfg.out_img, a.out_img);
    set(&mut cfg.out_csv, a.out_csv);
    set(&mut cfg.out_log, a.out_log);
    let report = run_fm_path(&cfg).context("fm-path failed")?;
    println!(
        "{} colours -> {}, {:.2} s audio -> {}, table -> {}, log -> {}",
        report.rows.len(),
        cfg.out_img.display(),
        report.audio_duration_sec,
        cfg.out_wav.display(),
        cfg.out_csv.display(),
        cfg.out_log.display()
    );
    Ok(())
}

fn wav2color(a: Wav2ColorArgs) -> Result<()> {
    let mut cfg = Wav2ColorConfig::default();
    cfg.apply(&config_entries(&a.config)?)?;
    set(&mut cfg.input, a.input);
    set(&mut cfg.fundamental_hz, a.fundamental);
    if a.max_harmonic.is_some() {
        cfg.max_harmonic = a.max_harmonic;
    }
    set(&mut cfg.base_hz, a.base);
    cfg.flip_orientation |= a.flip_orientation;
    set(&mut cfg.out_img, a.out_img);
    set(&mut cfg.out_csv, a.out_csv);
    let report = run_wav2color(&cfg).with_context(|| format!("wav2color on {} failed", cfg.input.display()))?;
    println!("#{} from {} lines", report.srgb, report.spectrum.lines().len());
    Ok(())
}

fn envelope(a: EnvelopeArgs) -> Result<()> {
    let mut cfg = EnvelopeConfig::default();
    cfg.apply(&config_entries(&a.config)?)?;
    set(&mut cfg.color, a.color);
    set(&mut cfg.adsr.attack_level, a.attack_level);
    set(&mut cfg.adsr.attack, a.attack);
    set(&mut cfg.adsr.decay, a.decay);
    set(&mut cfg.adsr.sustain_level, a.sustain_level);
    set(&mut cfg.adsr.sustain, a.sustain);
    set(&mut cfg.adsr.release, a.release);
    set(&mut cfg.samples_per_segment, a.samples_per_segment);
    set(&mut cfg.strip_width, a.strip_width);
    set(&mut cfg.strip_height, a.strip_height);
    set(&mut cfg.out_gesture, a.out_gesture);
    set(&mut cfg.out_img, a.out_img);
    run_envelope_transfer(&cfg).context("envelope-transfer failed")?;
    println!("gesture -> {}, strip -> {}", cfg.out_gesture.display(), cfg.out_img.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::FmPath(a) => fm_path(a),
        Command::Wav2color(a) => wav2color(a),
        Command::EnvelopeTransfer(a) => envelope(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            error!("{e:#}");
            ExitCode::FAILURE
        }
    }
}
