//! RIFF/WAVE, PCM format 1, mono, 16-bit little-endian.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use super::SampledWave;

const PCM_FORMAT: u16 = 1;
const HEADER_LEN: usize = 44;
const FULL_SCALE: f64 = 32767.0;

#[derive(Debug, Error)]
pub enum WavError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("missing {0:?} chunk")]
    MissingChunk(&'static str),
    #[error("{chunk:?} chunk declares {declared} bytes but only {available} remain")]
    TruncatedChunk { chunk: String, declared: usize, available: usize },
    #[error("unsupported {field} = {value} (need {expected})")]
    Unsupported { field: &'static str, value: u32, expected: u32 },
    #[error("inconsistent header: {0}")]
    InvalidHeader(String),
    #[error("sample {index} = {value} outside [-1, 1]")]
    SampleOutOfRange { index: usize, value: f64 },
}

/// The whole file, header included.
pub fn encode_wav(wave: &SampledWave) -> Result<Vec<u8>, WavError> {
    let data_len = wave.len() * 2;
    if data_len > (u32::MAX as usize) - 36 {
        return Err(WavError::InvalidHeader(format!("{} samples do not fit a RIFF file", wave.len())));
    }
    let rate = wave.sample_rate();
    let mut out = Vec::with_capacity(HEADER_LEN + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&PCM_FORMAT.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // channels
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&(rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for (index, &value) in wave.samples().iter().enumerate() {
        if !(-1.0..=1.0).contains(&value) {
            return Err(WavError::SampleOutOfRange { index, value });
        }
        let q = (value * FULL_SCALE).round() as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    Ok(out)
}

pub fn write_wav(wave: &SampledWave, path: impl AsRef<Path>) -> Result<(), WavError> {
    fs::write(path, encode_wav(wave)?)?;
    Ok(())
}

pub fn read_wav(path: impl AsRef<Path>) -> Result<SampledWave, WavError> {
    decode_wav(&fs::read(path)?)
}

struct Format {
    sample_rate: u32,
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn parse_format(body: &[u8]) -> Result<Format, WavError> {
    if body.len() < 16 {
        return Err(WavError::TruncatedChunk { chunk: "fmt ".into(), declared: 16, available: body.len() });
    }
    let audio_format = u16_at(body, 0);
    let channels = u16_at(body, 2);
    let sample_rate = u32_at(body, 4);
    let byte_rate = u32_at(body, 8);
    let block_align = u16_at(body, 12);
    let bits = u16_at(body, 14);
    if audio_format != PCM_FORMAT {
        return Err(WavError::Unsupported { field: "audio_format", value: audio_format.into(), expected: 1 });
    }
    if channels != 1 {
        return Err(WavError::Unsupported { field: "channels", value: channels.into(), expected: 1 });
    }
    if bits != 16 {
        return Err(WavError::Unsupported { field: "bits_per_sample", value: bits.into(), expected: 16 });
    }
    if sample_rate == 0 {
        return Err(WavError::InvalidHeader("sample_rate is 0".into()));
    }
    if block_align != 2 {
        return Err(WavError::InvalidHeader(format!("block_align {block_align}, expected 2")));
    }
    if u64::from(byte_rate) != u64::from(sample_rate) * 2 {
        return Err(WavError::InvalidHeader(format!("byte_rate {byte_rate} != 2 * sample_rate {sample_rate}")));
    }
    Ok(Format { sample_rate })
}

/// Decodes a complete file image. Chunks other than `fmt ` and `data` are
/// skipped.
pub fn decode_wav(bytes: &[u8]) -> Result<SampledWave, WavError> {
    if bytes.len() < 8 || &bytes[0..4] != b"RIFF" {
        return Err(WavError::MissingChunk("RIFF"));
    }
    if bytes.len() < 12 || &bytes[8..12] != b"WAVE" {
        return Err(WavError::MissingChunk("WAVE"));
    }
    let declared = u32_at(bytes, 4) as usize;
    // Trust the smaller of the declared RIFF size and the actual length.
    let end = bytes.len().min(declared.saturating_add(8));

    let mut format: Option<Format> = None;
    let mut pos = 12;
    while pos + 8 <= end {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let available = end - body_start;
        match id {
            b"fmt " => {
                if size > available {
                    return Err(WavError::TruncatedChunk { chunk: "fmt ".into(), declared: size, available });
                }
                format = Some(parse_format(&bytes[body_start..body_start + size])?);
            }
            b"data" => {
                let fmt = format.ok_or(WavError::MissingChunk("fmt "))?;
                if size > available {
                    return Err(WavError::TruncatedChunk { chunk: "data".into(), declared: size, available });
                }
                if !size.is_multiple_of(2) {
                    return Err(WavError::InvalidHeader(format!("data size {size} is not a whole number of samples")));
                }
                let samples = bytes[body_start..body_start + size]
                    .chunks_exact(2)
                    .map(|c| (f64::from(i16::from_le_bytes([c[0], c[1]])) / FULL_SCALE).max(-1.0))
                    .collect();
                return Ok(SampledWave::new(fmt.sample_rate, samples).expect("decoded samples are finite"));
            }
            _ => {
                if size > available {
                    let chunk = String::from_utf8_lossy(id).into_owned();
                    return Err(WavError::TruncatedChunk { chunk, declared: size, available });
                }
            }
        }
        // Chunks are padded to even length.
        pos = body_start.saturating_add(size).saturating_add(size & 1);
    }
    Err(WavError::MissingChunk(if format.is_some() { "data" } else { "fmt " }))
}
