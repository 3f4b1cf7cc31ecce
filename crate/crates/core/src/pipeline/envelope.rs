use log::info;

use super::{write_text, EnvelopeConfig, PipelineError};
use crate::colorimetry::{quantize, SrgbColor};
use crate::gesture::{adsr_gesture, format_gesture, map_gesture, Gesture, GestureError};
use crate::ppm::Image;

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    /// The envelope in the (time, amplitude) plane.
    pub envelope: Gesture,
    /// Its image in encoded sRGB space, channels in `[0, 1]`.
    pub colors: Gesture,
    pub strip: Image,
}

/// `(t, a) -> a * base`, with `base` in encoded sRGB scaled to `[0, 1]`.
pub fn scale_color(base: SrgbColor) -> impl Fn(&[f64]) -> Result<Vec<f64>, GestureError> {
    move |p: &[f64]| {
        let a = p[1];
        Ok(base.channels().iter().map(|&c| a * f64::from(c) / 255.0).collect())
    }
}

/// Samples the colour gesture at evenly spaced times, one pixel column each.
///
/// Column `x` sits at `t = (x + 1/2) / width * T`. Colours are interpolated
/// linearly between the samples of the arrow path that spans `t`, using the
/// envelope gesture's time coordinates.
pub fn envelope_strip(envelope: &Gesture, colors: &Gesture, width: usize, height: usize) -> Image {
    let mut img = Image::new(width, height, SrgbColor::BLACK);
    let paths = envelope.arrow_paths();
    let end = paths.last().map_or(0.0, |p| p.last()[0]);
    let mut arrow = 0;
    let mut sample = 0;
    for x in 0..width {
        let t = (x as f64 + 0.5) / width as f64 * end;
        while arrow + 1 < paths.len() && t > paths[arrow].last()[0] {
            arrow += 1;
            sample = 0;
        }
        let times = &paths[arrow];
        while sample + 2 < times.len() && t > times.point(sample + 1)[0] {
            sample += 1;
        }
        let (t0, t1) = (times.point(sample)[0], times.point(sample + 1)[0]);
        let u = if t1 > t0 { ((t - t0) / (t1 - t0)).clamp(0.0, 1.0) } else { 0.0 };
        let mapped = &colors.arrow_paths()[arrow];
        let (c0, c1) = (mapped.point(sample), mapped.point(sample + 1));
        let ch: Vec<u8> = c0.iter().zip(c1).map(|(a, b)| quantize(a + u * (b - a))).collect();
        img.fill_rect(x, 0, 1, height, SrgbColor::new(ch[0], ch[1], ch[2]));
    }
    img
}

/// Builds the ADSR gesture, carries it into colour space, and writes the
/// colour gesture and a strip image.
pub fn run_envelope_transfer(cfg: &EnvelopeConfig) -> Result<EnvelopeReport, PipelineError> {
    cfg.validate()?;
    let envelope = adsr_gesture(&cfg.adsr, cfg.samples_per_segment)?;
    let colors = map_gesture(scale_color(cfg.color), &envelope)?;
    colors.revalidate()?;
    let strip = envelope_strip(&envelope, &colors, cfg.strip_width, cfg.strip_height);
    write_text(&cfg.out_gesture, &format_gesture(&colors))?;
    strip.write(&cfg.out_img)?;
    info!("envelope on #{} over {:.3} s", cfg.color, cfg.adsr.vertex_times()[4]);
    Ok(EnvelopeReport { envelope, colors, strip })
}
