//! Maps FM timbres to colours through an octave-to-wavelength bijection and
//! the CIE 1931 observer, analyses recorded tones into line spectra, and
//! moves envelopes between spaces as digraph gestures.

// `!(x > 0.0)` style guards are how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod colorimetry;
pub mod gesture;
pub mod pipeline;
pub mod ppm;
pub mod spectrum;
pub mod timbre;
