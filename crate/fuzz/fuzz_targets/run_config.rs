#![no_main]

use libfuzzer_sys::fuzz_target;
use timbre_color::pipeline::{parse_config_text, EnvelopeConfig, FmPathConfig, Wav2ColorConfig};

fuzz_target!(|text: &str| {
    if let Ok(entries) = parse_config_text(text) {
        let mut fm = FmPathConfig::default();
        if fm.apply(&entries).is_ok() {
            let _ = fm.validate();
        }
        let mut wav = Wav2ColorConfig::default();
        if wav.apply(&entries).is_ok() {
            let _ = wav.validate();
        }
        let mut env = EnvelopeConfig::default();
        if env.apply(&entries).is_ok() {
            let _ = env.validate();
        }
    }
});
