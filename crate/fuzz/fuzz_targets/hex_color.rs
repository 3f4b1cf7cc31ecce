#![no_main]

use libfuzzer_sys::fuzz_target;
use timbre_color::colorimetry::SrgbColor;

fuzz_target!(|text: &str| {
    if let Ok(c) = text.parse::<SrgbColor>() {
        assert_eq!(c.to_string().parse::<SrgbColor>().unwrap(), c);
    }
});
