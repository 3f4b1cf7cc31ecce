#![no_main]

use libfuzzer_sys::fuzz_target;
use timbre_color::timbre::{decode_wav, encode_wav};

fuzz_target!(|bytes: &[u8]| {
    if let Ok(wave) = decode_wav(bytes) {
        assert!(wave.samples().iter().all(|s| (-1.0..=1.0).contains(s)));
        // Decoded samples sit on the 16-bit grid, so re-encoding is lossless.
        let again = decode_wav(&encode_wav(&wave).unwrap()).unwrap();
        assert_eq!(again, wave);
    }
});
