#![no_main]

use libfuzzer_sys::fuzz_target;
use timbre_color::ppm::Image;

fuzz_target!(|bytes: &[u8]| {
    if let Ok(img) = Image::decode(bytes) {
        assert_eq!(Image::decode(&img.encode()).unwrap(), img);
    }
});
