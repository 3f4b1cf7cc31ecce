#![no_main]

use libfuzzer_sys::fuzz_target;
use timbre_color::gesture::{format_gesture, parse_gesture};

fuzz_target!(|text: &str| {
    if let Ok(g) = parse_gesture(text) {
        g.revalidate().unwrap();
        assert_eq!(parse_gesture(&format_gesture(&g)).unwrap(), g);
    }
});
