#![no_main]

use libfuzzer_sys::fuzz_target;
use timbre_color::colorimetry::ColorMatchingTable;

fuzz_target!(|text: &str| {
    if let Ok(table) = ColorMatchingTable::parse(text) {
        for e in table.entries() {
            table.xyz_at(e.wavelength).unwrap();
        }
    }
});
