//! Parser entry points on arbitrary and mutated input. Mirrors the fuzz
//! targets so their invariants are checked on stable as well.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use timbre_color::colorimetry::{ColorMatchingTable, SrgbColor};
use timbre_color::gesture::{format_gesture, parse_gesture};
use timbre_color::pipeline::{parse_config_text, EnvelopeConfig, FmPathConfig, Wav2ColorConfig};
use timbre_color::ppm::Image;
use timbre_color::timbre::{decode_wav, encode_wav};

fn cmf_table(text: &str) {
    if let Ok(table) = ColorMatchingTable::parse(text) {
        for e in table.entries() {
            table.xyz_at(e.wavelength).unwrap();
        }
    }
}

fn wav_decode(bytes: &[u8]) {
    if let Ok(wave) = decode_wav(bytes) {
        assert!(wave.samples().iter().all(|s| (-1.0..=1.0).contains(s)));
        assert_eq!(decode_wav(&encode_wav(&wave).unwrap()).unwrap(), wave);
    }
}

fn gesture_text(text: &str) {
    if let Ok(g) = parse_gesture(text) {
        g.revalidate().unwrap();
        assert_eq!(parse_gesture(&format_gesture(&g)).unwrap(), g);
    }
}

fn run_config(text: &str) {
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
}

fn ppm_decode(bytes: &[u8]) {
    if let Ok(img) = Image::decode(bytes) {
        assert_eq!(Image::decode(&img.encode()).unwrap(), img);
    }
}

fn hex_color(text: &str) {
    if let Ok(c) = text.parse::<SrgbColor>() {
        assert_eq!(c.to_string().parse::<SrgbColor>().unwrap(), c);
    }
}

fn run(target: &str, bytes: &[u8]) {
    let text = std::str::from_utf8(bytes);
    match target {
        "wav_decode" => wav_decode(bytes),
        "ppm_decode" => ppm_decode(bytes),
        _ => {
            // libFuzzer's &str targets skip non-UTF-8 inputs too.
            let Ok(text) = text else { return };
            match target {
                "cmf_table" => cmf_table(text),
                "gesture_text" => gesture_text(text),
                "run_config" => run_config(text),
                "hex_color" => hex_color(text),
                other => panic!("unknown target {other}"),
            }
        }
    }
}

const TARGETS: [&str; 6] = ["cmf_table", "wav_decode", "gesture_text", "run_config", "ppm_decode", "hex_color"];

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<Vec<u8>> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_seeds_parse() {
    // Every seed except the truncated table prefix is a valid input, so the
    // round trips above are exercised.
    let table = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/cmf_table/full_table")).unwrap();
    assert_eq!(ColorMatchingTable::parse(&table).unwrap().entries().len(), 81);
    for bytes in seeds("wav_decode") {
        decode_wav(&bytes).unwrap();
    }
    for bytes in seeds("gesture_text") {
        parse_gesture(std::str::from_utf8(&bytes).unwrap()).unwrap();
    }
    for bytes in seeds("run_config") {
        parse_config_text(std::str::from_utf8(&bytes).unwrap()).unwrap();
    }
    for bytes in seeds("ppm_decode") {
        Image::decode(&bytes).unwrap();
    }
    for bytes in seeds("hex_color") {
        std::str::from_utf8(&bytes).unwrap().parse::<SrgbColor>().unwrap();
    }
}

#[derive(Debug, Clone)]
enum Edit {
    Flip(usize, u8),
    Truncate(usize),
    Insert(usize, Vec<u8>),
    Remove(usize, usize),
}

fn edit() -> impl Strategy<Value = Edit> {
    prop_oneof![
        (any::<usize>(), any::<u8>()).prop_map(|(i, b)| Edit::Flip(i, b)),
        any::<usize>().prop_map(Edit::Truncate),
        (any::<usize>(), prop::collection::vec(any::<u8>(), 1..8)).prop_map(|(i, v)| Edit::Insert(i, v)),
        (any::<usize>(), 1usize..16).prop_map(|(i, n)| Edit::Remove(i, n)),
    ]
}

fn mutate(mut bytes: Vec<u8>, edits: &[Edit]) -> Vec<u8> {
    for e in edits {
        let len = bytes.len();
        match e {
            Edit::Flip(i, b) if len > 0 => bytes[i % len] ^= b,
            Edit::Truncate(i) => bytes.truncate(i % (len + 1)),
            Edit::Insert(i, v) => {
                let at = i % (len + 1);
                bytes.splice(at..at, v.iter().copied());
            }
            Edit::Remove(i, n) if len > 0 => {
                let at = i % len;
                bytes.drain(at..(at + n).min(len));
            }
            _ => {}
        }
    }
    bytes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..256)) {
        for t in TARGETS {
            run(t, &bytes);
        }
    }

    #[test]
    fn mutated_seeds_never_panic(
        which in any::<prop::sample::Index>(),
        target in prop::sample::select(TARGETS.to_vec()),
        edits in prop::collection::vec(edit(), 1..6),
    ) {
        let seeds = seeds(target);
        let seed = seeds[which.index(seeds.len())].clone();
        run(target, &mutate(seed, &edits));
    }
}
