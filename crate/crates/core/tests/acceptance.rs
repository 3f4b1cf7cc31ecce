//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::strategies;
use timbre_color::bessel::{bessel_j, bessel_row, DEFAULT_TAIL_TOLERANCE};
use timbre_color::colorimetry::{average_xyz, ColorMatchingTable, OctaveMap, SrgbColor};
use timbre_color::gesture::{adsr_gesture, map_gesture, map_path, AdsrParams, Gesture, SampledPath};
use timbre_color::pipeline::{run_fm_path, run_wav2color, scale_color, sweep_colors, FmPathConfig, Wav2ColorConfig};
use timbre_color::spectrum::{fm_sidebands, fold_spectrum};
use timbre_color::timbre::{analyze_harmonics, read_wav, render_fm_wave, write_wav, FmParams};

type Outcome = Result<String, String>;

fn runner() -> TestRunner {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sweep_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = FmPathConfig {
        out_wav: dir.path().join("sweep.wav"),
        out_img: dir.path().join("sweep.ppm"),
        out_csv: dir.path().join("sweep.csv"),
        out_log: dir.path().join("sweep.log"),
        ..FmPathConfig::default()
    };
    let start = Instant::now();
    let report = run_fm_path(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();

    let csv = std::fs::read_to_string(&cfg.out_csv).map_err(|e| e.to_string())?;
    let csv_rows = csv.lines().count() - 1;
    let grid_exact = report.rows.iter().enumerate().all(|(n, r)| r.index == n as f64 / 10.0);
    let wave = read_wav(&cfg.out_wav).map_err(|e| e.to_string())?;
    let seconds = wave.duration_sec();
    check(
        report.rows.len() == 201
            && csv_rows == 201
            && grid_exact
            && wave.sample_rate() == 44100
            && wave.len() == 201 * 4410
            && (seconds - 20.1).abs() < 1e-9
            && elapsed < 30.0,
        format!(
            "{} rows (csv {csv_rows}, I = n/10 exact: {grid_exact}), {} samples = {seconds} s at {} Hz, {elapsed:.2} s runtime",
            report.rows.len(),
            wave.len(),
            wave.sample_rate()
        ),
    )
}

fn bessel_energy_and_series() -> Outcome {
    let mut worst_deficit: f64 = 0.0;
    for index in [0.0, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let row = bessel_row(index, DEFAULT_TAIL_TOLERANCE).map_err(|e| e.to_string())?;
        // Direct summation, independent of the row's own energy().
        let v = row.values();
        let sum = v[0] * v[0] + 2.0 * v[1..].iter().map(|j| j * j).sum::<f64>();
        let deficit = 1.0 - sum;
        if !(deficit < 1e-10) {
            return Err(format!("I = {index}: 1 - sum = {deficit:e} at N = {}", row.max_order()));
        }
        worst_deficit = worst_deficit.max(deficit);
    }
    let mut worst: f64 = 0.0;
    let mut at = (0, 0.0);
    for order in 0..=30u32 {
        for step in 0..=96 {
            let x = f64::from(step) * 0.125;
            let got = bessel_j(order as i32, x).map_err(|e| e.to_string())?;
            let err = (got - common::bessel_series(order, x, 60)).abs();
            if err > worst {
                worst = err;
                at = (order, x);
            }
        }
    }
    check(
        worst <= 1e-12,
        format!(
            "max 1 - sum J_n^2 = {worst_deficit:.2e}; max |J - 60-term oracle| = {worst:.2e} at J_{}({}) over n <= 30, x in [0, 12]",
            at.0, at.1
        ),
    )
}

fn series_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for index in [0.0, 0.5, 1.0, 2.0, 5.0, 7.5, 10.0] {
        let params = FmParams::new(440.0, 880.0, index).map_err(|e| e.to_string())?;
        let wave = render_fm_wave(&params, 1.0, 44100).map_err(|e| e.to_string())?;
        let row = bessel_row(index, DEFAULT_TAIL_TOLERANCE).map_err(|e| e.to_string())?;
        for (k, &s) in wave.samples().iter().enumerate() {
            let t = k as f64 / 44100.0;
            worst = worst.max((s - common::bessel_resynthesis(440.0, 880.0, row.values(), t)).abs());
        }
    }
    check(worst < 1e-6, format!("max |wave - Bessel series| = {worst:.2e} over 1 s at 44.1 kHz, I <= 10"))
}

fn analysis_oracle() -> Outcome {
    let params = FmParams::new(440.0, 880.0, 2.0).map_err(|e| e.to_string())?;
    let wave = render_fm_wave(&params, 1.0, 44100).map_err(|e| e.to_string())?;
    let analysed = analyze_harmonics(&wave, 440.0, 50).map_err(|e| e.to_string())?;
    let folded = fold_spectrum(&fm_sidebands(440.0, 880.0, 2.0, DEFAULT_TAIL_TOLERANCE).map_err(|e| e.to_string())?);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for line in folded.lines().iter().filter(|l| l.amplitude.abs() >= 1e-3) {
        let got = analysed
            .line_at(line.frequency)
            .ok_or_else(|| format!("no analysed line at {} Hz", line.frequency))?;
        worst = worst.max((got.amplitude - line.amplitude.abs()).abs() / line.amplitude.abs());
        checked += 1;
    }
    check(worst <= 1e-3, format!("{checked} lines >= 1e-3, max relative magnitude error {worst:.2e}"))
}

fn whiteness() -> Outcome {
    let cmf = ColorMatchingTable::cie1931();
    let wavelengths = (0..81).map(|k| (380.0 + 5.0 * f64::from(k), 1.0));
    let (xyz, weight) = average_xyz(wavelengths, &cmf).map_err(|e| e.to_string())?;
    let (x, y) = xyz.chromaticity();

    // Direct summation over the table file.
    let rows = common::cmf_rows();
    let sums = rows.iter().fold([0.0; 3], |s, r| [s[0] + r[1], s[1] + r[2], s[2] + r[3]]);
    let total = sums[0] + sums[1] + sums[2];
    let (ox, oy) = (sums[0] / total, sums[1] / total);

    let third = 1.0 / 3.0;
    let dist = ((x - third).powi(2) + (y - third).powi(2)).sqrt();
    check(
        weight == 81.0 && dist <= 0.02 && (x - ox).abs() < 1e-12 && (y - oy).abs() < 1e-12,
        format!("81 flat lines -> (x, y) = ({x:.4}, {y:.4}), {dist:.4} from (1/3, 1/3); direct sum ({ox:.4}, {oy:.4})"),
    )
}

fn functor_laws() -> Outcome {
    let strategy = strategies::composable(12)
        .prop_flat_map(|(d, s, t)| (Just(s), Just(t), strategies::point_map(d), strategies::point(d), 2..10usize));
    runner()
        .run(&strategy, |(s, t, f, x, n)| {
            let f = |p: &[f64]| f.apply(p);
            let (s, t) = (SampledPath::new(s).unwrap(), SampledPath::new(t).unwrap());
            let lhs = map_path(f, &s.concatenate(&t).unwrap()).unwrap();
            let rhs = map_path(f, &s).unwrap().concatenate(&map_path(f, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let constant = map_path(f, &SampledPath::constant(&x, n).unwrap()).unwrap();
            prop_assert_eq!(constant, SampledPath::constant(&f(&x).unwrap(), n).unwrap());
            Ok(())
        })
        .map(|()| "1000 random path pairs and maps: composition and identities preserved exactly".into())
        .map_err(|e| e.to_string())
}

fn endpoint_gap(g: &Gesture) -> f64 {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    g.digraph()
        .arrows()
        .iter()
        .zip(g.arrow_paths())
        .map(|(&(s, t), c)| dist(c.first(), &g.vertex_points()[s]).max(dist(c.last(), &g.vertex_points()[t])))
        .fold(0.0, f64::max)
}

fn gesture_endpoint_law() -> Outcome {
    let level = 0.0..=1.0f64;
    let duration = 1e-4..2.0f64;
    let strategy = (
        (level.clone(), level, duration.clone(), duration.clone(), duration.clone(), duration),
        2..40usize,
        strategies::point_map(2),
        any::<[u8; 3]>(),
    );
    let worst = std::cell::Cell::new(0.0f64);
    let result = runner().run(&strategy, |((al, sl, a, d, s, r), samples, f, base)| {
        let params = AdsrParams { attack_level: al, sustain_level: sl, attack: a, decay: d, sustain: s, release: r };
        let g = adsr_gesture(&params, samples).unwrap();
        prop_assert!(g.revalidate().is_ok());
        let images = [
            map_gesture(|p: &[f64]| f.apply(p), &g).unwrap(),
            map_gesture(scale_color(SrgbColor::new(base[0], base[1], base[2])), &g).unwrap(),
        ];
        for image in &images {
            prop_assert!(image.revalidate().is_ok());
        }
        let gap = [&g, &images[0], &images[1]].iter().map(|h| endpoint_gap(h)).fold(0.0, f64::max);
        prop_assert!(gap <= 1e-9, "endpoint gap {}", gap);
        worst.set(worst.get().max(gap));
        Ok(())
    });
    result
        .map(|()| format!("1000 random envelopes and their images revalidate; max endpoint gap {:.1e}", worst.get()))
        .map_err(|e| e.to_string())
}

fn octave_endpoints() -> Outcome {
    let map = OctaveMap::default();
    let low = map.wavelength(440.0).map_err(|e| e.to_string())?;
    let high = map.wavelength(880.0).map_err(|e| e.to_string())?;
    if low != 760.0 || high != 380.0 {
        return Err(format!("wavelength(440) = {low}, wavelength(880) = {high}"));
    }
    runner()
        .run(&(20.0..=20000.0f64), |g| {
            prop_assert_eq!(map.reduce(2.0 * g).unwrap(), map.reduce(g).unwrap());
            Ok(())
        })
        .map(|()| "wavelength(440) = 760, wavelength(880) = 380 exactly; reduce(2g) = reduce(g) for 1000 g".into())
        .map_err(|e| e.to_string())
}

fn cross_pipeline() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let wav = dir.path().join("fm2.wav");
    let params = FmParams::new(440.0, 880.0, 2.0).map_err(|e| e.to_string())?;
    write_wav(&render_fm_wave(&params, 1.0, 44100).map_err(|e| e.to_string())?, &wav).map_err(|e| e.to_string())?;
    let cfg = Wav2ColorConfig {
        input: wav,
        fundamental_hz: 440.0,
        out_img: dir.path().join("swatch.ppm"),
        out_csv: dir.path().join("swatch.csv"),
        ..Wav2ColorConfig::default()
    };
    let analysed = run_wav2color(&cfg).map_err(|e| e.to_string())?.srgb;
    let direct = sweep_colors(440.0, 880.0, &[2.0], &OctaveMap::default(), DEFAULT_TAIL_TOLERANCE)
        .map_err(|e| e.to_string())?[0]
        .srgb;
    let diff = analysed
        .channels()
        .iter()
        .zip(direct.channels())
        .map(|(&a, b)| (i16::from(a) - i16::from(b)).abs())
        .max()
        .unwrap();
    check(diff <= 2, format!("wav2color #{analysed} vs direct #{direct}, max channel difference {diff}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("index sweep: 201 rows, 20.1 s audio, under 30 s", sweep_reproduction),
        ("Bessel energy identity and series agreement", bessel_energy_and_series),
        ("FM wave equals its Bessel series", series_identity),
        ("harmonic analysis matches folded sidebands", analysis_oracle),
        ("flat spectrum is white", whiteness),
        ("path functor laws", functor_laws),
        ("gesture endpoint law", gesture_endpoint_law),
        ("octave map endpoints and invariance", octave_endpoints),
        ("wav2color agrees with the direct route", cross_pipeline),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", n + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
