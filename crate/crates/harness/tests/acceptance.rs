//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use ris_harness::config::ConfigFile;
use ris_harness::experiments::{distance, plane, robustness, wavelength};
use ris_harness::validate;
use ris_harness::SceneConfig;
use ris_core::units::watts_to_dbm;

/// Criteria that fail for reasons recorded in the README; anything else
/// failing (or one of these passing) fails the target.
const KNOWN_DEVIATIONS: [u32; 1] = [9];

const ORACLE_RUNTIME_S: f64 = 30.0;
const SWEEP_RUNTIME_S: f64 = 60.0;
const BOUND_GAP_DB: f64 = 0.1;
const FLATNESS: f64 = 0.02;
const OCTAVE_DROP_DB: f64 = 6.02;
const OCTAVE_DROP_TOL_DB: f64 = 0.1;
const RIPPLES: usize = 8;
const RANDOM_PLANE_SCENES: usize = 500;
const RANDOM_TRIANGLES: usize = 100;
const SCAN_POINTS: usize = 10_000;

fn default_config() -> SceneConfig {
    ConfigFile::default().resolve().expect("default config")
}

fn criterion_1() -> (bool, String) {
    let start = Instant::now();
    let checks = validate::phase_oracle(&default_config()).expect("oracle runs");
    let secs = start.elapsed().as_secs_f64();
    let ok = checks.iter().all(|c| c.passed) && secs < ORACLE_RUNTIME_S;
    let detail = checks.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ");
    (ok, format!("{detail}; {secs:.2} s"))
}

fn criterion_2() -> (bool, String) {
    let start = Instant::now();
    let cfg = default_config();
    let points = distance::sweep(&cfg).expect("sweep runs");
    let secs = start.elapsed().as_secs_f64();
    let valid: Vec<_> = points.iter().filter(|p| p.far_field_ok).collect();
    let gap = |p: f64, b: f64| watts_to_dbm(b) - watts_to_dbm(p);
    let cf = valid.iter().map(|p| gap(p.closed_form, p.bound)).fold(0.0, f64::max);
    let svd = valid.iter().map(|p| gap(p.svd, p.bound)).fold(0.0, f64::max);
    let ok = !valid.is_empty() && cf <= BOUND_GAP_DB && svd <= BOUND_GAP_DB && secs < SWEEP_RUNTIME_S;
    (
        ok,
        format!(
            "{}x{} panel, d = {}..{} m, {}/{} points far-field valid; worst gap closed form {cf:.4} dB, SVD {svd:.4} dB (limit {BOUND_GAP_DB}); {secs:.2} s",
            cfg.rows,
            cfg.cols,
            cfg.distance.d_min,
            cfg.distance.d_max,
            valid.len(),
            points.len()
        ),
    )
}

fn check(c: validate::Check) -> (bool, String) {
    (c.passed, c.detail)
}

fn criterion_5() -> (bool, String) {
    let cfg = default_config();
    let a = validate::boundary_reduction_check(RANDOM_PLANE_SCENES, cfg.validate.seed, 150).expect("random scenes");
    let b = validate::fig7_check(&cfg).expect("plane scene");
    (a.passed && b.passed, format!("{}; {}", a.detail, b.detail))
}

fn criterion_7() -> (bool, String) {
    let mut f = ConfigFile::default();
    f.link.direct_link = true;
    let cfg = f.resolve().expect("config");
    let profile = plane::line_profile(&cfg).expect("profile");
    let n = plane::ripple_count(&profile, cfg.p_t);
    (
        n == RIPPLES && cfg.antennas == 16,
        format!(
            "{} antennas, line l from T' to {} m ({} samples): {n} cross-term maxima, expected {RIPPLES}",
            cfg.antennas, cfg.plane.line_x_max, cfg.plane.line_points
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let cfg = default_config();
    let w = &cfg.wavelength_sweep;
    let points = wavelength::sweep(&cfg).expect("sweep");
    let flat = wavelength::flatness(&points);
    let first = points.first().expect("points");
    let last = points.last().expect("points");
    let drop = watts_to_dbm(last.direct) - watts_to_dbm(first.direct);
    let octave = (w.lambda_max / w.lambda_min - 2.0).abs() < 1e-12;
    let ok = octave && flat <= FLATNESS && (drop - OCTAVE_DROP_DB).abs() <= OCTAVE_DROP_TOL_DB;
    (
        ok,
        format!(
            "lambda {}..{} m, {} points: RIS-link spread {:.3}% (limit {}%), direct-link drop {drop:.4} dB (target {OCTAVE_DROP_DB} +/- {OCTAVE_DROP_TOL_DB})",
            w.lambda_min,
            w.lambda_max,
            points.len(),
            100.0 * flat,
            100.0 * FLATNESS
        ),
    )
}

fn criterion_9() -> (bool, String) {
    let cfg = default_config();
    let m = robustness::map(&cfg).expect("map");
    let r = robustness::region(&m, cfg.robustness.threshold);
    (
        r.largest_square >= cfg.robustness.square,
        format!(
            "{}x{} panel at T', h = {} m: connected region p_hat < {} has {} samples, largest square {:.2} m (need {} m)",
            cfg.rows, cfg.cols, cfg.geometry.h1, cfg.robustness.threshold, r.cells, r.largest_square, cfg.robustness.square
        ),
    )
}

fn run_cli(args: &[&str], out: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_rislink"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn criterion_10() -> (bool, String) {
    let runs: [(&str, &[&str], &[&str]); 7] = [
        ("solve", &["solve"], &["solve"]),
        ("sweep-distance", &["sweep-distance"], &["sweep_distance"]),
        ("sweep-plane", &["sweep-plane"], &["sweep_plane"]),
        ("sweep-plane --direct-link", &["sweep-plane", "--direct-link"], &["sweep_plane", "sweep_plane_line"]),
        ("sweep-wavelength", &["sweep-wavelength"], &["sweep_wavelength"]),
        ("robustness", &["robustness"], &["robustness"]),
        ("validate", &["validate"], &["validate"]),
    ];
    let mut problems = Vec::new();
    for (label, args, files) in runs {
        let a = tempfile::tempdir().expect("tempdir");
        let b = tempfile::tempdir().expect("tempdir");
        if !run_cli(args, a.path()) || !run_cli(args, b.path()) {
            problems.push(format!("{label}: run failed"));
            continue;
        }
        for f in files {
            let name = format!("{f}.csv");
            let x = std::fs::read(a.path().join(&name));
            let y = std::fs::read(b.path().join(&name));
            match (x, y) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => problems.push(format!("{label}: {name} differs")),
            }
        }
    }
    let ok = problems.is_empty();
    (ok, if ok { "7 CLI runs repeated, every CSV byte-identical".into() } else { problems.join("; ") })
}

fn main() {
    let seed = default_config().validate.seed;
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> (bool, String)>)> = vec![
        (1, "closed-form optimality vs phase grid", Box::new(criterion_1)),
        (2, "upper-bound attainment", Box::new(criterion_2)),
        (3, "scaling laws", Box::new(|| check(validate::scaling_check(&default_config()).expect("scaling")))),
        (
            4,
            "specular orientation optimum",
            Box::new(move || check(validate::orientation_check(RANDOM_TRIANGLES, seed).expect("orientation"))),
        ),
        (5, "boundary reduction", Box::new(criterion_5)),
        (6, "quasi-convexity", Box::new(|| check(validate::quasiconvexity_check(200.0, SCAN_POINTS).expect("scan")))),
        (7, "two-path ripples", Box::new(criterion_7)),
        (8, "anti-decay design", Box::new(criterion_8)),
        (9, "robustness region", Box::new(criterion_9)),
        (10, "determinism", Box::new(criterion_10)),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in &criteria {
        let (ok, detail) = f();
        let known = KNOWN_DEVIATIONS.contains(id);
        let tag = match (ok, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known deviation)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag}: {name}: {detail}");
        if ok == known {
            unexpected.push(*id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
