//! Sensitivity to a wrong panel position. Phases and beamformer are designed
//! for a panel at `T′`; the panel is then placed elsewhere on plane S with the
//! same orientation and the resulting power `P̃` is compared with the optimum
//! `Ṗ` for that position and orientation through
//! `P̂ = |P̃ - Ṗ| / max(P̃, Ṗ)`. The direct link is blocked.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use ris_core::em::{amplitude_gain_tir, element_path_offsets};
use ris_core::solvers::{closed_form_power, closed_form_solution, Solution};
use ris_core::{RisError, Scene, Vec3};

use super::{linspace, plane_endpoints, specular_scene, Output, Report, SceneParams};
use crate::config::SceneConfig;
use crate::error::Result;
use crate::output::Table;
use crate::plot::PlotSpec;

pub const COLUMNS: [&str; 3] = ["x", "y", "p_hat"];

/// `(P̃, Ṗ)` for the designed solution with the panel moved to `center`.
/// Uses the factored far-field channel, `a_TIR² |Σ θ_q d_q|² |Σ b_p v_p|²`.
pub fn powers_at(designed: &Scene, solution: &Solution, center: Vec3, p_t: f64) -> Result<(f64, f64)> {
    let scene = designed.with_ris_center(center);
    let angles = scene.angles()?;
    let a_tir = match amplitude_gain_tir(&scene, &angles) {
        Ok(a) => a.a_tir,
        Err(RisError::ShadowedPanel) => return Ok((0.0, 0.0)),
        Err(e) => return Err(e.into()),
    };
    let k = 2.0 * PI / scene.wavelength;
    let ris: Complex64 = element_path_offsets(&scene, &angles)
        .iter()
        .zip(solution.theta.iter())
        .map(|((o_t, o_r), th)| th * Complex64::from_polar(1.0, k * (o_t + o_r)))
        .sum();
    let tx: Complex64 = scene
        .tx
        .path_offsets(center)?
        .iter()
        .zip(solution.v.iter())
        .map(|(o, v)| v * Complex64::from_polar(1.0, k * o))
        .sum();
    let estimated = a_tir * a_tir * ris.norm_sqr() * tx.norm_sqr();
    let ideal = closed_form_power(scene.n_antennas(), scene.n_elements(), a_tir, p_t);
    Ok((estimated, ideal))
}

/// Normalized deviation; zero when both powers vanish.
pub fn deviation(estimated: f64, ideal: f64) -> f64 {
    let m = estimated.max(ideal);
    if m == 0.0 {
        0.0
    } else {
        (estimated - ideal).abs() / m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessMap {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `p_hat[i][j]` at `(xs[i], ys[j])`.
    pub p_hat: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSummary {
    /// Grid cells in the connected low-deviation region around `T′`.
    pub cells: usize,
    /// Side in meters of the largest axis-aligned square whose samples all
    /// lie in that region.
    pub largest_square: f64,
}

pub fn designed_scene(cfg: &SceneConfig) -> Result<Scene> {
    let (t, r) = plane_endpoints(cfg);
    specular_scene(cfg, &SceneParams::from_config(cfg), t, r, Vec3::ZERO, Vec3::Z)
}

pub fn map(cfg: &SceneConfig) -> Result<RobustnessMap> {
    let designed = designed_scene(cfg)?;
    let solution = closed_form_solution(&designed, cfg.p_t, cfg.far_field_mode, cfg.far_field_margin)?;
    let b = &cfg.robustness;
    let xs = linspace(-b.half_width, b.half_width, b.grid);
    let ys = xs.clone();
    let mut p_hat = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut col = Vec::with_capacity(ys.len());
        for &y in &ys {
            let (est, ideal) = powers_at(&designed, &solution, Vec3::new(x, y, 0.0), cfg.p_t)?;
            col.push(deviation(est, ideal));
        }
        p_hat.push(col);
    }
    Ok(RobustnessMap { xs, ys, p_hat })
}

fn nearest(values: &[f64], target: f64) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if (v - target).abs() < (values[best] - target).abs() {
            best = i;
        }
    }
    best
}

/// Flood fill (4-neighbour) of `p_hat < threshold` from the sample nearest
/// `T′`, then the largest all-inside square of samples.
pub fn region(map: &RobustnessMap, threshold: f64) -> RegionSummary {
    let (nx, ny) = (map.xs.len(), map.ys.len());
    let mut inside = vec![vec![false; ny]; nx];
    let start = (nearest(&map.xs, 0.0), nearest(&map.ys, 0.0));
    let mut cells = 0;
    if map.p_hat[start.0][start.1] < threshold {
        let mut queue = VecDeque::from([start]);
        inside[start.0][start.1] = true;
        while let Some((i, j)) = queue.pop_front() {
            cells += 1;
            let mut visit = |a: usize, b: usize| {
                if !inside[a][b] && map.p_hat[a][b] < threshold {
                    inside[a][b] = true;
                    queue.push_back((a, b));
                }
            };
            if i > 0 {
                visit(i - 1, j);
            }
            if i + 1 < nx {
                visit(i + 1, j);
            }
            if j > 0 {
                visit(i, j - 1);
            }
            if j + 1 < ny {
                visit(i, j + 1);
            }
        }
    }
    // largest square of samples, classic dynamic program
    let mut side = vec![vec![0usize; ny]; nx];
    let mut best = 0;
    for i in 0..nx {
        for j in 0..ny {
            if inside[i][j] {
                side[i][j] = if i == 0 || j == 0 { 1 } else { 1 + side[i - 1][j].min(side[i][j - 1]).min(side[i - 1][j - 1]) };
                best = best.max(side[i][j]);
            }
        }
    }
    let step = |v: &[f64]| if v.len() > 1 { v[1] - v[0] } else { 0.0 };
    let largest_square = best.saturating_sub(1) as f64 * step(&map.xs).min(step(&map.ys));
    RegionSummary { cells, largest_square }
}

pub fn run(cfg: &SceneConfig) -> Result<Report> {
    let m = map(cfg)?;
    let mut table = Table::new(&COLUMNS);
    for (i, &x) in m.xs.iter().enumerate() {
        for (j, &y) in m.ys.iter().enumerate() {
            table.push(vec![x.into(), y.into(), m.p_hat[i][j].into()]);
        }
    }
    let b = &cfg.robustness;
    let reg = region(&m, b.threshold);
    let summary = vec![
        format!(
            "solution designed at T' for a {}x{} panel; true positions on a {}x{} grid over [-{}, {}] m",
            cfg.rows, cfg.cols, b.grid, b.grid, b.half_width, b.half_width
        ),
        format!(
            "connected region with p_hat < {}: {} samples, largest inscribed square {:.3} m ({} the {} m target)",
            b.threshold,
            reg.cells,
            reg.largest_square,
            if reg.largest_square >= b.square { "meets" } else { "misses" },
            b.square
        ),
    ];
    let plot = PlotSpec::Heatmap {
        x: "x".into(),
        y: "y".into(),
        z: "p_hat".into(),
        z_label: "normalized power deviation".into(),
        contour: Some(b.threshold),
        grid: (b.grid, b.grid),
    };
    Ok(Report {
        experiment: "robustness",
        outputs: vec![Output {
            name: "robustness".into(),
            table,
            plot: Some((plot, "Power deviation under panel position error".into())),
        }],
        summary,
    })
}

/// Received power of `solution` on the full far-field channel, for checking
/// the factored evaluation.
pub fn powers_on_channel(designed: &Scene, solution: &Solution, center: Vec3, cfg: &SceneConfig) -> Result<f64> {
    let scene = designed.with_ris_center(center);
    let ff = ris_core::em::farfield_channel(&scene, ris_core::FarFieldMode::Warn, cfg.far_field_margin)?;
    Ok(ris_core::em::received_power(&ff.channels, &solution.theta, &solution.v)?)
}
