//! The simulation studies. Each experiment turns a [`SceneConfig`] into one or
//! more tables plus summary lines; writing files is left to [`write_outputs`].

pub mod distance;
pub mod plane;
pub mod robustness;
pub mod solve;
pub mod wavelength;

use std::fs;
use std::path::Path;

use ris_core::em::{amplitude_gain_tir, direct_amplitude};
use ris_core::geometry::specular_frame;
use ris_core::solvers::two_path_terms;
use ris_core::units::watts_to_dbm;
use ris_core::{Frame, RisError, RisPanel, Scene, TransmitterArray, Vec3};

use crate::config::SceneConfig;
use crate::error::{HarnessError, Result};
use crate::output::{emit_csv, Table};
use crate::plot::{emit_plot_script, PlotSpec};

/// One emitted table.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    /// File stem inside the output directory.
    pub name: String,
    pub table: Table,
    pub plot: Option<(PlotSpec, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub experiment: &'static str,
    pub outputs: Vec<Output>,
    /// Human-readable result lines printed by the CLI.
    pub summary: Vec<String>,
}

/// Writes every table as `<name>.csv` with its sidecar and, when present,
/// `<name>.gp`.
pub fn write_outputs(report: &Report, dir: &Path, config: &SceneConfig) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    for out in &report.outputs {
        let csv = dir.join(format!("{}.csv", out.name));
        emit_csv(&out.table, &csv, report.experiment, config)?;
        if let Some((spec, title)) = &out.plot {
            emit_plot_script(&out.table, spec, &csv, title, &dir.join(format!("{}.gp", out.name)))?;
        }
    }
    Ok(())
}

/// Transmitter above `T′ = (0, 0, 0)` and receiver above `R′` on the x-axis,
/// both over plane S (`z = 0`).
pub fn plane_endpoints(cfg: &SceneConfig) -> (Vec3, Vec3) {
    let g = &cfg.geometry;
    let dh = g.h1 - g.h2;
    let base = (g.d_tr * g.d_tr - dh * dh).sqrt();
    (Vec3::new(0.0, 0.0, g.h1), Vec3::new(base, 0.0, g.h2))
}

/// Panel and array parameters that experiments vary independently of the
/// file: wavelength, grid size, element size and antenna gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneParams {
    pub wavelength: f64,
    pub rows: usize,
    pub cols: usize,
    pub element_size_x: f64,
    pub element_size_y: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
}

impl SceneParams {
    pub fn from_config(cfg: &SceneConfig) -> Self {
        Self {
            wavelength: cfg.wavelength,
            rows: cfg.rows,
            cols: cfg.cols,
            element_size_x: cfg.element_size_x,
            element_size_y: cfg.element_size_y,
            tx_gain: cfg.tx_gain,
            rx_gain: cfg.rx_gain,
        }
    }
}

/// Scene with a ULA of the configured size centered at `t` along `axis`, and
/// the panel at `center` with the given frame.
pub fn build_scene(cfg: &SceneConfig, p: &SceneParams, t: Vec3, r: Vec3, center: Vec3, frame: Frame, axis: Vec3) -> Result<Scene> {
    let ris = RisPanel {
        center,
        rows: p.rows,
        cols: p.cols,
        element_size_x: p.element_size_x,
        element_size_y: p.element_size_y,
        frame,
        reflection_coeff: cfg.reflection_coeff,
        pattern_exponent: cfg.pattern_exponent,
        element_gain: cfg.element_gain,
    };
    let tx = TransmitterArray::ula(t, cfg.antennas, cfg.spacing_wavelengths * p.wavelength, axis, p.tx_gain)?;
    Ok(Scene::new(tx, ris, r, p.rx_gain, p.wavelength)?)
}

/// [`build_scene`] with the panel turned to its specular orientation.
pub fn specular_scene(cfg: &SceneConfig, p: &SceneParams, t: Vec3, r: Vec3, center: Vec3, axis: Vec3) -> Result<Scene> {
    let frame = specular_frame(center, t, r)?;
    build_scene(cfg, p, t, r, center, frame, axis)
}

/// Closed-form link quantities of a specular panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkTerms {
    pub a_tir: f64,
    pub a_tr: f64,
    pub o: f64,
    pub n: usize,
    pub l: usize,
}

impl LinkTerms {
    pub fn of(scene: &Scene) -> Result<Self> {
        let angles = scene.angles()?;
        let a_tir = match amplitude_gain_tir(scene, &angles) {
            Ok(a) => a.a_tir,
            Err(RisError::ShadowedPanel) => 0.0,
            Err(e) => return Err(e.into()),
        };
        Ok(Self {
            a_tir,
            a_tr: direct_amplitude(scene, angles.d_tr),
            o: two_path_terms(scene, &angles)?.o,
            n: scene.n_antennas(),
            l: scene.n_elements(),
        })
    }

    /// `N L² a_TIR² P_t`.
    pub fn ris_power(&self, p_t: f64) -> f64 {
        let (n, l) = (self.n as f64, self.l as f64);
        n * l * l * self.a_tir * self.a_tir * p_t
    }

    /// `N a_TR² P_t`.
    pub fn direct_power(&self, p_t: f64) -> f64 {
        self.n as f64 * self.a_tr * self.a_tr * p_t
    }

    /// `2 N L a_TR a_TIR |O| P_t`.
    pub fn cross_power(&self, p_t: f64) -> f64 {
        let (n, l) = (self.n as f64, self.l as f64);
        2.0 * n * l * self.a_tr * self.a_tir * self.o.abs() * p_t
    }

    pub fn two_path_power(&self, p_t: f64) -> f64 {
        self.ris_power(p_t) + self.direct_power(p_t) + self.cross_power(p_t)
    }
}

pub fn dbm(watts: f64) -> f64 {
    watts_to_dbm(watts)
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect(),
    }
}
