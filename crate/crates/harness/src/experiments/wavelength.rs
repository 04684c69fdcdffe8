//! Wavelength sweep with the panel at `R′` sized by the fixed-area anti-decay
//! rule, `d_x = d_y = ratio·λ`. Powers come from the closed-form expressions,
//! so panels with millions of elements cost nothing.

use ris_core::solvers::{anti_decay_design, AntiDecayDesign, AntiDecayMode};

use super::{dbm, linspace, plane_endpoints, specular_scene, LinkTerms, Output, Report, SceneParams};
use crate::config::SceneConfig;
use crate::error::Result;
use crate::output::Table;
use crate::plot::PlotSpec;

pub const COLUMNS: [&str; 8] =
    ["wavelength", "rows", "cols", "element_size", "achieved_area", "ris_link_dbm", "direct_dbm", "combined_dbm"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavelengthPoint {
    pub wavelength: f64,
    pub design: AntiDecayDesign,
    pub ris_link: f64,
    pub direct: f64,
    pub combined: f64,
}

pub fn point(cfg: &SceneConfig, wavelength: f64) -> Result<WavelengthPoint> {
    let w = &cfg.wavelength_sweep;
    let design = anti_decay_design(wavelength, AntiDecayMode::FixArea { width: w.width, height: w.height }, w.ratio)?;
    let params = SceneParams {
        wavelength,
        rows: design.rows,
        cols: design.cols,
        element_size_x: design.element_size_x,
        element_size_y: design.element_size_y,
        ..SceneParams::from_config(cfg)
    };
    let (t, r) = plane_endpoints(cfg);
    let at_r = ris_core::Vec3::new(r.x, r.y, 0.0);
    let terms = LinkTerms::of(&specular_scene(cfg, &params, t, r, at_r, ris_core::Vec3::Z)?)?;
    Ok(WavelengthPoint {
        wavelength,
        design,
        ris_link: terms.ris_power(cfg.p_t),
        direct: terms.direct_power(cfg.p_t),
        combined: terms.two_path_power(cfg.p_t),
    })
}

pub fn sweep(cfg: &SceneConfig) -> Result<Vec<WavelengthPoint>> {
    let w = &cfg.wavelength_sweep;
    linspace(w.lambda_min, w.lambda_max, w.points).into_iter().map(|l| point(cfg, l)).collect()
}

/// `(max - min) / max` of the RIS-link power.
pub fn flatness(points: &[WavelengthPoint]) -> f64 {
    let max = points.iter().map(|p| p.ris_link).fold(f64::NEG_INFINITY, f64::max);
    let min = points.iter().map(|p| p.ris_link).fold(f64::INFINITY, f64::min);
    (max - min) / max
}

pub fn run(cfg: &SceneConfig) -> Result<Report> {
    let points = sweep(cfg)?;
    let mut table = Table::new(&COLUMNS);
    for p in &points {
        table.push(vec![
            p.wavelength.into(),
            p.design.rows.into(),
            p.design.cols.into(),
            p.design.element_size_x.into(),
            p.design.achieved_area.into(),
            dbm(p.ris_link).into(),
            dbm(p.direct).into(),
            dbm(p.combined).into(),
        ]);
    }
    let mut summary = vec![format!(
        "{} wavelengths in [{}, {}] m, {} x {} m aperture, element size {:.6} wavelengths",
        points.len(),
        cfg.wavelength_sweep.lambda_min,
        cfg.wavelength_sweep.lambda_max,
        cfg.wavelength_sweep.width,
        cfg.wavelength_sweep.height,
        cfg.wavelength_sweep.ratio
    )];
    if let (Some(first), Some(last)) = (points.first(), points.last()) {
        summary.push(format!("RIS-link power spread {:.3}% of its maximum", 100.0 * flatness(&points)));
        summary.push(format!("direct-link power change from longest to shortest wavelength {:.4} dB", dbm(first.direct) - dbm(last.direct)));
    }
    let plot = PlotSpec::Lines {
        x: "wavelength".into(),
        ys: vec!["combined_dbm".into(), "ris_link_dbm".into(), "direct_dbm".into()],
        x_label: "wavelength (m)".into(),
        y_label: "received power (mW)".into(),
        log_power: true,
    };
    Ok(Report {
        experiment: "sweep-wavelength",
        outputs: vec![Output {
            name: "sweep_wavelength".into(),
            table,
            plot: Some((plot, "Optimal received power versus wavelength".into())),
        }],
        summary,
    })
}
