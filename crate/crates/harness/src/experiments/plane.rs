//! Received power over plane S with the panel turned specular at every
//! position, plus (with the direct link) a profile along line l whose
//! cross-term ripples are counted.

use ris_core::Vec3;

use super::{dbm, linspace, plane_endpoints, specular_scene, LinkTerms, Output, Report, SceneParams};
use crate::config::SceneConfig;
use crate::error::Result;
use crate::output::Table;
use crate::plot::PlotSpec;

pub const GRID_COLUMNS: [&str; 3] = ["x", "y", "power_dbm"];
pub const LINE_COLUMNS: [&str; 6] = ["x", "ris_link_dbm", "direct_dbm", "cross_term_dbm", "total_dbm", "coherence"];

fn terms_at(cfg: &SceneConfig, params: &SceneParams, t: Vec3, r: Vec3, x: f64, y: f64) -> Result<LinkTerms> {
    let scene = specular_scene(cfg, params, t, r, Vec3::new(x, y, 0.0), Vec3::Z)?;
    LinkTerms::of(&scene)
}

/// Power over the configured grid, rows ordered x-major.
pub fn grid(cfg: &SceneConfig) -> Result<Table> {
    let (t, r) = plane_endpoints(cfg);
    let params = SceneParams::from_config(cfg);
    let s = &cfg.plane;
    let ys = linspace(s.y_min, s.y_max, s.grid);
    let mut table = Table::new(&GRID_COLUMNS);
    for x in linspace(s.x_min, s.x_max, s.grid) {
        for &y in &ys {
            let terms = terms_at(cfg, &params, t, r, x, y)?;
            let p = if cfg.direct_link { terms.two_path_power(cfg.p_t) } else { terms.ris_power(cfg.p_t) };
            table.push(vec![x.into(), y.into(), dbm(p).into()]);
        }
    }
    Ok(table)
}

/// Samples of line l from `T′` to `line_x_max`.
pub fn line_profile(cfg: &SceneConfig) -> Result<Vec<(f64, LinkTerms)>> {
    let (t, r) = plane_endpoints(cfg);
    let params = SceneParams::from_config(cfg);
    linspace(0.0, cfg.plane.line_x_max, cfg.plane.line_points)
        .into_iter()
        .map(|x| Ok((x, terms_at(cfg, &params, t, r, x, 0.0)?)))
        .collect()
}

/// Interior samples above the previous one and not below the next; a flat
/// top counts once.
pub fn count_local_maxima(values: &[f64]) -> usize {
    let mut count = 0;
    let mut i = 1;
    while i + 1 < values.len() {
        if values[i] > values[i - 1] {
            let mut j = i;
            while j + 1 < values.len() && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < values.len() && values[j + 1] < values[i] {
                count += 1;
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    count
}

/// Ripple ridges along line l: local maxima of the RIS/direct cross term.
pub fn ripple_count(profile: &[(f64, LinkTerms)], p_t: f64) -> usize {
    let cross: Vec<f64> = profile.iter().map(|(_, t)| t.cross_power(p_t)).collect();
    count_local_maxima(&cross)
}

pub fn run(cfg: &SceneConfig) -> Result<Report> {
    let table = grid(cfg)?;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for row in &table.rows {
        let (x, y, p) = (row[0].as_f64().unwrap(), row[1].as_f64().unwrap(), row[2].as_f64().unwrap());
        if p > best.0 {
            best = (p, x, y);
        }
    }
    let s = &cfg.plane;
    let mut summary = vec![
        format!("{}x{} grid over x in [{}, {}], y in [{}, {}]", s.grid, s.grid, s.x_min, s.x_max, s.y_min, s.y_max),
        format!(
            "direct link {}; best grid point ({}, {}) at {:.4} dBm",
            if cfg.direct_link { "on" } else { "blocked" },
            best.1,
            best.2,
            best.0
        ),
    ];
    let heat = PlotSpec::Heatmap {
        x: "x".into(),
        y: "y".into(),
        z: "power_dbm".into(),
        z_label: "received power (dBm)".into(),
        contour: None,
        grid: (s.grid, s.grid),
    };
    let mut outputs =
        vec![Output { name: "sweep_plane".into(), table, plot: Some((heat, "Received power over plane S".into())) }];

    if cfg.direct_link {
        let profile = line_profile(cfg)?;
        let mut line = Table::new(&LINE_COLUMNS);
        for (x, t) in &profile {
            line.push(vec![
                (*x).into(),
                dbm(t.ris_power(cfg.p_t)).into(),
                dbm(t.direct_power(cfg.p_t)).into(),
                dbm(t.cross_power(cfg.p_t)).into(),
                dbm(t.two_path_power(cfg.p_t)).into(),
                t.o.abs().into(),
            ]);
        }
        summary.push(format!(
            "line l from T' to x = {}: {} ripple ridges ({} antennas)",
            s.line_x_max,
            ripple_count(&profile, cfg.p_t),
            cfg.antennas
        ));
        let plot = PlotSpec::Lines {
            x: "x".into(),
            ys: vec!["total_dbm".into(), "ris_link_dbm".into(), "direct_dbm".into(), "cross_term_dbm".into()],
            x_label: "x on line l (m)".into(),
            y_label: "received power (mW)".into(),
            log_power: true,
        };
        outputs.push(Output { name: "sweep_plane_line".into(), table: line, plot: Some((plot, "Power along line l".into())) });
    }
    Ok(Report { experiment: "sweep-plane", outputs, summary })
}
