//! Equilateral distance sweep, `d_TR = d_TI = d_IR = d`. Both solutions are
//! evaluated on the exact channel and compared with the singular-value bound.

use ris_core::em::{exact_channel, received_power};
use ris_core::solvers::{closed_form_solution, power_upper_bound, svd_solution};
use ris_core::{FarFieldMode, RisError, Vec3};

use super::{dbm, linspace, specular_scene, Output, Report, SceneParams};
use crate::config::SceneConfig;
use crate::error::Result;
use crate::output::Table;
use crate::plot::PlotSpec;

pub const COLUMNS: [&str; 7] =
    ["d", "closed_form_dbm", "svd_dbm", "upper_bound_dbm", "far_field_ok", "closed_form_gap_db", "svd_gap_db"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistancePoint {
    pub d: f64,
    pub closed_form: f64,
    pub svd: f64,
    pub bound: f64,
    pub far_field_ok: bool,
}

/// Transmitter and receiver at distance `d` from a panel at the origin and
/// from each other, in the x–z plane; the ULA runs along y.
pub fn point(cfg: &SceneConfig, d: f64) -> Result<DistancePoint> {
    let half = d / 2.0;
    let height = d * 3f64.sqrt() / 2.0;
    let t = Vec3::new(-half, 0.0, height);
    let r = Vec3::new(half, 0.0, height);
    let params = SceneParams { tx_gain: cfg.distance.tx_gain, rx_gain: cfg.distance.rx_gain, ..SceneParams::from_config(cfg) };
    let scene = specular_scene(cfg, &params, t, r, Vec3::ZERO, Vec3::Y)?;
    let far_field_ok = scene.far_field(cfg.far_field_margin).ok;
    let exact = exact_channel(&scene)?;
    let cf = closed_form_solution(&scene, cfg.p_t, FarFieldMode::Warn, cfg.far_field_margin)?;
    let closed_form = received_power(&exact, &cf.theta, &cf.v)?;
    let svd = svd_solution(&exact, cfg.p_t)?.predicted_power;
    let bound = power_upper_bound(&exact, cfg.p_t)?;
    Ok(DistancePoint { d, closed_form, svd, bound, far_field_ok })
}

pub fn sweep(cfg: &SceneConfig) -> Result<Vec<DistancePoint>> {
    let s = &cfg.distance;
    let mut out = Vec::with_capacity(s.points);
    for d in linspace(s.d_min, s.d_max, s.points) {
        let p = point(cfg, d)?;
        if cfg.far_field_mode == FarFieldMode::Strict && !p.far_field_ok {
            continue;
        }
        out.push(p);
    }
    Ok(out)
}

pub fn run(cfg: &SceneConfig) -> Result<Report> {
    let points = sweep(cfg)?;
    let mut table = Table::new(&COLUMNS);
    for p in &points {
        if !(p.bound > 0.0) {
            return Err(RisError::ZeroChannel.into());
        }
        table.push(vec![
            p.d.into(),
            dbm(p.closed_form).into(),
            dbm(p.svd).into(),
            dbm(p.bound).into(),
            p.far_field_ok.into(),
            (dbm(p.bound) - dbm(p.closed_form)).into(),
            (dbm(p.bound) - dbm(p.svd)).into(),
        ]);
    }
    let valid: Vec<_> = points.iter().filter(|p| p.far_field_ok).collect();
    let worst = |f: fn(&DistancePoint) -> f64| valid.iter().map(|p| dbm(p.bound) - dbm(f(p))).fold(0.0, f64::max);
    let summary = vec![
        format!(
            "{} distances, {} far-field valid; {}x{} panel, {} x {} m elements",
            points.len(),
            valid.len(),
            cfg.rows,
            cfg.cols,
            cfg.element_size_x,
            cfg.element_size_y
        ),
        format!("largest gap to the bound on valid points: closed form {:.4} dB, SVD {:.4} dB", worst(|p| p.closed_form), worst(|p| p.svd)),
    ];
    let plot = PlotSpec::Lines {
        x: "d".into(),
        ys: vec!["closed_form_dbm".into(), "svd_dbm".into(), "upper_bound_dbm".into()],
        x_label: "d (m)".into(),
        y_label: "received power (mW)".into(),
        log_power: true,
    };
    Ok(Report {
        experiment: "sweep-distance",
        outputs: vec![Output {
            name: "sweep_distance".into(),
            table,
            plot: Some((plot, "Received power versus link distance".into())),
        }],
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigFile;

    #[test]
    fn equilateral_distances() {
        let cfg = ConfigFile::default().resolve().unwrap();
        let d = 57.0;
        let half = d / 2.0;
        let h = d * 3f64.sqrt() / 2.0;
        let t = Vec3::new(-half, 0.0, h);
        let r = Vec3::new(half, 0.0, h);
        assert!((t.norm() - d).abs() < 1e-12 && (r.norm() - d).abs() < 1e-12 && (t.distance(r) - d).abs() < 1e-12);
        let p = point(&cfg, d).unwrap();
        assert!(p.closed_form <= p.bound * (1.0 + 1e-9));
        assert!(p.svd <= p.bound * (1.0 + 1e-9));
    }

    #[test]
    fn ordering_holds_on_every_row() {
        let cfg = ConfigFile::default().resolve().unwrap();
        for p in sweep(&cfg).unwrap() {
            assert!(p.closed_form <= p.svd * (1.0 + 1e-9), "{p:?}");
            assert!(p.svd <= p.bound * (1.0 + 1e-9), "{p:?}");
        }
    }

    #[test]
    fn omnidirectional_gains_by_default() {
        let cfg = ConfigFile::default().resolve().unwrap();
        assert_eq!((cfg.distance.tx_gain, cfg.distance.rx_gain), (1.0, 1.0));
    }
}
