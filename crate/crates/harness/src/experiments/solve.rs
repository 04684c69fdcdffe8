//! One scene: every solution method with its predicted power and its power
//! on the far-field and on the exact channel.

use ris_core::em::{direct_channel, direct_channel_far_field, exact_channel, farfield_channel, received_power};
use ris_core::solvers::{closed_form_solution, closed_form_two_path_solution, power_upper_bound, svd_solution, Solution};
use ris_core::Vec3;

use super::{dbm, plane_endpoints, specular_scene, Output, Report, SceneParams};
use crate::config::SceneConfig;
use crate::error::Result;
use crate::output::Table;

pub const COLUMNS: [&str; 4] = ["method", "predicted_dbm", "far_field_dbm", "exact_dbm"];

pub fn run(cfg: &SceneConfig) -> Result<Report> {
    let (t, r) = plane_endpoints(cfg);
    let [x, y] = cfg.geometry.ris;
    let scene = specular_scene(cfg, &SceneParams::from_config(cfg), t, r, Vec3::new(x, y, 0.0), Vec3::Z)?;
    let report = scene.far_field(cfg.far_field_margin);

    let ff = farfield_channel(&scene, cfg.far_field_mode, cfg.far_field_margin)?;
    let mut ff_ch = ff.channels.clone();
    let mut exact = exact_channel(&scene)?;
    if cfg.direct_link {
        ff_ch = ff_ch.with_direct(direct_channel_far_field(&scene)?)?;
        exact = exact.with_direct(direct_channel(&scene)?)?;
    }

    let mut table = Table::new(&COLUMNS);
    let mut push = |name: &str, sol: &Solution| -> Result<()> {
        sol.check_feasible(cfg.p_t)?;
        let on_ff = received_power(&ff_ch, &sol.theta, &sol.v)?;
        let on_exact = received_power(&exact, &sol.theta, &sol.v)?;
        table.push(vec![name.into(), dbm(sol.predicted_power).into(), dbm(on_ff).into(), dbm(on_exact).into()]);
        Ok(())
    };
    if cfg.direct_link {
        let (sol, _) = closed_form_two_path_solution(&scene, cfg.p_t, cfg.far_field_mode, cfg.far_field_margin)?;
        push("closed_form_two_path", &sol)?;
    } else {
        let sol = closed_form_solution(&scene, cfg.p_t, cfg.far_field_mode, cfg.far_field_margin)?;
        push("closed_form", &sol)?;
    }
    push("svd", &svd_solution(&exact, cfg.p_t)?)?;
    if !cfg.direct_link {
        let on_ff = power_upper_bound(&ff_ch, cfg.p_t)?;
        let on_exact = power_upper_bound(&exact, cfg.p_t)?;
        table.push(vec!["upper_bound".into(), dbm(on_exact).into(), dbm(on_ff).into(), dbm(on_exact).into()]);
    }

    let a = &ff.angles;
    let mut summary = vec![
        format!("panel at ({x}, {y}, 0), {}x{} elements, {} antennas", cfg.rows, cfg.cols, cfg.antennas),
        format!("d_TI = {:.3} m, d_IR = {:.3} m, d_TR = {:.3} m, theta_0 = {:.4} rad", a.d_ti, a.d_ir, a.d_tr, a.theta_0),
        format!(
            "far field {} at margin {} (ratios {:.3}, {:.3}, {:.3})",
            if report.ok { "ok" } else { "VIOLATED" },
            cfg.far_field_margin,
            report.ratios[0],
            report.ratios[1],
            report.ratios[2]
        ),
    ];
    for row in &table.rows {
        summary.push(format!(
            "{:<22} predicted {:>12} dBm  far-field {:>12} dBm  exact {:>12} dBm",
            row[0].render(),
            fmt_dbm(&row[1]),
            fmt_dbm(&row[2]),
            fmt_dbm(&row[3])
        ));
    }
    Ok(Report { experiment: "solve", outputs: vec![Output { name: "solve".into(), table, plot: None }], summary })
}

fn fmt_dbm(c: &crate::output::Cell) -> String {
    c.as_f64().map_or_else(String::new, |x| format!("{x:.4}"))
}
