//! gnuplot scripts for the emitted CSVs. Scripts are written, never run.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{HarnessError, Result};
use crate::output::Table;

#[derive(Debug, Clone, PartialEq)]
pub enum PlotSpec {
    /// One curve per `y` column against column `x`. With `log_power` the
    /// dBm columns are plotted as milliwatts on a logarithmic y-axis.
    Lines { x: String, ys: Vec<String>, x_label: String, y_label: String, log_power: bool },
    /// Colour map of `z` over the `(x, y)` grid, optionally with one contour level.
    /// `grid` is the number of distinct `(x, y)` values.
    Heatmap { x: String, y: String, z: String, z_label: String, contour: Option<f64>, grid: (usize, usize) },
}

fn column(table: &Table, name: &str) -> Result<usize> {
    table
        .column(name)
        .map(|j| j + 1)
        .ok_or_else(|| HarnessError::Config(format!("plot column {name} not in table")))
}

/// Script text for `spec` reading `csv_name` (relative to the script) and
/// rendering to `<stem>.png`.
pub fn plot_script(table: &Table, spec: &PlotSpec, csv_name: &str, title: &str) -> Result<String> {
    let stem = csv_name.strip_suffix(".csv").unwrap_or(csv_name);
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script for {csv_name}");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 900,650");
    let _ = writeln!(s, "set output '{stem}.png'");
    let _ = writeln!(s, "set title '{title}'");
    match spec {
        PlotSpec::Lines { x, ys, x_label, y_label, log_power } => {
            let xc = column(table, x)?;
            let _ = writeln!(s, "set xlabel '{x_label}'");
            let _ = writeln!(s, "set ylabel '{y_label}'");
            let _ = writeln!(s, "set grid");
            let _ = writeln!(s, "set key top right");
            if *log_power {
                let _ = writeln!(s, "set logscale y");
            }
            let mut parts = Vec::new();
            for y in ys {
                let yc = column(table, y)?;
                let using = if *log_power { format!("{xc}:(10**(${yc}/10.0))") } else { format!("{xc}:{yc}") };
                parts.push(format!("'{csv_name}' every ::1 using {using} with linespoints title '{y}'"));
            }
            let _ = writeln!(s, "plot {}", parts.join(", \\\n     "));
        }
        PlotSpec::Heatmap { x, y, z, z_label, contour, grid } => {
            let (xc, yc, zc) = (column(table, x)?, column(table, y)?, column(table, z)?);
            let _ = writeln!(s, "set xlabel '{x}'");
            let _ = writeln!(s, "set ylabel '{y}'");
            let _ = writeln!(s, "set cblabel '{z_label}'");
            let _ = writeln!(s, "set size ratio -1");
            match contour {
                Some(level) => {
                    let _ = writeln!(s, "set view map");
                    let _ = writeln!(s, "set dgrid3d {},{} qnorm 2", grid.1, grid.0);
                    let _ = writeln!(s, "set pm3d at b");
                    let _ = writeln!(s, "set contour surface");
                    let _ = writeln!(s, "set cntrparam levels discrete {level}");
                    let _ = writeln!(
                        s,
                        "splot '{csv_name}' every ::1 using {xc}:{yc}:{zc} with lines lc rgb 'black' lw 2 title '{z} = {level}'"
                    );
                }
                None => {
                    let _ = writeln!(s, "plot '{csv_name}' every ::1 using {xc}:{yc}:{zc} with image notitle");
                }
            }
        }
    }
    Ok(s)
}

pub fn emit_plot_script(table: &Table, spec: &PlotSpec, csv_path: &Path, title: &str, path: &Path) -> Result<()> {
    let csv_name = csv_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let text = plot_script(table, spec, &csv_name, title)?;
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(&["d", "closed_form_dbm", "svd_dbm", "x", "y", "p_hat"]);
        t.push(vec![1.0.into(), (-50.0).into(), (-49.0).into(), 0.0.into(), 0.0.into(), 0.0.into()]);
        t
    }

    #[test]
    fn line_sweep_uses_log_power_axis() {
        let spec = PlotSpec::Lines {
            x: "d".into(),
            ys: vec!["closed_form_dbm".into(), "svd_dbm".into()],
            x_label: "d (m)".into(),
            y_label: "received power (mW)".into(),
            log_power: true,
        };
        let s = plot_script(&table(), &spec, "sweep_distance.csv", "t").unwrap();
        assert!(s.contains("set logscale y"));
        assert!(s.contains("using 1:(10**($2/10.0))"));
        assert!(s.contains("using 1:(10**($3/10.0))"));
        assert!(s.contains("set output 'sweep_distance.png'"));
    }

    #[test]
    fn heatmap_with_contour() {
        let spec = PlotSpec::Heatmap { x: "x".into(), y: "y".into(), z: "p_hat".into(), z_label: "z".into(), contour: Some(0.1), grid: (1, 1) };
        let s = plot_script(&table(), &spec, "robustness.csv", "t").unwrap();
        assert!(s.contains("pm3d"));
        assert!(s.contains("set dgrid3d 1,1"));
        assert!(s.contains("levels discrete 0.1"));
        assert!(s.contains("using 4:5:6"));
        let plain = PlotSpec::Heatmap { x: "x".into(), y: "y".into(), z: "p_hat".into(), z_label: "z".into(), contour: None, grid: (1, 1) };
        assert!(!plot_script(&table(), &plain, "r.csv", "t").unwrap().contains("contour"));
        assert!(plot_script(&table(), &plain, "r.csv", "t").unwrap().contains("with image"));
    }

    #[test]
    fn unknown_column_is_an_error() {
        let spec = PlotSpec::Heatmap { x: "x".into(), y: "q".into(), z: "p_hat".into(), z_label: "z".into(), contour: None, grid: (1, 1) };
        assert!(plot_script(&table(), &spec, "r.csv", "t").is_err());
    }
}
