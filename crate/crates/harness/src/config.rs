//! Scene configuration. The file format is TOML; every section is optional
//! and missing keys fall back to the physical parameter table the experiments
//! are built on (transmit power 0 dBm, λ = 0.0286 m, 9.03 dB elements of
//! 0.01 m, Γ = 1, k = 3, 21 dB antennas, 16 antennas at λ/2). The panel
//! defaults to 20×20 so numeric channels stay in the far field; the
//! `[paper_scale]` size replaces it when requested.
//!
//! Decibel values exist only in the file. [`SceneConfig`] holds linear
//! quantities converted once at load time.

use std::path::Path;

use ris_core::units::{db_to_linear, dbm_to_watts};
use ris_core::FarFieldMode;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};

/// The bundled default profile, identical to [`ConfigFile::default`].
pub const DEFAULT_PROFILE: &str = include_str!("../profiles/table2.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FarFieldSetting {
    Warn,
    Strict,
}

impl From<FarFieldSetting> for FarFieldMode {
    fn from(s: FarFieldSetting) -> Self {
        match s {
            FarFieldSetting::Warn => FarFieldMode::Warn,
            FarFieldSetting::Strict => FarFieldMode::Strict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkSection {
    pub tx_power_dbm: f64,
    pub wavelength: f64,
    pub direct_link: bool,
    pub far_field_mode: FarFieldSetting,
    pub far_field_margin: f64,
}

impl Default for LinkSection {
    fn default() -> Self {
        Self {
            tx_power_dbm: 0.0,
            wavelength: 0.0286,
            direct_link: false,
            far_field_mode: FarFieldSetting::Warn,
            far_field_margin: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RisSection {
    pub rows: usize,
    pub cols: usize,
    pub element_size_x: f64,
    pub element_size_y: f64,
    pub element_gain_db: f64,
    pub reflection_coeff: f64,
    pub pattern_exponent: f64,
}

impl Default for RisSection {
    fn default() -> Self {
        Self {
            rows: 20,
            cols: 20,
            element_size_x: 0.01,
            element_size_y: 0.01,
            element_gain_db: 9.03,
            reflection_coeff: 1.0,
            pattern_exponent: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TxSection {
    pub antennas: usize,
    /// Antenna spacing in wavelengths.
    pub spacing_wavelengths: f64,
    pub gain_db: f64,
}

impl Default for TxSection {
    fn default() -> Self {
        Self { antennas: 16, spacing_wavelengths: 0.5, gain_db: 21.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RxSection {
    pub gain_db: f64,
}

impl Default for RxSection {
    fn default() -> Self {
        Self { gain_db: 21.0 }
    }
}

/// Plane S is `z = 0` with the transmitter above its projection `T′` at the
/// origin and the receiver above `R′` on the positive x-axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometrySection {
    pub d_tr: f64,
    pub h1: f64,
    pub h2: f64,
    /// Panel position `(x, y)` on plane S used by `solve`.
    pub ris: [f64; 2],
}

impl Default for GeometrySection {
    fn default() -> Self {
        Self { d_tr: 200.0, h1: 80.0, h2: 80.0, ris: [0.0, 0.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepDistanceSection {
    pub d_min: f64,
    pub d_max: f64,
    pub points: usize,
    /// The distance study uses omnidirectional antennas.
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
}

impl Default for SweepDistanceSection {
    fn default() -> Self {
        Self { d_min: 20.0, d_max: 200.0, points: 19, tx_gain_db: 0.0, rx_gain_db: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepPlaneSection {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub grid: usize,
    /// Far end of the line-l profile, measured from `T′`.
    pub line_x_max: f64,
    pub line_points: usize,
}

impl Default for SweepPlaneSection {
    fn default() -> Self {
        Self {
            x_min: -100.0,
            x_max: 300.0,
            y_min: -150.0,
            y_max: 150.0,
            grid: 101,
            line_x_max: 2000.0,
            line_points: 20001,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepWavelengthSection {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub points: usize,
    /// Element size over wavelength.
    pub ratio: f64,
    /// Fixed panel aperture in meters.
    pub width: f64,
    pub height: f64,
}

impl Default for SweepWavelengthSection {
    fn default() -> Self {
        Self { lambda_min: 0.0015, lambda_max: 0.003, points: 16, ratio: 1.0 / 3.0, width: 1.0, height: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RobustnessSection {
    /// Half side of the square of true positions around `T′`.
    pub half_width: f64,
    pub grid: usize,
    pub threshold: f64,
    /// Side of the square the low-deviation region must contain.
    pub square: f64,
}

impl Default for RobustnessSection {
    fn default() -> Self {
        Self { half_width: 10.0, grid: 101, threshold: 0.1, square: 5.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateSection {
    pub phase_levels: usize,
    pub random_solutions: usize,
    pub random_scenes: usize,
    pub seed: u64,
}

impl Default for ValidateSection {
    fn default() -> Self {
        Self { phase_levels: 256, random_solutions: 1000, random_scenes: 50, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PaperScaleSection {
    pub rows: usize,
    pub cols: usize,
}

impl Default for PaperScaleSection {
    fn default() -> Self {
        Self { rows: 100, cols: 100 }
    }
}

/// The file as written, dB values included.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub link: LinkSection,
    pub ris: RisSection,
    pub tx: TxSection,
    pub rx: RxSection,
    pub geometry: GeometrySection,
    pub sweep_distance: SweepDistanceSection,
    pub sweep_plane: SweepPlaneSection,
    pub sweep_wavelength: SweepWavelengthSection,
    pub robustness: RobustnessSection,
    pub validate: ValidateSection,
    pub paper_scale: PaperScaleSection,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub strict_far_field: bool,
    pub direct_link: bool,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub paper_scale: bool,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if o.strict_far_field {
            self.link.far_field_mode = FarFieldSetting::Strict;
        }
        if o.direct_link {
            self.link.direct_link = true;
        }
        if let Some(g) = o.grid {
            self.sweep_plane.grid = g;
            self.robustness.grid = g;
        }
        if let Some(s) = o.seed {
            self.validate.seed = s;
        }
        if o.paper_scale {
            self.ris.rows = self.paper_scale.rows;
            self.ris.cols = self.paper_scale.cols;
        }
    }

    /// Canonical TOML text of the effective configuration.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn resolve(&self) -> Result<SceneConfig> {
        self.validate()?;
        let canonical = self.canonical();
        let hash = hex::encode(Sha256::digest(canonical.as_bytes()));
        Ok(SceneConfig {
            p_t: dbm_to_watts(self.link.tx_power_dbm),
            wavelength: self.link.wavelength,
            direct_link: self.link.direct_link,
            far_field_mode: self.link.far_field_mode.into(),
            far_field_margin: self.link.far_field_margin,
            rows: self.ris.rows,
            cols: self.ris.cols,
            element_size_x: self.ris.element_size_x,
            element_size_y: self.ris.element_size_y,
            element_gain: db_to_linear(self.ris.element_gain_db),
            reflection_coeff: self.ris.reflection_coeff,
            pattern_exponent: self.ris.pattern_exponent,
            antennas: self.tx.antennas,
            spacing_wavelengths: self.tx.spacing_wavelengths,
            tx_gain: db_to_linear(self.tx.gain_db),
            rx_gain: db_to_linear(self.rx.gain_db),
            geometry: self.geometry.clone(),
            distance: DistanceSweep {
                d_min: self.sweep_distance.d_min,
                d_max: self.sweep_distance.d_max,
                points: self.sweep_distance.points,
                tx_gain: db_to_linear(self.sweep_distance.tx_gain_db),
                rx_gain: db_to_linear(self.sweep_distance.rx_gain_db),
            },
            plane: self.sweep_plane.clone(),
            wavelength_sweep: self.sweep_wavelength.clone(),
            robustness: self.robustness.clone(),
            validate: self.validate.clone(),
            canonical,
            hash,
        })
    }

    fn validate(&self) -> Result<()> {
        let l = &self.link;
        finite("link.tx_power_dbm", l.tx_power_dbm)?;
        positive("link.wavelength", l.wavelength)?;
        positive("link.far_field_margin", l.far_field_margin)?;
        let r = &self.ris;
        at_least("ris.rows", r.rows, 1)?;
        at_least("ris.cols", r.cols, 1)?;
        positive("ris.element_size_x", r.element_size_x)?;
        positive("ris.element_size_y", r.element_size_y)?;
        finite("ris.element_gain_db", r.element_gain_db)?;
        if !(r.reflection_coeff > 0.0 && r.reflection_coeff <= 1.0) {
            return Err(cfg(format!("ris.reflection_coeff must lie in (0, 1], got {}", r.reflection_coeff)));
        }
        nonnegative("ris.pattern_exponent", r.pattern_exponent)?;
        at_least("tx.antennas", self.tx.antennas, 1)?;
        positive("tx.spacing_wavelengths", self.tx.spacing_wavelengths)?;
        finite("tx.gain_db", self.tx.gain_db)?;
        finite("rx.gain_db", self.rx.gain_db)?;

        let g = &self.geometry;
        positive("geometry.d_tr", g.d_tr)?;
        positive("geometry.h1", g.h1)?;
        positive("geometry.h2", g.h2)?;
        if g.d_tr <= (g.h1 - g.h2).abs() {
            return Err(cfg(format!("geometry.d_tr = {} must exceed |h1 - h2| = {}", g.d_tr, (g.h1 - g.h2).abs())));
        }
        finite("geometry.ris[0]", g.ris[0])?;
        finite("geometry.ris[1]", g.ris[1])?;

        let d = &self.sweep_distance;
        positive("sweep_distance.d_min", d.d_min)?;
        ordered("sweep_distance", d.d_min, d.d_max)?;
        range_points("sweep_distance.points", d.points, 201)?;
        finite("sweep_distance.tx_gain_db", d.tx_gain_db)?;
        finite("sweep_distance.rx_gain_db", d.rx_gain_db)?;

        let p = &self.sweep_plane;
        ordered("sweep_plane x", p.x_min, p.x_max)?;
        ordered("sweep_plane y", p.y_min, p.y_max)?;
        at_least("sweep_plane.grid", p.grid, 2)?;
        positive("sweep_plane.line_x_max", p.line_x_max)?;
        at_least("sweep_plane.line_points", p.line_points, 3)?;

        let w = &self.sweep_wavelength;
        positive("sweep_wavelength.lambda_min", w.lambda_min)?;
        ordered("sweep_wavelength", w.lambda_min, w.lambda_max)?;
        at_least("sweep_wavelength.points", w.points, 1)?;
        positive("sweep_wavelength.ratio", w.ratio)?;
        positive("sweep_wavelength.width", w.width)?;
        positive("sweep_wavelength.height", w.height)?;

        let b = &self.robustness;
        positive("robustness.half_width", b.half_width)?;
        at_least("robustness.grid", b.grid, 3)?;
        positive("robustness.threshold", b.threshold)?;
        positive("robustness.square", b.square)?;

        at_least("validate.phase_levels", self.validate.phase_levels, 2)?;
        at_least("paper_scale.rows", self.paper_scale.rows, 1)?;
        at_least("paper_scale.cols", self.paper_scale.cols, 1)?;
        Ok(())
    }
}

fn cfg(msg: String) -> HarnessError {
    HarnessError::Config(msg)
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(cfg(format!("{name} must be finite, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(cfg(format!("{name} must be positive, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(cfg(format!("{name} must be nonnegative, got {v}")))
    }
}

fn at_least(name: &str, v: usize, min: usize) -> Result<()> {
    if v >= min {
        Ok(())
    } else {
        Err(cfg(format!("{name} must be at least {min}, got {v}")))
    }
}

fn range_points(name: &str, v: usize, max: usize) -> Result<()> {
    at_least(name, v, 1)?;
    if v > max {
        return Err(cfg(format!("{name} must be at most {max}, got {v}")));
    }
    Ok(())
}

fn ordered(name: &str, lo: f64, hi: f64) -> Result<()> {
    finite(name, lo)?;
    finite(name, hi)?;
    if lo < hi {
        Ok(())
    } else {
        Err(cfg(format!("{name}: lower end {lo} must be below upper end {hi}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSweep {
    pub d_min: f64,
    pub d_max: f64,
    pub points: usize,
    pub tx_gain: f64,
    pub rx_gain: f64,
}

/// Validated configuration in linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig {
    /// Transmit power budget in watts.
    pub p_t: f64,
    pub wavelength: f64,
    pub direct_link: bool,
    pub far_field_mode: FarFieldMode,
    pub far_field_margin: f64,
    pub rows: usize,
    pub cols: usize,
    pub element_size_x: f64,
    pub element_size_y: f64,
    pub element_gain: f64,
    pub reflection_coeff: f64,
    pub pattern_exponent: f64,
    pub antennas: usize,
    pub spacing_wavelengths: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub geometry: GeometrySection,
    pub distance: DistanceSweep,
    pub plane: SweepPlaneSection,
    pub wavelength_sweep: SweepWavelengthSection,
    pub robustness: RobustnessSection,
    pub validate: ValidateSection,
    /// Canonical text of the effective configuration.
    pub canonical: String,
    /// SHA-256 of `canonical`, hex.
    pub hash: String,
}

impl SceneConfig {
    /// Reads `path` (or the bundled profile when `None`), applies the
    /// overrides and converts to linear units.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut file = match path {
            Some(p) => ConfigFile::read(p)?,
            None => ConfigFile::parse(DEFAULT_PROFILE)?,
        };
        file.apply(overrides);
        file.resolve()
    }

    pub fn antenna_spacing(&self) -> f64 {
        self.spacing_wavelengths * self.wavelength
    }
}
