//! Panel sizing that keeps the RIS-link power independent of the wavelength.
//!
//! The closed-form power scales as `L² d_x d_y λ²`. Fixing the panel area and
//! taking `d_x = d_y = ratio·λ` makes `L ∝ λ⁻²` and the product constant;
//! fixing the element size and taking `L ∝ λ⁻¹` does the same.

use crate::error::{Result, RisError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AntiDecayMode {
    /// Fixed panel extent in meters; element size follows the wavelength.
    FixArea { width: f64, height: f64 },
    /// Fixed element size; the element count follows the wavelength.
    FixElement { element_size_x: f64, element_size_y: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiDecayDesign {
    pub rows: usize,
    pub cols: usize,
    pub element_size_x: f64,
    pub element_size_y: f64,
    /// Panel area after rounding the grid down, in m².
    pub achieved_area: f64,
    /// The ideal (real-valued) grid was not an integer and got rounded down.
    pub rounded: bool,
}

impl AntiDecayDesign {
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

const GRID_EPS: f64 = 1e-9;

fn floor_count(x: f64) -> (usize, bool) {
    // tolerate representation error just below an integer
    let n = (x + GRID_EPS).floor();
    (n as usize, (x - n).abs() > GRID_EPS)
}

/// Grid parameters for wavelength `wavelength`.
///
/// `ratio` is `d_x/λ` (= `d_y/λ`) in [`AntiDecayMode::FixArea`]. In
/// [`AntiDecayMode::FixElement`] it is the invariant product `L·λ` in meters and
/// the grid is square with `⌊√(ratio/λ)⌋` elements per side.
pub fn anti_decay_design(wavelength: f64, mode: AntiDecayMode, ratio: f64) -> Result<AntiDecayDesign> {
    if !(ratio > 0.0 && ratio.is_finite()) {
        return Err(RisError::InvalidParameter(format!("design ratio must be positive, got {ratio}")));
    }
    if !(wavelength > 0.0 && wavelength.is_finite()) {
        return Err(RisError::InvalidParameter(format!("wavelength must be positive, got {wavelength}")));
    }
    let design = match mode {
        AntiDecayMode::FixArea { width, height } => {
            if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
                return Err(RisError::InvalidParameter(format!("panel extent must be positive, got {width} × {height}")));
            }
            let d = ratio * wavelength;
            let (cols, rc) = floor_count(width / d);
            let (rows, rr) = floor_count(height / d);
            AntiDecayDesign {
                rows,
                cols,
                element_size_x: d,
                element_size_y: d,
                achieved_area: (rows * cols) as f64 * d * d,
                rounded: rc || rr,
            }
        }
        AntiDecayMode::FixElement { element_size_x, element_size_y } => {
            if !(element_size_x > 0.0 && element_size_y > 0.0) {
                return Err(RisError::InvalidParameter("element size must be positive".into()));
            }
            let (side, rounded) = floor_count((ratio / wavelength).sqrt());
            AntiDecayDesign {
                rows: side,
                cols: side,
                element_size_x,
                element_size_y,
                achieved_area: (side * side) as f64 * element_size_x * element_size_y,
                rounded,
            }
        }
    };
    if design.is_empty() {
        return Err(RisError::InvalidParameter(format!(
            "panel too small for a single element at wavelength {wavelength}"
        )));
    }
    Ok(design)
}
