//! Beamforming and phase-shift solutions.
//!
//! * [`mrt_beamforming`]: maximum-ratio transmission against any effective channel.
//! * [`closed_form`]: plane-wave phase alignment and beamforming for the RIS-only link.
//! * [`two_path`]: the closed form when the direct link is also present.
//! * [`svd`]: leading-singular-vector phases for arbitrary (e.g. near-field) channels,
//!   and the matching received-power upper bound.
//! * [`design`]: wavelength-proportional panel sizing.

pub mod closed_form;
pub mod design;
pub mod svd;
pub mod two_path;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::em::UNIT_MODULUS_TOL;
use crate::error::{Result, RisError};

pub use closed_form::{closed_form_beamforming, closed_form_phases, closed_form_power, closed_form_solution};
pub use design::{anti_decay_design, AntiDecayDesign, AntiDecayMode};
pub use svd::{leading_singular_pair, power_upper_bound, svd_solution, SingularPair};
pub use two_path::{
    closed_form_phases_two_path, closed_form_two_path_solution, two_path_o, two_path_power_closed_form,
    two_path_terms, TwoPathPhases, TwoPathTerms,
};

/// Relative slack on `‖v‖² ≤ P_t`.
pub const POWER_BUDGET_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    ClosedFormTwoPath,
    SvdProjected,
    Mrt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Beamforming vector, length `N`.
    pub v: DVector<Complex64>,
    /// Unit-modulus phase shifts, length `L`.
    pub theta: DVector<Complex64>,
    /// Received power in watts predicted by the method.
    pub predicted_power: f64,
    pub method: Method,
}

impl Solution {
    /// Checks the power budget and the unit-modulus constraint.
    pub fn check_feasible(&self, p_t: f64) -> Result<()> {
        let used = self.v.norm_squared();
        if used > p_t * (1.0 + POWER_BUDGET_TOL) {
            return Err(RisError::InvalidParameter(format!("beamformer uses {used} W of a {p_t} W budget")));
        }
        if let Some((index, t)) = self.theta.iter().enumerate().find(|(_, t)| (t.norm() - 1.0).abs() > UNIT_MODULUS_TOL) {
            return Err(RisError::NotUnitModulus { index, modulus: t.norm() });
        }
        Ok(())
    }
}

/// `v = √P_t · conj(h) / ‖h‖`, optimal for the row channel `h` under `‖v‖² ≤ P_t`.
pub fn mrt_beamforming(effective_channel: &DVector<Complex64>, p_t: f64) -> Result<DVector<Complex64>> {
    let norm = effective_channel.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(RisError::ZeroChannel);
    }
    Ok(effective_channel.map(|h| h.conj() * (p_t.sqrt() / norm)))
}

/// `e^{jφ}` for every phase.
pub fn phases_to_unit(phases: impl IntoIterator<Item = f64>) -> DVector<Complex64> {
    let v: Vec<Complex64> = phases.into_iter().map(|p| Complex64::from_polar(1.0, p)).collect();
    DVector::from_vec(v)
}
