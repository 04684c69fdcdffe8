use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use super::{phases_to_unit, Method, Solution};
use crate::em::farfield_channel;
use crate::error::Result;
use crate::geometry::{LinkAngles, RisPanel, TransmitterArray, Vec3};
use crate::scene::{FarFieldMode, Scene};

/// Phase-alignment angles `φ*_q` that cancel the plane-wave path differences
/// across the panel.
pub fn closed_form_phase_angles(angles: &LinkAngles, ris: &RisPanel, wavelength: f64) -> Vec<f64> {
    let (tc, ts) = angles.t_direction_cosines();
    let (rc, rs) = angles.r_direction_cosines();
    let k = 2.0 * PI / wavelength;
    (0..ris.len())
        .map(|q| {
            let (u, v) = ris.element_offset(q);
            k * ((tc + rc) * u + (ts + rs) * v)
        })
        .collect()
}

/// `θ*_q = e^{jφ*_q}`.
pub fn closed_form_phases(angles: &LinkAngles, ris: &RisPanel, wavelength: f64) -> DVector<Complex64> {
    phases_to_unit(closed_form_phase_angles(angles, ris, wavelength))
}

/// `v* = √(P_t/N) b*` where `b` holds the plane-wave phases of the antennas
/// toward the panel center. For a ULA entry `p` is
/// `√(P_t/N) e^{-j(2π/λ)((N+1)/2 - p)Δd_T cos μ_TI}`.
pub fn closed_form_beamforming(
    tx: &TransmitterArray,
    ris_center: Vec3,
    wavelength: f64,
    p_t: f64,
) -> Result<DVector<Complex64>> {
    let offsets = tx.path_offsets(ris_center)?;
    let scale = (p_t / offsets.len() as f64).sqrt();
    Ok(DVector::from_iterator(
        offsets.len(),
        offsets.iter().map(|o| Complex64::from_polar(scale, -2.0 * PI * o / wavelength)),
    ))
}

/// Optimal RIS-link power `N L² a_TIR² P_t`.
pub fn closed_form_power(n: usize, l: usize, a_tir: f64, p_t: f64) -> f64 {
    n as f64 * (l as f64).powi(2) * a_tir * a_tir * p_t
}

/// Closed-form phases and beamformer for a scene; the predicted power is the
/// analytic `N L² a_TIR² P_t`.
pub fn closed_form_solution(scene: &Scene, p_t: f64, mode: FarFieldMode, margin: f64) -> Result<Solution> {
    let ff = farfield_channel(scene, mode, margin)?;
    let theta = closed_form_phases(&ff.angles, &scene.ris, scene.wavelength);
    let v = closed_form_beamforming(&scene.tx, scene.ris.center, scene.wavelength, p_t)?;
    Ok(Solution {
        v,
        theta,
        predicted_power: closed_form_power(scene.n_antennas(), scene.n_elements(), ff.amplitude.a_tir, p_t),
        method: Method::ClosedForm,
    })
}
