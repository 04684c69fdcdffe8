//! Closed-form phases when the direct link coexists with the RIS link.
//!
//! With MRT at the transmitter the received power is
//! `‖a_TIR e^{j2π(d_TI+d_IR)/λ} (θᵀd) b + a_TR e^{j2π d_TR/λ} e‖² P_t`,
//! whose cross term carries the array coherence factor
//! `O = (1/N) Σ_p e^{j2π(Δd^I_{T,p} - Δd^R_{T,p})/λ}`. For a centered array the
//! sum is real; for a ULA it is the sinc ratio computed by [`two_path_o`].

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use super::closed_form::closed_form_phase_angles;
use super::{mrt_beamforming, phases_to_unit, Method, Solution};
use crate::em::{direct_channel_far_field, farfield_channel, received_power};
use crate::error::Result;
use crate::geometry::{ArrayLayout, LinkAngles, RisPanel};
use crate::scene::{FarFieldMode, Scene};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPathTerms {
    /// Coherence factor `O`, `|O| ≤ 1`.
    pub o: f64,
    /// Common phase `π/2 (O/|O| - 1) - 2π (d_TI + d_IR - d_TR)/λ` added to every element.
    pub phase_offset: f64,
    /// `O` vanished, so the sign branch was chosen arbitrarily (`+1`); the
    /// cross term is zero either way.
    pub sign_ambiguous: bool,
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// `O = sinc(N x) / sinc(x)` with `x = Δd_T (cos μ_TI - cos μ_TR) π / λ`.
///
/// Where `sin x` vanishes at a nonzero multiple of π the ratio is a removable
/// singularity and the direct sum `(1/N) Σ_p cos K_p` is used instead.
pub fn two_path_o(n: usize, spacing: f64, mu_ti: f64, mu_tr: f64, wavelength: f64) -> f64 {
    let x = spacing * (mu_ti.cos() - mu_tr.cos()) * PI / wavelength;
    if x == 0.0 {
        return 1.0;
    }
    if x.sin().abs() < 1e-4 {
        let center = (n as f64 + 1.0) / 2.0;
        return (1..=n).map(|p| (2.0 * x * (p as f64 - center)).cos()).sum::<f64>() / n as f64;
    }
    sinc(n as f64 * x) / sinc(x)
}

fn terms_from_o(o: f64, angles: &LinkAngles, wavelength: f64) -> TwoPathTerms {
    let sign_ambiguous = o == 0.0;
    let sign = if o < 0.0 { -1.0 } else { 1.0 };
    TwoPathTerms {
        o,
        phase_offset: PI / 2.0 * (sign - 1.0) - 2.0 * PI * (angles.d_ti + angles.d_ir - angles.d_tr) / wavelength,
        sign_ambiguous,
    }
}

/// Coherence factor and phase offset for a scene. ULAs use the sinc ratio,
/// planar arrays the direct sum over antennas.
pub fn two_path_terms(scene: &Scene, angles: &LinkAngles) -> Result<TwoPathTerms> {
    let o = match scene.tx.layout {
        ArrayLayout::Ula { count, spacing, .. } => two_path_o(count, spacing, angles.mu_ti, angles.mu_tr, scene.wavelength),
        ArrayLayout::Upa { .. } => {
            let to_ris = scene.tx.path_offsets(scene.ris.center)?;
            let to_rx = scene.tx.path_offsets(scene.rx)?;
            let k = 2.0 * PI / scene.wavelength;
            to_ris.iter().zip(&to_rx).map(|(a, b)| (k * (a - b)).cos()).sum::<f64>() / to_ris.len() as f64
        }
    };
    Ok(terms_from_o(o, angles, scene.wavelength))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPathPhases {
    pub theta: DVector<Complex64>,
    pub terms: TwoPathTerms,
}

/// RIS-only closed-form phases shifted by the common two-path offset.
pub fn closed_form_phases_two_path(scene: &Scene, angles: &LinkAngles) -> Result<TwoPathPhases> {
    let terms = two_path_terms(scene, angles)?;
    Ok(TwoPathPhases { theta: offset_phases(angles, &scene.ris, scene.wavelength, terms.phase_offset), terms })
}

fn offset_phases(angles: &LinkAngles, ris: &RisPanel, wavelength: f64, offset: f64) -> DVector<Complex64> {
    phases_to_unit(closed_form_phase_angles(angles, ris, wavelength).into_iter().map(|p| p + offset))
}

/// `N L² a_TIR² P_t + N a_TR² P_t + 2 N L a_TR a_TIR |O| P_t`.
pub fn two_path_power_closed_form(a_tir: f64, a_tr: f64, o: f64, n: usize, l: usize, p_t: f64) -> f64 {
    let n = n as f64;
    let l = l as f64;
    n * l * l * a_tir * a_tir * p_t + n * a_tr * a_tr * p_t + 2.0 * n * l * a_tr * a_tir * o.abs() * p_t
}

/// Two-path closed-form phases with MRT against the resulting effective
/// channel. Channels are the far-field RIS link plus the far-field direct link.
pub fn closed_form_two_path_solution(
    scene: &Scene,
    p_t: f64,
    mode: FarFieldMode,
    margin: f64,
) -> Result<(Solution, TwoPathTerms)> {
    let ff = farfield_channel(scene, mode, margin)?;
    let direct = direct_channel_far_field(scene)?;
    let a_tr = direct[0].norm();
    let channels = ff.channels.with_direct(direct)?;
    let phases = closed_form_phases_two_path(scene, &ff.angles)?;
    let v = mrt_beamforming(&channels.effective_channel(&phases.theta)?, p_t)?;
    let predicted_power = two_path_power_closed_form(
        ff.amplitude.a_tir,
        a_tr,
        phases.terms.o,
        scene.n_antennas(),
        scene.n_elements(),
        p_t,
    );
    debug_assert!({
        let numeric = received_power(&channels, &phases.theta, &v).unwrap_or(f64::NAN);
        (numeric - predicted_power).abs() <= 1e-6 * predicted_power.max(f64::MIN_POSITIVE)
    });
    Ok((Solution { v, theta: phases.theta, predicted_power, method: Method::ClosedFormTwoPath }, phases.terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Frame, TransmitterArray, Vec3};
    use crate::solvers::closed_form::closed_form_phases;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn angles(d_ti: f64, d_ir: f64, d_tr: f64) -> LinkAngles {
        LinkAngles {
            d_ti,
            d_ir,
            d_tr,
            theta_t: 0.4,
            phi_t: 3.0,
            theta_r: 0.3,
            phi_r: 0.2,
            mu_ti: 1.0,
            mu_tr: 1.2,
            theta_0: 0.7,
        }
    }

    #[test]
    fn equal_directions_are_fully_coherent() {
        assert_eq!(two_path_o(16, 0.0143, 0.7, 0.7, 0.0286), 1.0);
    }

    #[test]
    fn half_wavelength_pair_cancels() {
        // N = 2, Δd_T = λ/2, cos μ_TI - cos μ_TR = 1: numerator sinc(π) = 0
        let o = two_path_o(2, 0.5, 0.0, PI / 2.0, 1.0);
        assert!(o.abs() < 1e-15, "{o}");
    }

    #[test]
    fn sinc_ratio_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let n = rng.random_range(1..40);
            let spacing = rng.random_range(0.001..0.05);
            let lambda = rng.random_range(0.001..0.1);
            let mu_ti = rng.random_range(0.0..PI);
            let mu_tr = rng.random_range(0.0..PI);
            let o = two_path_o(n, spacing, mu_ti, mu_tr, lambda);
            let center = (n as f64 + 1.0) / 2.0;
            let k = |p: usize| 2.0 * PI * (p as f64 - center) * (mu_ti.cos() - mu_tr.cos()) * spacing / lambda;
            let direct: f64 = (1..=n).map(|p| k(p).cos()).sum::<f64>() / n as f64;
            let sines: f64 = (1..=n).map(|p| k(p).sin()).sum();
            assert!((o - direct).abs() < 1e-10, "n={n} o={o} direct={direct}");
            assert!(sines.abs() < 1e-10);
            assert!(o.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn removable_singularity_uses_direct_sum() {
        // x = π exactly: sinc(x) = 0 in the denominator
        let lambda = 1.0;
        let spacing = 1.0;
        let o = two_path_o(4, spacing, 0.0, PI / 2.0, lambda);
        // limit of sin(4x) / (4 sin x) at x = π
        assert!((o + 1.0).abs() < 1e-12, "{o}");
    }

    #[test]
    fn offset_vanishes_for_positive_o_on_straight_path() {
        let t = terms_from_o(0.5, &angles(3.0, 4.0, 7.0), 0.0286);
        assert!(t.phase_offset.abs() < 1e-9);
        assert!(!t.sign_ambiguous);
        let neg = terms_from_o(-0.5, &angles(3.0, 4.0, 7.0), 0.0286);
        assert!((neg.phase_offset + PI).abs() < 1e-9);
        let zero = terms_from_o(0.0, &angles(3.0, 4.0, 7.0), 0.0286);
        assert!(zero.sign_ambiguous);
        assert_eq!(zero.phase_offset, t.phase_offset);
    }

    fn scene() -> Scene {
        let ris = RisPanel {
            center: Vec3::new(100.0, 20.0, 0.0),
            rows: 4,
            cols: 3,
            element_size_x: 0.01,
            element_size_y: 0.01,
            frame: Frame::facing_z(),
            reflection_coeff: 1.0,
            pattern_exponent: 3.0,
            element_gain: 8.0,
        };
        let ris = ris.with_frame(
            crate::geometry::specular_frame(ris.center, Vec3::new(0.0, 0.0, 80.0), Vec3::new(200.0, 0.0, 80.0)).unwrap(),
        );
        let tx = TransmitterArray::ula(Vec3::new(0.0, 0.0, 80.0), 8, 0.0143, Vec3::Z, 1.0).unwrap();
        Scene::new(tx, ris, Vec3::new(200.0, 0.0, 80.0), 1.0, 0.0286).unwrap()
    }

    #[test]
    fn two_path_phases_differ_from_ris_only_by_constant() {
        let s = scene();
        let a = s.angles().unwrap();
        let base = closed_form_phases(&a, &s.ris, s.wavelength);
        let two = closed_form_phases_two_path(&s, &a).unwrap();
        let shift = two.theta[0] * base[0].conj();
        for q in 0..s.n_elements() {
            assert!((two.theta[q] * base[q].conj() - shift).norm() < 1e-9);
        }
    }

    #[test]
    fn power_formula_limits() {
        assert_eq!(two_path_power_closed_form(2.0, 0.0, 0.3, 3, 5, 0.1), 3.0 * 25.0 * 4.0 * 0.1);
        assert_eq!(two_path_power_closed_form(0.0, 2.0, 0.3, 3, 5, 0.1), 3.0 * 4.0 * 0.1);
    }

    #[test]
    fn formula_matches_numeric_power() {
        let s = scene();
        let p_t = 1e-3;
        let (sol, terms) = closed_form_two_path_solution(&s, p_t, FarFieldMode::Warn, 1.0).unwrap();
        let ff = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        let ch = ff.channels.with_direct(direct_channel_far_field(&s).unwrap()).unwrap();
        let numeric = received_power(&ch, &sol.theta, &sol.v).unwrap();
        assert!((numeric - sol.predicted_power).abs() <= 1e-6 * numeric, "{numeric} vs {}", sol.predicted_power);
        assert!(terms.o.abs() <= 1.0);
        sol.check_feasible(p_t).unwrap();
    }
}
