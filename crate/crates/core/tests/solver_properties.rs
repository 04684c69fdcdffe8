mod common;

use common::{far_scene, table_ii};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use ris_core::em::{amplitude_gain_tir, exact_channel, farfield_channel, received_power, ChannelSet};
use ris_core::geometry::link_angles;
use ris_core::solvers::{
    closed_form_power, closed_form_solution, closed_form_two_path_solution, leading_singular_pair, mrt_beamforming,
    power_upper_bound, svd_solution, two_path_o, two_path_power_closed_form,
};
use ris_core::validation::{random_channel_matrix, random_feasible_solutions};
use ris_core::{FarFieldMode, Frame, Scene, TransmitterArray, Vec3};

const P_T: f64 = 1e-3;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn rotate_scene(s: &Scene, axis: Vec3, angle: f64) -> Scene {
    let rot = |p: Vec3| p.rotate_about(axis, angle);
    let mut tx = s.tx;
    tx.center = rot(tx.center);
    if let ris_core::ArrayLayout::Ula { count, spacing, axis: a } = tx.layout {
        tx = TransmitterArray::ula(tx.center, count, spacing, rot(a), tx.element_gain).unwrap();
    }
    let frame = Frame::new(rot(s.ris.frame.normal()), rot(s.ris.frame.x_axis()), rot(s.ris.frame.y_axis())).unwrap();
    let ris = s.ris.with_center(rot(s.ris.center)).with_frame(frame);
    Scene { tx, ris, rx: rot(s.rx), ..*s }
}

#[test]
fn frozen_amplitude_gain_for_table_parameters() {
    // T and R each 36.87° off the panel normal, at 100 m and 200 m
    let s = table_ii(4, 4, 16, Vec3::new(-60.0, 0.0, 80.0), Vec3::new(120.0, 0.0, 160.0), Frame::facing_z(), Vec3::Y);
    let a = amplitude_gain_tir(&s, &s.angles().unwrap()).unwrap();
    // reference from 40-digit arithmetic
    assert!(rel(a.delta_tir, 0.001_170_364_656_199_530_2) < 1e-12, "{}", a.delta_tir);
    assert!(rel(a.a_tir, 5.851_823_280_997_650_8e-8) < 1e-12, "{}", a.a_tir);
}

#[test]
fn power_iteration_matches_full_svd() {
    for seed in 0..20 {
        let h = random_channel_matrix(3 + seed as usize % 7, 1 + seed as usize % 5, seed);
        let pair = leading_singular_pair(&h).unwrap();
        let sigma = h.clone().svd(false, false).singular_values.max();
        assert!(rel(pair.sigma_sq, sigma * sigma) < 1e-9, "seed {seed}");
        let hv = &h * &pair.right;
        assert!(rel(hv.norm(), sigma) < 1e-6);
    }
}

#[test]
fn bound_dominates_random_solutions() {
    let h = random_channel_matrix(6, 4, 99);
    let ch = ChannelSet { h_ti: h, h_ir: DVector::from_element(6, Complex64::new(0.5, 0.5)), h_tr: None, wavelength: 1.0 };
    let bound = power_upper_bound(&ch, P_T).unwrap();
    for (theta, v) in random_feasible_solutions(4, 6, P_T, 200, 3) {
        assert!(received_power(&ch, &theta, &v).unwrap() <= bound * (1.0 + 1e-9));
    }
    let svd = svd_solution(&ch, P_T).unwrap();
    svd.check_feasible(P_T).unwrap();
    assert!(received_power(&ch, &svd.theta, &svd.v).unwrap() <= bound * (1.0 + 1e-9));
}

#[test]
fn rank_one_svd_recovers_closed_form() {
    let s = table_ii(3, 4, 4, Vec3::new(-300.0, 20.0, 400.0), Vec3::new(350.0, -10.0, 380.0), Frame::facing_z(), Vec3::Y);
    let ff = farfield_channel(&s, FarFieldMode::Strict, 10.0).unwrap();
    let cf = closed_form_solution(&s, P_T, FarFieldMode::Strict, 10.0).unwrap();
    let bound = power_upper_bound(&ff.channels, P_T).unwrap();
    assert!(rel(bound, cf.predicted_power) < 1e-9);
    let svd = svd_solution(&ff.channels, P_T).unwrap();
    assert!(rel(received_power(&ff.channels, &svd.theta, &svd.v).unwrap(), bound) < 1e-9);
    // projected phases agree with the closed form up to a common rotation
    let rot = svd.theta[0] / cf.theta[0];
    for q in 0..s.n_elements() {
        assert!((svd.theta[q] - cf.theta[q] * rot).norm() < 1e-6);
    }
}

#[test]
fn two_path_sum_identity() {
    // the sine parts of the antenna sum cancel pairwise
    for (n, x) in [(16usize, 0.37), (5, 2.1), (2, -0.9), (9, 11.0)] {
        let c = (n as f64 + 1.0) / 2.0;
        let s: f64 = (1..=n).map(|p| (2.0 * x * (p as f64 - c)).sin()).sum();
        assert!(s.abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn angles_invariant_under_translation(s in far_scene(), shift in (-1e3f64..1e3, -1e3f64..1e3, -1e3f64..1e3)) {
        let by = Vec3::new(shift.0, shift.1, shift.2);
        let a = s.angles().unwrap();
        let tx = s.tx.translated(by);
        let b = link_angles(&tx, &s.ris.translated(by), s.rx + by).unwrap();
        for (x, y) in [(a.d_ti, b.d_ti), (a.d_ir, b.d_ir), (a.d_tr, b.d_tr), (a.theta_t, b.theta_t), (a.theta_r, b.theta_r),
                       (a.mu_ti, b.mu_ti), (a.mu_tr, b.mu_tr), (a.theta_0, b.theta_0)] {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
        }
        // azimuths compared on the circle
        for (x, y) in [(a.phi_t, b.phi_t), (a.phi_r, b.phi_r)] {
            prop_assert!(Complex64::from_polar(1.0, x - y).re > 1.0 - 1e-12);
        }
    }

    #[test]
    fn angles_invariant_under_rotation(s in far_scene(), axis in common::unit_vector(), angle in -3.0f64..3.0) {
        let a = s.angles().unwrap();
        let b = rotate_scene(&s, axis, angle).angles().unwrap();
        for (x, y) in [(a.d_ti, b.d_ti), (a.theta_t, b.theta_t), (a.theta_r, b.theta_r), (a.mu_ti, b.mu_ti), (a.mu_tr, b.mu_tr)] {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn far_field_channel_tracks_exact_phases(s in far_scene()) {
        prop_assume!(s.far_field(100.0).ok);
        let ff = farfield_channel(&s, FarFieldMode::Strict, 100.0).unwrap();
        let ex = exact_channel(&s).unwrap();
        let (a, b) = (ff.channels.cascade(), ex.cascade());
        let amp = a[(0, 0)].norm();
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert!((x.norm() - amp).abs() <= 1e-12 * amp);
            prop_assert!((x / y).arg().abs() < 0.05);
        }
    }

    #[test]
    fn closed_form_power_and_feasibility(s in far_scene()) {
        let sol = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        sol.check_feasible(P_T).unwrap();
        let ff = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        let numeric = received_power(&ff.channels, &sol.theta, &sol.v).unwrap();
        prop_assert!(rel(numeric, sol.predicted_power) < 1e-6);
        prop_assert!(rel(sol.predicted_power, closed_form_power(s.n_antennas(), s.n_elements(), ff.amplitude.a_tir, P_T)) < 1e-15);
    }

    #[test]
    fn closed_form_dominates_random_solutions(s in far_scene(), seed in 0u64..1000) {
        let sol = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        let ff = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        for (theta, v) in random_feasible_solutions(s.n_antennas(), s.n_elements(), P_T, 1000, seed) {
            prop_assert!(received_power(&ff.channels, &theta, &v).unwrap() <= sol.predicted_power * (1.0 + 1e-9));
        }
    }

    #[test]
    fn svd_never_exceeds_bound(s in common::scene_params(false).prop_filter_map("degenerate", |p| common::build(&p))) {
        let ch = exact_channel(&s).unwrap();
        let bound = power_upper_bound(&ch, P_T).unwrap();
        let svd = svd_solution(&ch, P_T).unwrap();
        svd.check_feasible(P_T).unwrap();
        prop_assert!(received_power(&ch, &svd.theta, &svd.v).unwrap() <= bound * (1.0 + 1e-9));
        let cf = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        prop_assert!(received_power(&ch, &cf.theta, &cf.v).unwrap() <= bound * (1.0 + 1e-9));
    }

    #[test]
    fn mrt_is_optimal_for_any_channel(seed in 0u64..10_000, n in 1usize..8) {
        let h = random_channel_matrix(1, n, seed).row(0).transpose();
        let v = mrt_beamforming(&h, P_T).unwrap();
        let y: Complex64 = h.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        prop_assert!(rel(y.norm_sqr(), P_T * h.norm_squared()) < 1e-12);
        for (_, u) in random_feasible_solutions(n, 1, P_T, 100, seed) {
            let z: Complex64 = h.iter().zip(u.iter()).map(|(a, b)| a * b).sum();
            prop_assert!(z.norm_sqr() <= y.norm_sqr() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn common_phase_rotation_is_harmless(s in far_scene(), alpha in 0.0f64..6.28) {
        let ff = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        let sol = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        let rotated = sol.theta.map(|t| t * Complex64::from_polar(1.0, alpha));
        let v = mrt_beamforming(&ff.channels.effective_channel(&rotated).unwrap(), P_T).unwrap();
        prop_assert!(rel(received_power(&ff.channels, &rotated, &v).unwrap(), sol.predicted_power) < 1e-9);
    }

    #[test]
    fn received_power_is_quadratic_in_beamformer(s in far_scene(), scale in 0.1f64..3.0) {
        let ff = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        let sol = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        let v2 = &sol.v * Complex64::from(scale);
        let p1 = received_power(&ff.channels, &sol.theta, &sol.v).unwrap();
        let p2 = received_power(&ff.channels, &sol.theta, &v2).unwrap();
        prop_assert!(rel(p2, scale * scale * p1) < 1e-12);
    }

    #[test]
    fn doubling_antennas_doubles_power(s in far_scene()) {
        let ris_core::ArrayLayout::Ula { count, spacing, axis } = s.tx.layout else { unreachable!() };
        let doubled = Scene { tx: TransmitterArray::ula(s.tx.center, 2 * count, spacing, axis, s.tx.element_gain).unwrap(), ..s };
        let a = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        let b = closed_form_solution(&doubled, P_T, FarFieldMode::Warn, 1.0).unwrap();
        prop_assert!(rel(b.predicted_power, 2.0 * a.predicted_power) < 1e-9);
        let ff = farfield_channel(&doubled, FarFieldMode::Warn, 1.0).unwrap();
        let ffa = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        prop_assert_eq!(ff.amplitude.a_tir, ffa.amplitude.a_tir);
        let pa = received_power(&ffa.channels, &a.theta, &a.v).unwrap();
        let pb = received_power(&ff.channels, &b.theta, &b.v).unwrap();
        prop_assert!(rel(pb, 2.0 * pa) < 1e-9);
    }

    #[test]
    fn doubling_elements_quadruples_power(s in far_scene()) {
        let doubled = Scene { ris: ris_core::RisPanel { rows: 2 * s.ris.rows, ..s.ris }, ..s };
        let a = closed_form_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        let b = closed_form_solution(&doubled, P_T, FarFieldMode::Warn, 1.0).unwrap();
        prop_assert!(rel(b.predicted_power, 4.0 * a.predicted_power) < 1e-9);
        let ffa = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        let ffb = farfield_channel(&doubled, FarFieldMode::Warn, 1.0).unwrap();
        let pa = received_power(&ffa.channels, &a.theta, &a.v).unwrap();
        let pb = received_power(&ffb.channels, &b.theta, &b.v).unwrap();
        prop_assert!(rel(pb, 4.0 * pa) < 1e-9);
    }

    #[test]
    fn sinc_ratio_matches_direct_sum(n in 1usize..40, spacing in 0.001f64..0.05, mu_a in 0.0f64..3.14, mu_b in 0.0f64..3.14, lambda in 0.005f64..0.1) {
        let o = two_path_o(n, spacing, mu_a, mu_b, lambda);
        let x = spacing * (mu_a.cos() - mu_b.cos()) * std::f64::consts::PI / lambda;
        let c = (n as f64 + 1.0) / 2.0;
        let direct: f64 = (1..=n).map(|p| (2.0 * x * (p as f64 - c)).cos()).sum::<f64>() / n as f64;
        prop_assert!((o - direct).abs() < 1e-10);
        prop_assert!(o.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn two_path_formula_matches_numeric_power(s in far_scene()) {
        let (sol, terms) = closed_form_two_path_solution(&s, P_T, FarFieldMode::Warn, 1.0).unwrap();
        sol.check_feasible(P_T).unwrap();
        let ff = farfield_channel(&s, FarFieldMode::Warn, 1.0).unwrap();
        let ch = ff.channels.clone().with_direct(ris_core::em::direct_channel_far_field(&s).unwrap()).unwrap();
        let numeric = received_power(&ch, &sol.theta, &sol.v).unwrap();
        prop_assert!(rel(numeric, sol.predicted_power) < 1e-6, "{} vs {}", numeric, sol.predicted_power);
        let a_tr = ris_core::em::direct_amplitude(&s, ff.angles.d_tr);
        let expected = two_path_power_closed_form(ff.amplitude.a_tir, a_tr, terms.o, s.n_antennas(), s.n_elements(), P_T);
        prop_assert!(rel(expected, sol.predicted_power) < 1e-12);
    }
}

#[test]
fn gaussian_cascade_bound_is_lsigma() {
    let h = random_channel_matrix(5, 3, 17);
    let ch = ChannelSet { h_ti: h.clone(), h_ir: DVector::from_element(5, Complex64::new(1.0, 0.0)), h_tr: None, wavelength: 1.0 };
    let sigma = DMatrix::from(h).svd(false, false).singular_values.max();
    assert!(rel(power_upper_bound(&ch, 2.0).unwrap(), 5.0 * sigma * sigma * 2.0) < 1e-9);
}
