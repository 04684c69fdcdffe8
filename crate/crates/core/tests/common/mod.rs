#![allow(dead_code)]

use proptest::prelude::*;
use ris_core::geometry::specular_frame;
use ris_core::{Frame, RisPanel, Scene, TransmitterArray, Vec3};

pub fn unit_vector() -> impl Strategy<Value = Vec3> {
    (0.0..std::f64::consts::TAU, -1.0f64..1.0).prop_map(|(phi, z)| {
        let s = (1.0 - z * z).sqrt();
        Vec3::new(s * phi.cos(), s * phi.sin(), z)
    })
}

#[derive(Debug, Clone, Copy)]
pub struct SceneParams {
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub d_elem: f64,
    pub wavelength: f64,
    pub d_ti: f64,
    pub d_ir: f64,
    pub dir_t: Vec3,
    pub dir_r: Vec3,
    pub axis: Vec3,
    pub tilt_axis: Vec3,
    pub tilt: f64,
    pub k: f64,
}

/// Scene with the panel at the origin turned near-specular toward T and R.
pub fn build(p: &SceneParams) -> Option<Scene> {
    let t = p.dir_t * p.d_ti;
    let r = p.dir_r * p.d_ir;
    // keep the angle at the panel away from 0 and π
    let cos0 = p.dir_t.dot(p.dir_r);
    if !(-0.9..0.9).contains(&cos0) {
        return None;
    }
    let frame = specular_frame(Vec3::ZERO, t, r).ok()?.rotated(p.tilt_axis, p.tilt);
    let ris = RisPanel {
        center: Vec3::ZERO,
        rows: p.rows,
        cols: p.cols,
        element_size_x: p.d_elem,
        element_size_y: p.d_elem * 1.2,
        frame,
        reflection_coeff: 0.8,
        pattern_exponent: p.k,
        element_gain: 7.998,
    };
    let tx = TransmitterArray::ula(t, p.n, p.wavelength / 2.0, p.axis, 3.0).ok()?;
    let scene = Scene::new(tx, ris, r, 2.0, p.wavelength).ok()?;
    // both directions must stay in front of the panel
    let a = scene.angles().ok()?;
    (a.theta_t < 1.3 && a.theta_r < 1.3).then_some(scene)
}

pub fn scene_params(far: bool) -> impl Strategy<Value = SceneParams> {
    let dist = if far { 200.0..2000.0 } else { 5.0..50.0 };
    (
        (1usize..7, 1usize..6, 1usize..6),
        (0.005f64..0.02, 0.01f64..0.05),
        (dist.clone(), dist),
        (unit_vector(), unit_vector(), unit_vector(), unit_vector()),
        (-0.3f64..0.3, prop_oneof![Just(0.0), Just(1.0), Just(3.0), 0.5f64..4.0]),
    )
        .prop_map(|((n, rows, cols), (d_elem, wavelength), (d_ti, d_ir), (dir_t, dir_r, axis, tilt_axis), (tilt, k))| {
            SceneParams { n, rows, cols, d_elem, wavelength, d_ti, d_ir, dir_t, dir_r, axis, tilt_axis, tilt, k }
        })
}

pub fn far_scene() -> impl Strategy<Value = Scene> {
    scene_params(true).prop_filter_map("degenerate scene", |p| build(&p))
}

/// Table II parameters on a `rows × cols` panel with `n` antennas.
pub fn table_ii(rows: usize, cols: usize, n: usize, t: Vec3, r: Vec3, frame: Frame, axis: Vec3) -> Scene {
    let lambda = 0.0286;
    let ris = RisPanel {
        center: Vec3::ZERO,
        rows,
        cols,
        element_size_x: 0.01,
        element_size_y: 0.01,
        frame,
        reflection_coeff: 1.0,
        pattern_exponent: 3.0,
        element_gain: 10f64.powf(0.903),
    };
    let tx = TransmitterArray::ula(t, n, lambda / 2.0, axis, 10f64.powf(2.1)).unwrap();
    Scene::new(tx, ris, r, 10f64.powf(2.1), lambda).unwrap()
}
