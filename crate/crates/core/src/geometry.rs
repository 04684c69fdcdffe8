//! Scene geometry: antenna and reflective-element positions, the angles the
//! electromagnetic model consumes, and the far-field validity test.
//!
//! Conventions used throughout the crate:
//!
//! * Antenna `p` (1-based) of a ULA sits at `center + ((N+1)/2 - p) * spacing * axis`.
//! * Element `q` (0-based, row-major) of a panel has grid indices
//!   `m_q = q % cols + 1` (column) and `n_q = q / cols + 1` (row) and sits at
//!   `center + (m_q - (cols+1)/2) d_x x̂ + (n_q - (rows+1)/2) d_y ŷ`.
//! * Elevation angles are measured from the panel normal toward the remote
//!   node; azimuths counterclockwise from x̂ in the panel plane, in `[0, 2π)`.
//! * `μ_TI` is the angle between the array axis and `r_T - r_I`, so that the
//!   path to antenna `p` is longer than the center path by `Δd_{T,p} cos μ_TI`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Result, RisError};

const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Angle between two nonzero vectors in `[0, π]`.
    pub fn angle_to(self, other: Vec3) -> f64 {
        // atan2 form stays accurate near 0 and π
        self.cross(other).norm().atan2(self.dot(other))
    }

    /// Rodrigues rotation about a unit axis.
    pub fn rotate_about(self, axis: Vec3, angle: f64) -> Vec3 {
        let (s, c) = angle.sin_cos();
        self * c + axis.cross(self) * s + axis * (axis.dot(self) * (1.0 - c))
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_perpendicular(self) -> Vec3 {
        let a = self.x.abs();
        let b = self.y.abs();
        let c = self.z.abs();
        let helper = if a <= b && a <= c {
            Vec3::X
        } else if b <= c {
            Vec3::Y
        } else {
            Vec3::Z
        };
        self.cross(helper).normalized().expect("nonzero input vector")
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

fn check_unit(v: Vec3, what: &str) -> Result<()> {
    if !v.is_finite() || (v.norm() - 1.0).abs() > UNIT_TOL {
        return Err(RisError::InvalidParameter(format!("{what} must be a unit vector, got {v:?}")));
    }
    Ok(())
}

fn check_positive(value: f64, what: &str) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(RisError::InvalidParameter(format!("{what} must be positive, got {value}")));
    }
    Ok(())
}

fn check_point(v: Vec3, what: &str) -> Result<()> {
    if !v.is_finite() {
        return Err(RisError::InvalidParameter(format!("{what} must be finite, got {v:?}")));
    }
    Ok(())
}

/// Right-handed orthonormal panel frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    normal: Vec3,
    x_axis: Vec3,
    y_axis: Vec3,
}

impl Frame {
    pub fn new(normal: Vec3, x_axis: Vec3, y_axis: Vec3) -> Result<Self> {
        check_unit(normal, "frame normal")?;
        check_unit(x_axis, "frame x axis")?;
        check_unit(y_axis, "frame y axis")?;
        let worst = normal.dot(x_axis).abs().max(normal.dot(y_axis).abs()).max(x_axis.dot(y_axis).abs());
        if worst > UNIT_TOL {
            return Err(RisError::InvalidParameter(format!("frame axes not orthogonal (max |dot| = {worst:e})")));
        }
        Ok(Self { normal, x_axis, y_axis })
    }

    /// Frame with the given normal and in-plane x axis; ŷ = n̂ × x̂.
    pub fn from_normal_and_x(normal: Vec3, x_axis: Vec3) -> Result<Self> {
        let n = normal.normalized().ok_or_else(|| RisError::InvalidParameter("zero normal".into()))?;
        let x = (x_axis - n * n.dot(x_axis))
            .normalized()
            .ok_or_else(|| RisError::InvalidParameter("x axis parallel to normal".into()))?;
        Frame::new(n, x, n.cross(x))
    }

    /// Panel in the z = 0 plane facing +z.
    pub fn facing_z() -> Self {
        Self { normal: Vec3::Z, x_axis: Vec3::X, y_axis: Vec3::Y }
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn x_axis(&self) -> Vec3 {
        self.x_axis
    }

    pub fn y_axis(&self) -> Vec3 {
        self.y_axis
    }

    /// Rotation about `axis`, which is normalized first; a zero axis leaves the frame unchanged.
    pub fn rotated(&self, axis: Vec3, angle: f64) -> Frame {
        let Some(axis) = axis.normalized() else {
            return *self;
        };
        let n = self.normal.rotate_about(axis, angle);
        let x = self.x_axis.rotate_about(axis, angle);
        let y = self.y_axis.rotate_about(axis, angle);
        Frame { normal: n, x_axis: x, y_axis: y }
    }
}

/// Panel frame that makes a panel at `center` reflect specularly from `t`
/// toward `r`: the normal bisects the two directions and x̂ points from the
/// transmitter side to the receiver side.
pub fn specular_frame(center: Vec3, t: Vec3, r: Vec3) -> Result<Frame> {
    let to_t = (t - center)
        .normalized()
        .ok_or_else(|| RisError::DegenerateGeometry("panel coincides with transmitter".into()))?;
    let to_r = (r - center)
        .normalized()
        .ok_or_else(|| RisError::DegenerateGeometry("panel coincides with receiver".into()))?;
    let bisector = to_t + to_r;
    if bisector.norm() < 1e-12 {
        return Err(RisError::DegenerateGeometry(
            "panel lies between transmitter and receiver, no specular orientation".into(),
        ));
    }
    let normal = bisector / bisector.norm();
    let x = match (to_r - to_t).normalized() {
        Some(x) if (to_r - to_t).norm() > 1e-12 => x,
        _ => normal.any_perpendicular(),
    };
    Frame::from_normal_and_x(normal, x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArrayLayout {
    Ula { count: usize, spacing: f64, axis: Vec3 },
    Upa { rows: usize, cols: usize, spacing_x: f64, spacing_y: f64, axis_x: Vec3, axis_y: Vec3 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitterArray {
    pub center: Vec3,
    pub layout: ArrayLayout,
    /// Linear power gain of each antenna.
    pub element_gain: f64,
}

impl TransmitterArray {
    pub fn ula(center: Vec3, count: usize, spacing: f64, axis: Vec3, element_gain: f64) -> Result<Self> {
        let tx = Self { center, layout: ArrayLayout::Ula { count, spacing, axis }, element_gain };
        tx.validate()?;
        Ok(tx)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn upa(
        center: Vec3,
        rows: usize,
        cols: usize,
        spacing_x: f64,
        spacing_y: f64,
        axis_x: Vec3,
        axis_y: Vec3,
        element_gain: f64,
    ) -> Result<Self> {
        let tx = Self { center, layout: ArrayLayout::Upa { rows, cols, spacing_x, spacing_y, axis_x, axis_y }, element_gain };
        tx.validate()?;
        Ok(tx)
    }

    pub fn validate(&self) -> Result<()> {
        check_point(self.center, "array center")?;
        if !(self.element_gain >= 0.0 && self.element_gain.is_finite()) {
            return Err(RisError::InvalidParameter(format!("antenna gain must be nonnegative, got {}", self.element_gain)));
        }
        match self.layout {
            ArrayLayout::Ula { count, spacing, axis } => {
                if count == 0 {
                    return Err(RisError::InvalidParameter("array needs at least one antenna".into()));
                }
                check_positive(spacing, "antenna spacing")?;
                check_unit(axis, "array axis")
            }
            ArrayLayout::Upa { rows, cols, spacing_x, spacing_y, axis_x, axis_y } => {
                if rows == 0 || cols == 0 {
                    return Err(RisError::InvalidParameter("array needs at least one antenna".into()));
                }
                check_positive(spacing_x, "antenna spacing x")?;
                check_positive(spacing_y, "antenna spacing y")?;
                check_unit(axis_x, "array x axis")?;
                check_unit(axis_y, "array y axis")?;
                if axis_x.dot(axis_y).abs() > UNIT_TOL {
                    return Err(RisError::InvalidParameter("array axes not orthogonal".into()));
                }
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        match self.layout {
            ArrayLayout::Ula { count, .. } => count,
            ArrayLayout::Upa { rows, cols, .. } => rows * cols,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reference axis used for `μ` angles (the ULA axis, or the UPA x axis).
    pub fn axis(&self) -> Vec3 {
        match self.layout {
            ArrayLayout::Ula { axis, .. } => axis,
            ArrayLayout::Upa { axis_x, .. } => axis_x,
        }
    }

    /// Displacements of each antenna from the array center.
    pub fn offsets(&self) -> Vec<Vec3> {
        match self.layout {
            ArrayLayout::Ula { count, spacing, axis } => {
                (1..=count).map(|p| axis * ula_offset(count, p, spacing)).collect()
            }
            ArrayLayout::Upa { rows, cols, spacing_x, spacing_y, axis_x, axis_y } => (0..rows * cols)
                .map(|p| {
                    let m = (p % cols + 1) as f64;
                    let n = (p / cols + 1) as f64;
                    axis_x * ((m - (cols as f64 + 1.0) / 2.0) * spacing_x)
                        + axis_y * ((n - (rows as f64 + 1.0) / 2.0) * spacing_y)
                })
                .collect(),
        }
    }

    pub fn antenna_positions(&self) -> Vec<Vec3> {
        self.offsets().into_iter().map(|o| self.center + o).collect()
    }

    /// Far-field path-length change of each antenna relative to the array
    /// center for a remote point at `target`: `-(offset · û)`, with `û` the
    /// unit vector from the array center toward the target.
    pub fn path_offsets(&self, target: Vec3) -> Result<Vec<f64>> {
        let u = (target - self.center)
            .normalized()
            .ok_or_else(|| RisError::DegenerateGeometry("target coincides with array center".into()))?;
        Ok(self.offsets().into_iter().map(|o| -o.dot(u)).collect())
    }

    /// Length scale entering the first far-field condition (`N Δd_T` for a ULA).
    pub fn aperture_scale(&self) -> f64 {
        match self.layout {
            ArrayLayout::Ula { count, spacing, .. } => count as f64 * spacing,
            ArrayLayout::Upa { rows, cols, spacing_x, spacing_y, .. } => {
                (rows * cols) as f64 * spacing_x.hypot(spacing_y)
            }
        }
    }

    pub fn translated(&self, by: Vec3) -> Self {
        Self { center: self.center + by, ..*self }
    }
}

/// Signed distance `Δd_{T,p} = ((N+1)/2 - p) Δd_T` of antenna `p` (1-based).
pub fn ula_offset(count: usize, p: usize, spacing: f64) -> f64 {
    ((count as f64 + 1.0) / 2.0 - p as f64) * spacing
}

/// Rectangular grid of reflective elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisPanel {
    pub center: Vec3,
    pub rows: usize,
    pub cols: usize,
    pub element_size_x: f64,
    pub element_size_y: f64,
    pub frame: Frame,
    pub reflection_coeff: f64,
    pub pattern_exponent: f64,
    /// Linear power gain `G` of a reflective element.
    pub element_gain: f64,
}

impl RisPanel {
    pub fn validate(&self) -> Result<()> {
        check_point(self.center, "panel center")?;
        if self.rows == 0 || self.cols == 0 {
            return Err(RisError::InvalidParameter("panel needs at least one element".into()));
        }
        check_positive(self.element_size_x, "element size d_x")?;
        check_positive(self.element_size_y, "element size d_y")?;
        if !(0.0..=1.0).contains(&self.reflection_coeff) {
            return Err(RisError::InvalidParameter(format!(
                "reflection coefficient must lie in [0, 1], got {}",
                self.reflection_coeff
            )));
        }
        if !(self.pattern_exponent >= 0.0 && self.pattern_exponent.is_finite()) {
            return Err(RisError::InvalidParameter(format!(
                "pattern exponent must be nonnegative, got {}",
                self.pattern_exponent
            )));
        }
        if !(self.element_gain >= 0.0 && self.element_gain.is_finite()) {
            return Err(RisError::InvalidParameter(format!("element gain must be nonnegative, got {}", self.element_gain)));
        }
        // re-run the frame checks in case the struct was assembled by hand
        Frame::new(self.frame.normal, self.frame.x_axis, self.frame.y_axis).map(|_| ())
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 1-based `(m_q, n_q)` = (column, row) of element `q` (0-based, row-major).
    pub fn grid_index(&self, q: usize) -> (usize, usize) {
        (q % self.cols + 1, q / self.cols + 1)
    }

    /// In-plane coordinates `(u, v)` of element `q` relative to the panel center.
    pub fn element_offset(&self, q: usize) -> (f64, f64) {
        let (m, n) = self.grid_index(q);
        (
            (m as f64 - (self.cols as f64 + 1.0) / 2.0) * self.element_size_x,
            (n as f64 - (self.rows as f64 + 1.0) / 2.0) * self.element_size_y,
        )
    }

    pub fn element_positions(&self) -> Vec<Vec3> {
        (0..self.len())
            .map(|q| {
                let (u, v) = self.element_offset(q);
                self.center + self.frame.x_axis * u + self.frame.y_axis * v
            })
            .collect()
    }

    pub fn element_diagonal(&self) -> f64 {
        self.element_size_x.hypot(self.element_size_y)
    }

    /// Physical panel area `L d_x d_y`.
    pub fn area(&self) -> f64 {
        self.len() as f64 * self.element_size_x * self.element_size_y
    }

    pub fn translated(&self, by: Vec3) -> Self {
        Self { center: self.center + by, ..*self }
    }

    pub fn with_center(&self, center: Vec3) -> Self {
        Self { center, ..*self }
    }

    pub fn with_frame(&self, frame: Frame) -> Self {
        Self { frame, ..*self }
    }
}

/// Distances and angles derived from the positions of T, I and R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkAngles {
    pub d_ti: f64,
    pub d_ir: f64,
    pub d_tr: f64,
    pub theta_t: f64,
    pub phi_t: f64,
    pub theta_r: f64,
    pub phi_r: f64,
    pub mu_ti: f64,
    pub mu_tr: f64,
    /// Angle ∠TIR at the panel.
    pub theta_0: f64,
}

impl LinkAngles {
    /// `(sinθ cosφ, sinθ sinφ)` for the transmitter direction.
    pub fn t_direction_cosines(&self) -> (f64, f64) {
        let s = self.theta_t.sin();
        (s * self.phi_t.cos(), s * self.phi_t.sin())
    }

    pub fn r_direction_cosines(&self) -> (f64, f64) {
        let s = self.theta_r.sin();
        (s * self.phi_r.cos(), s * self.phi_r.sin())
    }
}

/// Elevation from the normal and azimuth (from x̂, in `[0, 2π)`) of `dir`
/// expressed in `frame`.
pub fn elevation_azimuth(frame: &Frame, dir: Vec3) -> (f64, f64) {
    let along_n = dir.dot(frame.normal);
    let ux = dir.dot(frame.x_axis);
    let uy = dir.dot(frame.y_axis);
    let theta = ux.hypot(uy).atan2(along_n);
    let mut phi = uy.atan2(ux);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    if phi >= 2.0 * PI {
        phi -= 2.0 * PI;
    }
    (theta, phi)
}

/// Angle at vertex between sides `a` and `b` opposite side `c` (law of cosines).
pub fn law_of_cosines_angle(a: f64, b: f64, c: f64) -> f64 {
    ((a * a + b * b - c * c) / (2.0 * a * b)).clamp(-1.0, 1.0).acos()
}

pub fn link_angles(tx: &TransmitterArray, ris: &RisPanel, rx: Vec3) -> Result<LinkAngles> {
    let (t, i, r) = (tx.center, ris.center, rx);
    let d_ti = t.distance(i);
    let d_ir = i.distance(r);
    let d_tr = t.distance(r);
    if d_ti == 0.0 || d_ir == 0.0 || d_tr == 0.0 {
        return Err(RisError::DegenerateGeometry(format!(
            "coincident nodes: d_TI = {d_ti}, d_IR = {d_ir}, d_TR = {d_tr}"
        )));
    }
    let (theta_t, phi_t) = elevation_azimuth(&ris.frame, (t - i) / d_ti);
    let (theta_r, phi_r) = elevation_azimuth(&ris.frame, (r - i) / d_ir);
    let axis = tx.axis();
    Ok(LinkAngles {
        d_ti,
        d_ir,
        d_tr,
        theta_t,
        phi_t,
        theta_r,
        phi_r,
        mu_ti: axis.angle_to(t - i),
        mu_tr: axis.angle_to(t - r),
        theta_0: law_of_cosines_angle(d_ti, d_ir, d_tr),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldReport {
    pub ok: bool,
    /// `d_TI / (N Δd_T)`, `d_TI / (L √(d_x²+d_y²))`, `d_IR / (L √(d_x²+d_y²))`.
    pub ratios: [f64; 3],
}

pub fn far_field_check(tx: &TransmitterArray, ris: &RisPanel, rx: Vec3, margin: f64) -> FarFieldReport {
    let d_ti = tx.center.distance(ris.center);
    let d_ir = ris.center.distance(rx);
    let panel_scale = ris.len() as f64 * ris.element_diagonal();
    let ratios = [d_ti / tx.aperture_scale(), d_ti / panel_scale, d_ir / panel_scale];
    FarFieldReport { ok: ratios.iter().all(|&q| q >= margin), ratios }
}
