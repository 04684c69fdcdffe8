//! Radiation pattern, amplitude gains and complex channels.
//!
//! Channels are stored in the orientation the received-power expression uses
//! them: `h_ti` is the `L × N` matrix whose entry `(q, p)` is the phasor from
//! antenna `p` to element `q`, `h_ir[q]` is the phasor from element `q` to the
//! receiver, and `h_tr[p]` the phasor from antenna `p` to the receiver. Every
//! path of length `d` carries phase `+2π d / λ`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, RisError};
use crate::geometry::{FarFieldReport, LinkAngles};
use crate::scene::{FarFieldMode, Scene};

/// Tolerance on `|θ_q| = 1` accepted by [`received_power`].
pub const UNIT_MODULUS_TOL: f64 = 1e-9;

/// Normalized power pattern `cosᵏθ` on the front half-space, zero behind.
pub fn radiation_pattern(theta: f64, k: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(RisError::Domain { value: theta, domain: "[0, π]" });
    }
    if theta > PI / 2.0 {
        return Ok(0.0);
    }
    // cos(π/2) is 6e-17 in floating point; keep the pattern in [0, 1]
    Ok(theta.cos().clamp(0.0, 1.0).powf(k))
}

fn phasor(amplitude: f64, distance: f64, wavelength: f64) -> Complex64 {
    Complex64::from_polar(amplitude, 2.0 * PI * distance / wavelength)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeGain {
    /// Distance-free part `δ_TIR`.
    pub delta_tir: f64,
    /// Per-element amplitude `a_TIR = δ_TIR / (d_TI d_IR)`.
    pub a_tir: f64,
}

/// Per-element amplitude gain of the cascaded T → element → R link.
pub fn amplitude_gain_tir(scene: &Scene, angles: &LinkAngles) -> Result<AmplitudeGain> {
    let k = scene.ris.pattern_exponent;
    let pattern = radiation_pattern(angles.theta_t, k)? * radiation_pattern(angles.theta_r, k)?;
    if pattern == 0.0 {
        return Err(RisError::ShadowedPanel);
    }
    let delta_tir = delta_tir(scene, pattern);
    Ok(AmplitudeGain { delta_tir, a_tir: delta_tir / (angles.d_ti * angles.d_ir) })
}

/// `δ_TIR` for a given pattern product `F(θ_t,φ_t) F(θ_r,φ_r)`.
pub fn delta_tir(scene: &Scene, pattern_product: f64) -> f64 {
    let ris = &scene.ris;
    let lambda = scene.wavelength;
    (scene.tx.element_gain
        * scene.rx_gain
        * ris.element_gain
        * ris.element_size_x
        * ris.element_size_y
        * lambda
        * lambda
        * pattern_product
        * ris.reflection_coeff
        * ris.reflection_coeff
        / (64.0 * PI.powi(3)))
    .sqrt()
}

/// Free-space amplitude of the direct link, `√(G_t G_r) λ / (4π d_TR)`.
pub fn direct_amplitude(scene: &Scene, d_tr: f64) -> f64 {
    (scene.tx.element_gain * scene.rx_gain).sqrt() * scene.wavelength / (4.0 * PI * d_tr)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    /// `L × N`, entry `(q, p)` from antenna `p` to element `q`.
    pub h_ti: DMatrix<Complex64>,
    /// Length `L`.
    pub h_ir: DVector<Complex64>,
    /// Length `N`, present when the direct link is not blocked.
    pub h_tr: Option<DVector<Complex64>>,
    pub wavelength: f64,
}

impl ChannelSet {
    pub fn n_elements(&self) -> usize {
        self.h_ti.nrows()
    }

    pub fn n_antennas(&self) -> usize {
        self.h_ti.ncols()
    }

    pub fn with_direct(mut self, h_tr: DVector<Complex64>) -> Result<Self> {
        if h_tr.len() != self.n_antennas() {
            return Err(RisError::DimensionMismatch { expected: self.n_antennas(), got: h_tr.len() });
        }
        self.h_tr = Some(h_tr);
        Ok(self)
    }

    pub fn without_direct(mut self) -> Self {
        self.h_tr = None;
        self
    }

    /// Cascaded channel, entry `(q, p) = h_ir[q] · h_ti[q, p]`.
    pub fn cascade(&self) -> DMatrix<Complex64> {
        let mut g = self.h_ti.clone();
        for (q, mut row) in g.row_iter_mut().enumerate() {
            row *= self.h_ir[q];
        }
        g
    }

    /// Effective row channel `θᵀ H_TIR + h_TR` seen by the beamformer (length `N`).
    pub fn effective_channel(&self, theta: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        let l = self.n_elements();
        if theta.len() != l {
            return Err(RisError::DimensionMismatch { expected: l, got: theta.len() });
        }
        let mut g = DVector::zeros(self.n_antennas());
        for q in 0..l {
            let w = theta[q] * self.h_ir[q];
            for (p, h) in self.h_ti.row(q).iter().enumerate() {
                g[p] += w * h;
            }
        }
        if let Some(d) = &self.h_tr {
            g += d;
        }
        Ok(g)
    }
}

/// Unit-modulus factors of the rank-one far-field channel.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldFactors {
    pub a_tir: f64,
    /// `e^{j2πΔd^T_{I,q}/λ}`, length `L`.
    pub a_vec: DVector<Complex64>,
    /// `e^{j2πΔd^I_{T,p}/λ}`, length `N`.
    pub b_vec: DVector<Complex64>,
    /// `e^{j2πΔd^R_{I,q}/λ}`, length `L`.
    pub c_vec: DVector<Complex64>,
    /// `c ∘ a`, length `L`.
    pub d_vec: DVector<Complex64>,
    /// `e^{j2π d_TI/λ}`.
    pub phase_ti: Complex64,
    /// `e^{j2π d_IR/λ}`.
    pub phase_ir: Complex64,
}

impl FarFieldFactors {
    /// `a_TIR e^{j2π d_TI/λ} a bᵀ`, the far-field `H_TI` under the `(a_TIR, 1)` amplitude split.
    pub fn reassemble_h_ti(&self) -> DMatrix<Complex64> {
        (&self.a_vec * self.b_vec.transpose()) * (self.phase_ti * self.a_tir)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldChannel {
    pub channels: ChannelSet,
    pub factors: FarFieldFactors,
    pub angles: LinkAngles,
    pub amplitude: AmplitudeGain,
    pub far_field: FarFieldReport,
}

/// Path-length offsets `(Δd^T_{I,q}, Δd^R_{I,q})` of every element under the
/// plane-wave approximation.
pub fn element_path_offsets(scene: &Scene, angles: &LinkAngles) -> Vec<(f64, f64)> {
    let (tx_c, tx_s) = angles.t_direction_cosines();
    let (rx_c, rx_s) = angles.r_direction_cosines();
    (0..scene.ris.len())
        .map(|q| {
            let (u, v) = scene.ris.element_offset(q);
            (-tx_c * u - tx_s * v, -rx_c * u - rx_s * v)
        })
        .collect()
}

/// Far-field (rank-one) channels. The amplitude split puts the whole `a_TIR`
/// on `H_TI` and unit amplitude on `h_IR`.
pub fn farfield_channel(scene: &Scene, mode: FarFieldMode, margin: f64) -> Result<FarFieldChannel> {
    let far_field = scene.far_field(margin);
    if mode == FarFieldMode::Strict && !far_field.ok {
        return Err(RisError::FarFieldViolation { ratios: far_field.ratios, margin });
    }
    let angles = scene.angles()?;
    let amplitude = amplitude_gain_tir(scene, &angles)?;
    let lambda = scene.wavelength;

    let offsets = element_path_offsets(scene, &angles);
    let a_vec = DVector::from_iterator(offsets.len(), offsets.iter().map(|o| phasor(1.0, o.0, lambda)));
    let c_vec = DVector::from_iterator(offsets.len(), offsets.iter().map(|o| phasor(1.0, o.1, lambda)));
    let d_vec = DVector::from_iterator(offsets.len(), offsets.iter().map(|o| phasor(1.0, o.0 + o.1, lambda)));
    let tx_offsets = scene.tx.path_offsets(scene.ris.center)?;
    let b_vec = DVector::from_iterator(tx_offsets.len(), tx_offsets.iter().map(|&o| phasor(1.0, o, lambda)));

    let factors = FarFieldFactors {
        a_tir: amplitude.a_tir,
        a_vec,
        b_vec,
        c_vec,
        d_vec,
        phase_ti: phasor(1.0, angles.d_ti, lambda),
        phase_ir: phasor(1.0, angles.d_ir, lambda),
    };
    let channels = ChannelSet {
        h_ti: factors.reassemble_h_ti(),
        h_ir: &factors.c_vec * factors.phase_ir,
        h_tr: None,
        wavelength: lambda,
    };
    Ok(FarFieldChannel { channels, factors, angles, amplitude, far_field })
}

/// Channels from exact element-to-antenna distances. Amplitudes are
/// `δ_TIR / d_{TI,p,q}` on `H_TI` and `1 / d_{IR,q}` on `h_IR`, with `δ_TIR`
/// evaluated at the panel-center angles. Serves as the reference the far-field
/// channel is checked against.
pub fn exact_channel(scene: &Scene) -> Result<ChannelSet> {
    let angles = scene.angles()?;
    let k = scene.ris.pattern_exponent;
    let pattern = radiation_pattern(angles.theta_t, k)? * radiation_pattern(angles.theta_r, k)?;
    let delta = delta_tir(scene, pattern);
    let lambda = scene.wavelength;
    let antennas = scene.tx.antenna_positions();
    let elements = scene.ris.element_positions();

    let mut h_ti = DMatrix::zeros(elements.len(), antennas.len());
    let mut h_ir = DVector::zeros(elements.len());
    for (q, e) in elements.iter().enumerate() {
        for (p, a) in antennas.iter().enumerate() {
            let d = e.distance(*a);
            if d == 0.0 {
                return Err(RisError::DegenerateGeometry(format!("antenna {p} coincides with element {q}")));
            }
            h_ti[(q, p)] = phasor(delta / d, d, lambda);
        }
        let d = e.distance(scene.rx);
        if d == 0.0 {
            return Err(RisError::DegenerateGeometry(format!("receiver coincides with element {q}")));
        }
        h_ir[q] = phasor(1.0 / d, d, lambda);
    }
    Ok(ChannelSet { h_ti, h_ir, h_tr: None, wavelength: lambda })
}

/// Direct channel from exact antenna-to-receiver distances with the common
/// amplitude `a_TR`.
pub fn direct_channel(scene: &Scene) -> Result<DVector<Complex64>> {
    let d_tr = scene.tx.center.distance(scene.rx);
    if d_tr == 0.0 {
        return Err(RisError::DegenerateGeometry("receiver coincides with transmitter".into()));
    }
    let a_tr = direct_amplitude(scene, d_tr);
    let antennas = scene.tx.antenna_positions();
    Ok(DVector::from_iterator(
        antennas.len(),
        antennas.iter().map(|a| phasor(a_tr, a.distance(scene.rx), scene.wavelength)),
    ))
}

/// Far-field direct channel: entry `p` is `a_TR e^{j2π(d_TR + Δd^R_{T,p})/λ}`.
pub fn direct_channel_far_field(scene: &Scene) -> Result<DVector<Complex64>> {
    let d_tr = scene.tx.center.distance(scene.rx);
    if d_tr == 0.0 {
        return Err(RisError::DegenerateGeometry("receiver coincides with transmitter".into()));
    }
    let a_tr = direct_amplitude(scene, d_tr);
    let offsets = scene.tx.path_offsets(scene.rx)?;
    Ok(DVector::from_iterator(
        offsets.len(),
        offsets.iter().map(|o| phasor(a_tr, d_tr + o, scene.wavelength)),
    ))
}

/// `|(h_IRᴴ Θ H_TIᴴ + h_TRᴴ) v|²`.
pub fn received_power(channels: &ChannelSet, theta: &DVector<Complex64>, v: &DVector<Complex64>) -> Result<f64> {
    if v.len() != channels.n_antennas() {
        return Err(RisError::DimensionMismatch { expected: channels.n_antennas(), got: v.len() });
    }
    if let Some((index, t)) = theta.iter().enumerate().find(|(_, t)| (t.norm() - 1.0).abs() > UNIT_MODULUS_TOL) {
        return Err(RisError::NotUnitModulus { index, modulus: t.norm() });
    }
    let g = channels.effective_channel(theta)?;
    let y: Complex64 = g.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    Ok(y.norm_sqr())
}
