use crate::error::{Result, RisError};
use crate::geometry::{far_field_check, link_angles, FarFieldReport, LinkAngles, RisPanel, TransmitterArray, Vec3};

/// How a violated far-field condition is treated when building approximated channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FarFieldMode {
    /// Build the channel anyway and report the violation.
    #[default]
    Warn,
    /// Refuse with [`RisError::FarFieldViolation`].
    Strict,
}

/// One transmitter, one panel, one single-antenna receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scene {
    pub tx: TransmitterArray,
    pub ris: RisPanel,
    pub rx: Vec3,
    /// Linear power gain of the receive antenna.
    pub rx_gain: f64,
    /// Carrier wavelength in meters.
    pub wavelength: f64,
}

impl Scene {
    pub fn new(tx: TransmitterArray, ris: RisPanel, rx: Vec3, rx_gain: f64, wavelength: f64) -> Result<Self> {
        tx.validate()?;
        ris.validate()?;
        if !rx.is_finite() {
            return Err(RisError::InvalidParameter(format!("receiver position must be finite, got {rx:?}")));
        }
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(RisError::InvalidParameter(format!("wavelength must be positive, got {wavelength}")));
        }
        if !(rx_gain >= 0.0 && rx_gain.is_finite()) {
            return Err(RisError::InvalidParameter(format!("receive gain must be nonnegative, got {rx_gain}")));
        }
        Ok(Self { tx, ris, rx, rx_gain, wavelength })
    }

    pub fn angles(&self) -> Result<LinkAngles> {
        link_angles(&self.tx, &self.ris, self.rx)
    }

    pub fn far_field(&self, margin: f64) -> FarFieldReport {
        far_field_check(&self.tx, &self.ris, self.rx, margin)
    }

    /// Number of transmit antennas `N`.
    pub fn n_antennas(&self) -> usize {
        self.tx.len()
    }

    /// Number of reflective elements `L`.
    pub fn n_elements(&self) -> usize {
        self.ris.len()
    }

    /// The same scene with the panel moved to `center` (orientation kept).
    pub fn with_ris_center(&self, center: Vec3) -> Self {
        Self { ris: self.ris.with_center(center), ..*self }
    }

    /// Every position multiplied by `s` about the origin.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            tx: TransmitterArray { center: self.tx.center * s, ..self.tx },
            ris: self.ris.with_center(self.ris.center * s),
            rx: self.rx * s,
            ..*self
        }
    }
}
