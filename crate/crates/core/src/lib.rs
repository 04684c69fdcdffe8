//! Channel modeling, beamforming, and placement for a reconfigurable
//! intelligent surface (RIS) assisting a multi-antenna transmitter.
//!
//! Distances are in meters, angles in radians and powers in watts unless a
//! name says otherwise.

pub mod em;
pub mod error;
pub mod geometry;
pub mod placement;
pub mod scene;
pub mod solvers;
pub mod units;
pub mod validation;

pub use error::{Result, RisError};
pub use geometry::{ArrayLayout, Frame, LinkAngles, RisPanel, TransmitterArray, Vec3};
pub use scene::{FarFieldMode, Scene};
