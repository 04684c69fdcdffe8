//! Experiment runner for RIS-assisted link simulations: scene configuration,
//! the simulation studies, CSV and metadata output, and gnuplot scripts.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod plot;
pub mod validate;

pub use config::{ConfigFile, Overrides, SceneConfig};
pub use error::{HarnessError, Result};
pub use experiments::Report;
