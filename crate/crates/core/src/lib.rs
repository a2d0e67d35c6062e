//! Thermodynamic models of a compressed-air storage cavern.
//!
//! The cavern is a fixed-volume ideal-gas container exchanging heat with a
//! rock wall at constant temperature. Four step models are provided: the
//! exact staged update (with or without wall exchange), a bi-linear model
//! meant for embedding in optimization problems, an isothermal baseline, and
//! a fine-step reference integrator used to score the others.

pub mod cli;
pub mod error;
pub mod models;
pub mod thermo;
pub mod validate;

pub use error::{CavernError, Result};
pub use models::{EnvelopeWarning, ModelKind, StepCoefficients, StepOutcome};
pub use thermo::{units, CavernParams, CavernState, FlowSegment, Mode, ParamValues};
