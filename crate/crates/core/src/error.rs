use thiserror::Error;

/// Errors raised by the cavern models and the validation harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CavernError {
    #[error("{name} must be strictly positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("adiabatic index must exceed 1, got {0}")]
    AdiabaticIndex(f64),

    #[error("binomial truncation needs |x| < 1, got x = {0}")]
    BinomialDomain(f64),

    #[error("moved mass {moved} kg per step is not smaller than the cavern mass {mass} kg")]
    MassRatio { moved: f64, mass: f64 },

    #[error("idle segments carry no flow, got mdot = {0} kg/s")]
    IdleWithFlow(f64),

    #[error("{mode} segments need mdot > 0, got {mdot} kg/s")]
    MissingFlow { mode: &'static str, mdot: f64 },

    #[error("segment duration {duration} s is not an integer multiple of dt = {dt} s")]
    Indivisible { duration: f64, dt: f64 },

    #[error("scenario has no segments")]
    EmptyScenario,

    #[error("oracle needs at least one substep")]
    NoSubsteps,

    #[error("traces are not comparable: {0}")]
    TraceMismatch(String),

    #[error("step ending at t = {t} s failed: {source}")]
    Step {
        t: f64,
        #[source]
        source: Box<CavernError>,
    },
}

pub type Result<T, E = CavernError> = std::result::Result<T, E>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(CavernError::NonFinite { name, value });
    }
    if value <= 0.0 {
        return Err(CavernError::NonPositive { name, value });
    }
    Ok(value)
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(CavernError::NonFinite { name, value });
    }
    if value < 0.0 {
        return Err(CavernError::Negative { name, value });
    }
    Ok(value)
}
