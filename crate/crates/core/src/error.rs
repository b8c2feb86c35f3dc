use thiserror::Error;

use crate::config::ConfigError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A closed form was asked for outside the easy-axis (omega_perp = 0) model.
    #[error("closed form requires omega_perp = 0 (got {omega_perp:e} rad/s); use the numeric diagonalization")]
    HardAxisUnsupported { omega_perp: f64 },

    #[error("field {field:e} T is beyond the spin-flop field {spin_flop:e} T; collinear ground state is unstable")]
    BeyondSpinFlop { field: f64, spin_flop: f64 },

    #[error("dynamical matrix is not positive definite: {0}")]
    UnstableGroundState(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("singular system ({context}); condition estimate {condition:e}")]
    Singular { context: String, condition: f64 },

    #[error("efficiency maximum lies on the search boundary at d = {thickness:e} m")]
    BoundaryMaximum { thickness: f64 },

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::HardAxisUnsupported { .. } => "hard_axis_unsupported",
            Error::BeyondSpinFlop { .. } => "beyond_spin_flop",
            Error::UnstableGroundState(_) => "unstable_ground_state",
            Error::NumericalFailure(_) => "numerical_failure",
            Error::Singular { .. } => "singular_system",
            Error::BoundaryMaximum { .. } => "boundary_maximum",
            Error::Config(e) => e.kind.tag(),
            Error::Io(_) => "io",
        }
    }

    /// Process exit code: 2 for configuration problems, 3 for numerical-domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite, got {value}")))
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    ensure_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be > 0, got {value:e}")))
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<()> {
    ensure_finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be >= 0, got {value:e}")))
    }
}
