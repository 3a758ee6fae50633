use thiserror::Error;

/// Errors produced by the analytical model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain on which a formula is defined.
    #[error("{quantity} out of domain: {reason}")]
    Domain {
        quantity: &'static str,
        reason: String,
    },

    /// The requested stress lies above the stress reached at the stretch cap.
    #[error(
        "stress {sigma} MPa is above {sigma_max} MPa reached at stretch cap {lambda_max}; \
         raise the cap or lower the pressure"
    )]
    Unbracketed {
        sigma: f64,
        lambda_max: f64,
        sigma_max: f64,
    },

    /// A material whose coefficients do not give a usable stress curve.
    #[error("invalid material `{name}`: {reason}")]
    InvalidMaterial { name: String, reason: String },

    /// Missing or inconsistent tabulated data.
    #[error("data error: {0}")]
    Data(String),

    /// A model error raised while evaluating one pressure point.
    #[error("at pressure {pressure} MPa: {source}")]
    AtPressure {
        pressure: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(quantity: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        quantity,
        reason: reason.into(),
    }
}

/// Rejects non-finite or non-positive values.
pub(crate) fn require_positive(quantity: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(domain(quantity, format!("must be positive and finite, got {value}")))
    }
}
