use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("enumeration needs about {needed} lattice points, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("lattice count for t = {t} exceeds the supported coordinate range")]
    CountOverflow { t: f64 },

    #[error(
        "tolerance {tol:e} unreachable: error estimate {estimate:e} at cutoff {cutoff} \
         (max_shell_norm {max_shell_norm})"
    )]
    ToleranceUnreachable {
        tol: f64,
        estimate: f64,
        cutoff: f64,
        max_shell_norm: f64,
    },

    #[error("expansion order {order} is only available for the unit disk")]
    UnsupportedOrder { order: u32 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

/// Rejects negative and non-finite values.
pub(crate) fn check_nonnegative(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::invalid(name, format!("must be finite, got {value}")));
    }
    if value < 0.0 {
        return Err(Error::invalid(name, format!("must be >= 0, got {value}")));
    }
    Ok(value)
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {value}"),
        ));
    }
    Ok(value)
}
