use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the requested quantity.
    #[error("{param} = {value} is out of range: {reason}")]
    Domain {
        param: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The combination of geometry, fading and access has no closed form here.
    #[error("unsupported network class: {0}")]
    Unsupported(&'static str),
    /// A quadrature or optimizer did not converge.
    #[error("numerical failure: {0}")]
    Numeric(&'static str),
    /// The simulation window needed for the requested accuracy is too large.
    #[error("simulation window too large: need radius {required_radius} ({expected_points} expected points)")]
    WindowTooLarge {
        required_radius: f64,
        expected_points: f64,
    },
}

impl Error {
    pub(crate) fn domain(param: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            param,
            value,
            reason,
        }
    }
}

/// Fails with a domain error unless `ok` holds.
pub(crate) fn ensure(ok: bool, param: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::domain(param, value, reason))
    }
}
