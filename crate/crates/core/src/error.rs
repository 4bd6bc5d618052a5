use core::fmt;

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates a type invariant.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    UnknownUnit(String),
    /// `u` lies inside the guard band of a pole at `(2n)^2`.
    PoleProximity { u: f64 },
    /// No sign change of the eigenvalue condition was found.
    NoSignChange { rho: f64, lower: f64, upper: f64 },
    /// The branch could not be continued to `rho` even after step halving.
    ContinuationFailed { rho: f64 },
    NoBoundDimer,
    EnergyAboveThreshold { energy: f64, threshold: f64 },
    NotConverged {
        what: &'static str,
        iterations: usize,
    },
    GridTooCoarse { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            Error::UnknownUnit(unit) => write!(f, "unknown energy unit `{unit}`"),
            Error::PoleProximity { u } => {
                write!(f, "nu^2 = {u} is inside the pole guard band")
            }
            Error::NoSignChange { rho, lower, upper } => write!(
                f,
                "no sign change of the eigenvalue condition at rho = {rho} au in u in [{lower}, {upper}]"
            ),
            Error::ContinuationFailed { rho } => {
                write!(f, "branch continuation lost the root before rho = {rho} au")
            }
            Error::NoBoundDimer => write!(f, "no bound two-body subsystem (scattering length > 0)"),
            Error::EnergyAboveThreshold { energy, threshold } => write!(
                f,
                "energy {energy} is not below the dissociation threshold {threshold}"
            ),
            Error::NotConverged { what, iterations } => {
                write!(f, "{what} did not converge after {iterations} iterations")
            }
            Error::GridTooCoarse { reason } => write!(f, "grid too coarse: {reason}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
