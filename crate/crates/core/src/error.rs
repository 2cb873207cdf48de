use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Field-level configuration failure; `field` is the config path.
    #[error("config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("table `{name}` does not cover {f_hz} Hz (range {lo}..{hi} Hz)")]
    TableCoverage {
        name: String,
        f_hz: f64,
        lo: f64,
        hi: f64,
    },

    /// Round-trip gain of the signal-recycling cavity reached unity.
    #[error("lasing threshold reached at Ω = {omega} rad/s (|det| = {det:e})")]
    LasingThreshold { omega: f64, det: f64 },

    #[error("homodyne angle ζ = {zeta} rad is blind to the signal")]
    BlindQuadrature { zeta: f64 },

    #[error("output covariance is singular at Ω = {omega} rad/s")]
    SingularCovariance { omega: f64 },

    #[error("no signal response at Ω = {omega} rad/s")]
    NoSignal { omega: f64 },

    #[error("expansion outside its validity domain: {0}")]
    OutsideValidity(String),

    /// Failure while evaluating one frequency of a sweep.
    #[error("at f = {f_hz} Hz: {source}")]
    AtFrequency { f_hz: f64, source: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for failures caused by the numerics at a particular frequency
    /// rather than by the input.
    pub fn is_degeneracy(&self) -> bool {
        if let Error::AtFrequency { source, .. } = self {
            return source.is_degeneracy();
        }
        matches!(
            self,
            Error::LasingThreshold { .. }
                | Error::BlindQuadrature { .. }
                | Error::SingularCovariance { .. }
                | Error::NoSignal { .. }
                | Error::OutsideValidity(_)
        )
    }

    /// CLI exit code: 2 for bad input, 3 for numerical degeneracy.
    pub fn exit_code(&self) -> i32 {
        if self.is_degeneracy() {
            3
        } else {
            2
        }
    }
}
