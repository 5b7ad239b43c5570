use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("path `{path}` is malformed: {reason}")]
    MalformedPath { path: String, reason: String },

    #[error("pole at {pole} lies on path `{path}` (distance {distance:e})")]
    PoleOnPath {
        path: String,
        pole: Complex64,
        distance: f64,
    },

    #[error("integrand does not decay along segment {segment} of `{path}`: {detail}")]
    NonDecaying {
        path: String,
        segment: usize,
        detail: String,
    },

    #[error(
        "quadrature did not converge: error estimate {estimate:e} exceeds tolerance {tolerance:e} \
         after {evaluations} evaluations ({detail})"
    )]
    NotConverged {
        estimate: f64,
        tolerance: f64,
        evaluations: usize,
        detail: String,
    },

    #[error("transform argument {lambda} has Im = {im:e}, outside the admissible region (limit {limit:e})")]
    OutsideHalfPlane {
        lambda: Complex64,
        im: f64,
        limit: f64,
    },

    #[error("order n = {n} is outside the supported range 1..={cap}")]
    OrderOutOfRange { n: u32, cap: u32 },

    #[error("t = {t:e} is below the conditioning floor {floor:e}: the Gaussian envelope degrades as t -> 0")]
    Conditioning { t: f64, floor: f64 },

    #[error("derivative of order {order} of `{name}` is not available")]
    MissingDerivative { name: String, order: usize },

    #[error("decay declaration violated for `{name}`: {detail}")]
    DecayViolation { name: String, detail: String },

    #[error("certification failed on clause `{clause}`: {detail}")]
    CertificationFailed { clause: String, detail: String },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("evaluation produced a non-finite value at {location}")]
    NonFinite { location: String },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
