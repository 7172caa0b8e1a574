use thiserror::Error;

/// Errors raised by the geometry engines and the curve-spec reader.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The velocity of a parametric curve vanishes at a point that is not a cusp.
    #[error("curve is not regular at parameter {param}: |f'| = {speed:e}")]
    Regularity { param: f64, speed: f64 },

    /// Curvature vanishes, so the radius of curvature is unbounded.
    #[error("curvature vanishes at parameter {param}")]
    Flat { param: f64 },

    #[error("curve is not closed")]
    NotClosed,

    /// The singular set contains a whole parameter interval (circle-like input).
    #[error("degenerate singular set: {0}")]
    DegenerateSingularSet(String),

    #[error("point (alpha = {alpha}, theta = {theta}) lies on the singular set")]
    OnSigma { alpha: f64, theta: f64 },

    /// A point of the singular curve where rho*rho'' - rho'^2 vanishes.
    #[error("singular point at theta = {theta} is degenerate (rho*rho'' - rho'^2 = {value:e})")]
    DegenerateSigmaPoint { theta: f64, value: f64 },

    #[error("zero of rho*rho'' - rho'^2 at theta = {theta} has no detectable sign change (slope {slope:e})")]
    BorderlineClassification { theta: f64, slope: f64 },

    #[error("operation requires a support-function curve")]
    NotSupportCurve,

    #[error("invalid curve spec at `{path}`: {message}")]
    Spec { path: String, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn spec(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Spec { path: path.into(), message: message.into() }
    }

    /// Numerical degeneracies of the input curve, as opposed to malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::Regularity { .. }
                | Error::Flat { .. }
                | Error::DegenerateSingularSet(_)
                | Error::OnSigma { .. }
                | Error::DegenerateSigmaPoint { .. }
                | Error::BorderlineClassification { .. }
        )
    }

    /// Stable short identifier used in diagnostics and across the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Regularity { .. } => "regularity",
            Error::Flat { .. } => "flat",
            Error::NotClosed => "not_closed",
            Error::DegenerateSingularSet(_) => "degenerate_singular_set",
            Error::OnSigma { .. } => "on_sigma",
            Error::DegenerateSigmaPoint { .. } => "degenerate_sigma_point",
            Error::BorderlineClassification { .. } => "borderline_classification",
            Error::NotSupportCurve => "not_support_curve",
            Error::Spec { .. } => "spec",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
