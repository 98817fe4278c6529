use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument fell outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value failed structural validation on construction or load.
    #[error("validation failed: {0}")]
    Validation(String),

    /// The element carries geometry that the requested lower degrees cannot
    /// represent; `residual` is the worst slot deviation of the round trip.
    #[error("degree too low for this element: ({m},{n}) leaves residual {residual:.3e}")]
    DegreeTooLow { m: usize, n: usize, residual: f64 },

    /// A conversion matrix was numerically singular.
    #[error("ill-conditioned knot configuration: condition estimate {cond:.3e}")]
    IllConditioned { cond: f64 },

    #[error("degree above 3 is unsupported (got {0})")]
    UnsupportedDegree(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
