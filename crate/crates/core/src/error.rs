use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate cubic: leading coefficient {0:e} is effectively zero")]
    DegenerateCubic(f64),

    /// A characteristic root that is complex or not strictly positive.
    #[error("characteristic root {re:e} {im:+e}i is not a positive real number")]
    RootClassification { re: f64, im: f64 },

    #[error("characteristic matrix at x = {x:e} has rank below 2; no unique modal direction")]
    NullSpace { x: f64 },

    /// The modal vector cannot be rescaled to a unit vug component.
    #[error("modal vector at x = {x:e} has a negligible vug component ({ratio:e} of its norm)")]
    DegenerateModal { x: f64, ratio: f64 },

    #[error("singular boundary system: |det| = {det:e} against entry scale {scale:e}")]
    SingularBoundary { det: f64, scale: f64 },

    /// Matrix, fracture and vug wellbore pressures disagree.
    #[error("wellbore pressures of the three media disagree: relative residual {residual:e}")]
    Consistency { residual: f64 },

    #[error("at u = {u:e}: {source}")]
    AtLaplace { u: f64, source: Box<Error> },

    #[error("at t_D = {t:e}: {source}")]
    AtTime { t: f64, source: Box<Error> },

    #[error("config error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn at_laplace(self, u: f64) -> Self {
        Error::AtLaplace {
            u,
            source: Box::new(self),
        }
    }

    pub(crate) fn at_time(self, t: f64) -> Self {
        Error::AtTime {
            t,
            source: Box::new(self),
        }
    }

    /// Innermost error, with the `u`/`t_D` context layers removed.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtLaplace { source, .. } | Error::AtTime { source, .. } => source.root_cause(),
            other => other,
        }
    }

    /// Process exit status for the command-line front end: 1 for
    /// configuration problems, 3 for I/O failures, 2 for everything the
    /// model or the inversion raises.
    pub fn exit_code(&self) -> i32 {
        match self.root_cause() {
            Error::Config(_) | Error::Parse { .. } => 1,
            Error::Io { .. } => 3,
            _ => 2,
        }
    }
}
