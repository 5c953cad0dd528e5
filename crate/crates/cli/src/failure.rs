use std::fmt;

use minkgeo::surface::SurfaceError;

/// Failure classes and their exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    Usage,
    Precondition,
    Numerical,
}

impl Failure {
    pub fn code(self) -> u8 {
        match self {
            Failure::Usage => 2,
            Failure::Precondition => 3,
            Failure::Numerical => 4,
        }
    }

    pub fn because(self, msg: impl Into<String>) -> anyhow::Error {
        anyhow::Error::new(Coded { failure: self, msg: msg.into() })
    }

    pub fn wrap<E: std::error::Error + Send + Sync + 'static>(self, e: E) -> anyhow::Error {
        self.because(e.to_string())
    }
}

#[derive(Debug)]
struct Coded {
    failure: Failure,
    msg: String,
}

impl fmt::Display for Coded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for Coded {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    e.chain()
        .find_map(|c| c.downcast_ref::<Coded>())
        .map(|c| c.failure.code())
        .unwrap_or(1)
}

pub fn surface_failure(e: &SurfaceError) -> Failure {
    match e {
        SurfaceError::ChartFold { .. } | SurfaceError::GCrossesZero { .. } | SurfaceError::MetricDegenerate { .. } => {
            Failure::Numerical
        }
        _ => Failure::Precondition,
    }
}

/// Map a library result onto the exit-code classes.
pub trait Classified<T> {
    fn precondition(self) -> anyhow::Result<T>;
}

impl<T, E: std::error::Error + Send + Sync + 'static> Classified<T> for Result<T, E> {
    fn precondition(self) -> anyhow::Result<T> {
        self.map_err(|e| Failure::Precondition.wrap(e))
    }
}

pub trait SurfaceClassified<T> {
    fn classified(self) -> anyhow::Result<T>;
}

impl<T> SurfaceClassified<T> for Result<T, SurfaceError> {
    fn classified(self) -> anyhow::Result<T> {
        self.map_err(|e| surface_failure(&e).wrap(e))
    }
}
