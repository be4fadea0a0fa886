use thiserror::Error;

use crate::robot_geometry::Configuration;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{to:?} is not a motion primitive from {from:?}")]
    NotAPrimitive { from: Configuration, to: Configuration },

    #[error("{0:?} places the robot outside the grid")]
    OutOfBounds(Configuration),

    #[error("motion {from:?} -> {to:?} collides with the workspace")]
    Collision { from: Configuration, to: Configuration },

    #[error("negative query radius {0}")]
    NegativeRadius(f64),

    #[error("no collision-free path reaches the goal")]
    NoPath,

    #[error("invalid path: {0}")]
    InvalidPath(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
