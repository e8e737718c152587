use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input of {0} bytes exceeds the supported text length")]
    TooLarge(usize),

    #[error("value {value} at column {column} is outside 1..={max}")]
    ValueOutOfRange { column: usize, value: u32, max: u32 },

    #[error("position {pos} out of range 1..={max}")]
    PositionOutOfRange { pos: usize, max: usize },

    #[error("malformed file: {0}")]
    Format(String),

    #[error("corrupt phrase at position {pos}: {reason}")]
    Corrupt { pos: usize, reason: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}
