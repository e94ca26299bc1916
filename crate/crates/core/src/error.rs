use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("pole at evaluation point: {0}")]
    PoleAtPoint(String),

    #[error("no pole-free sample point found in {attempts} attempts")]
    DegenerateSample { attempts: u32 },

    #[error("symbol `{0}` has no assignment")]
    UnboundSymbol(String),

    #[error("denominator vanishes: {0}")]
    DenominatorVanishes(String),

    #[error("inexact division (arithmetic bug): {0}")]
    InexactDivision(String),

    #[error("lower parameter {param} has a vanishing Pochhammer factor at k = {k}")]
    ZeroLowerPochhammer { param: i64, k: u32 },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("tensor slots must differ, both are {0}")]
    SameSlot(usize),

    #[error("site {site} invalid for {n} tensor factors")]
    InvalidSite { site: usize, n: usize },

    #[error("dynamical index {index} invalid for gl_{m}")]
    InvalidIndex { index: usize, m: usize },

    #[error("shift map (scale, shift) = (1, 0) has a vanishing difference denominator")]
    UndeformedShift,

    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
