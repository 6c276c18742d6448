use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rational function has a zero denominator")]
    ZeroDenominator,

    #[error("denominator vanishes at x = {x}")]
    PoleEvaluation { x: f64 },

    #[error("invalid alpha {alpha}: half-line axes take alpha = -1/2 or +1/2")]
    InvalidAlpha { alpha: String },

    #[error("seed function has a zero inside the domain (full line, m = {m})")]
    SeedHasInteriorZero { m: usize },

    #[error("energy {energy} is not positive; the state cannot be mapped")]
    NonPositiveEnergy { energy: f64 },

    #[error("m = {m} is odd; full-line extensions exist only for even m")]
    OddMOnFullLine { m: usize },

    #[error("axial m2 = {m2} is odd; the z axis is a full line")]
    OddM2 { m2: usize },

    #[error("frequency ratio {ratio} is not a (small-denominator) rational number")]
    IrrationalRatioUnsupported { ratio: f64 },

    #[error("potential is not finite at grid point x = {x}")]
    PotentialPoleOnGrid { x: f64 },

    #[error("eigenvalue extraction failed: {reason}")]
    ConvergenceFailure { reason: String },

    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("incompatible operands: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
