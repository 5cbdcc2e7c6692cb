use thiserror::Error;

/// Errors raised by the measures, bounds and oracles in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: a distribution needs at least one symbol")]
    Empty,

    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },

    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("total mass deviates from 1 by {deviation:e}")]
    MassNotOne { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("conditioning symbol {index} has zero marginal probability")]
    ZeroMarginalRow { index: usize },

    #[error("alpha must not be NaN")]
    InvalidAlpha,

    #[error("alpha = 0 is not a valid order for Sibson's mutual information")]
    AlphaZeroUndefined,

    #[error("alpha = {alpha} is outside the admitted range ({expected})")]
    AlphaOutOfRange { alpha: f64, expected: &'static str },

    #[error("alpha = {alpha} is outside the validity interval ({lower}, 0)")]
    AlphaOutOfValidityRange { alpha: f64, lower: f64 },

    #[error("the two measures do not have the same support")]
    SupportsNotEquivalent,

    #[error("every weight of the optimal output measure vanishes; it cannot be normalized")]
    DegenerateNormalizer,

    #[error("simplex grid has {points} points, above the limit of {limit}")]
    GridTooLarge { points: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable snake_case identifier for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Empty => "empty",
            Error::NegativeEntry { .. } => "negative_entry",
            Error::NonFinite { .. } => "non_finite",
            Error::MassNotOne { .. } => "mass_not_one",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::RaggedMatrix { .. } => "ragged_matrix",
            Error::ZeroMarginalRow { .. } => "zero_marginal_row",
            Error::InvalidAlpha => "invalid_alpha",
            Error::AlphaZeroUndefined => "alpha_zero_undefined",
            Error::AlphaOutOfRange { .. } => "alpha_out_of_range",
            Error::AlphaOutOfValidityRange { .. } => "alpha_out_of_validity_range",
            Error::SupportsNotEquivalent => "supports_not_equivalent",
            Error::DegenerateNormalizer => "degenerate_normalizer",
            Error::GridTooLarge { .. } => "grid_too_large",
            Error::InvalidParameter(_) => "invalid_parameter",
        }
    }
}
