use thiserror::Error;

/// Errors raised while constructing or verifying solutions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular seed: node at x = {location}")]
    Singular { location: f64 },

    #[error("degenerate pair: Λ=0 ({0})")]
    DegeneratePair(String),

    #[error("indefinite quadratic form: Γ = αγ − β² = {gamma_det} (γ = {gamma}); need γ > 0 and Γ > 0")]
    IndefiniteForm { gamma_det: f64, gamma: f64 },

    #[error("{0}")]
    Unrealizable(String),

    #[error("no realizable modulus for this mode: h({k_lo}) = {h_lo}, h({k_hi}) = {h_hi}")]
    NoRoot {
        k_lo: f64,
        h_lo: f64,
        k_hi: f64,
        h_hi: f64,
    },

    #[error("grid error: {0}")]
    Grid(String),

    #[error("resolution check failed: {0}")]
    Resolution(String),

    #[error("function vanishes identically near x = {0}")]
    IdenticallyZero(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
