//! Shared error type for the whole crate.

use thiserror::Error;

use crate::exponent::RamifiedExponent;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Syntax error while parsing a differential sum. `pos` is a byte offset
    /// into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A characteristic value of the recurrence vanished: the triangular
    /// system is degenerate at this exponent and the coefficient is not
    /// uniquely determined.
    #[error("resonance: characteristic value vanishes for the coefficient at exponent {exponent}")]
    Resonance { exponent: RamifiedExponent },

    /// The prescribed seed terms are not consistent with the equation.
    #[error("inconsistent seed: {detail}")]
    SeedInconsistent { detail: String },

    /// The coefficient of the highest derivative vanishes on the given
    /// series, so the linearized operator does not determine a polygon of
    /// full order.
    #[error(
        "degenerate leading coefficient: ∂F/∂w^(n) evaluates to zero on the series, \
         so the linearization has no certified order-n term"
    )]
    DegenerateLeadingCoefficient,

    /// An operator coefficient is truncated to nothing: its leading exponent
    /// is unknown, so no support point may be reported for it.
    #[error("operator coefficient of order {order} has no certified leading term")]
    UncertifiedLeading { order: u8 },

    /// Stirling-table lookup outside the precomputed range.
    #[error("stirling index ({j},{k}) outside table of size {max}")]
    StirlingRange { j: usize, k: usize, max: usize },

    /// Support-point lists must be nonempty with one point per order.
    #[error("invalid support: {detail}")]
    InvalidSupport { detail: String },

    /// Malformed seed specification or other invalid argument.
    #[error("invalid input: {detail}")]
    Invalid { detail: String },

    /// Unknown corpus case id.
    #[error("unknown corpus case `{id}`")]
    UnknownCase { id: String },
}

pub type Result<T> = std::result::Result<T, Error>;
