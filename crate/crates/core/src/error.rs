use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("r out of supported range: {0} (supported: 1..=8)")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {r}")]
    ReducibleModulus { r: u32, modulus: u16 },

    /// An operand lies outside the domain of the operation (inverting zero, a = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Inconsistent or malformed parameters (mixed fields, parity rules, lengths).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An enumeration would exceed its hard budget.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An identity that must hold exactly did not; carries a diagnostic dump.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
