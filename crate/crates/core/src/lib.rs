//! Kloosterman sums over GF(2^r), double cosets of the split orthogonal group
//! O+(2n, 2^r), the binary trace codes attached to them and the power-moment
//! recursions those codes yield.
//!
//! Every quantity is exact: field arithmetic is table driven, and counts,
//! moments and weight distributions are arbitrary-precision integers (or
//! rationals where a constant is genuinely fractional).

pub mod charsums;
pub mod combinat;
pub mod coset_codes;
pub mod decimal;
pub mod error;
pub mod field;
pub mod matrix;
pub mod moments;
pub mod orthogroup;
pub mod report;
pub mod verify;

pub use charsums::{kloosterman, moment_table, GlMethod, KloostermanValue, MomentTable};
pub use combinat::stirling2;
pub use coset_codes::{DoubleCosetFamily, FamilyConstants, Sign, TraceMultiplicityMap, WeightDistribution};
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldOp};
pub use matrix::MatrixGF;
pub use moments::{MomentKind, RecursionInstance};
pub use orthogroup::{BruhatCell, GroupCounts, SumMode};
pub use report::{Check, Summary, VerificationReport};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
