//! Linear constraint systems: signed-maximum expansion, Fourier–Motzkin
//! projection, redundancy removal and equivalence checks.

mod fm;
mod signed_max;
mod system;

use thiserror::Error;

pub use fm::{fm_eliminate, remove_redundant};
pub use signed_max::{expand_signed_max, s_signed_max, sign_vectors, Parity, Side, SignedMaxSpec, SignedMaxTerm};
pub use system::{systems_equivalent, Constraint, ConstraintSystem, Point, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable {0:?} is not part of the system")]
    UnknownVariable(String),
    #[error("systems are over different variable sets")]
    VariableSetMismatch,
    #[error("signed maximum over an empty list")]
    EmptySignedMax,
    #[error("signed maximum weight must be positive")]
    NonPositiveWeight,
}
