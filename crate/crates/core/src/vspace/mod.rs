//! The ℵ₀-dimensional space `V_∞ = ⊕ F·e_i` over an exact field, semilinear
//! maps on it, GSL modulo scalars, and the finitely generated part of its
//! subspace lattice.

mod field;
mod guichard;
mod map;
mod vector;

use thiserror::Error;

use crate::perm::PermError;

pub use field::{Field, Scalar, Sigma};
pub use guichard::{guichard_membership, property_d_holds, refute_property_d, GuichardSpace};
pub use map::{
    delta_embed, equivalent_mod_scalar, induced, nsim_identity, nsim_identity_on, GslElement, Mu, SemilinearMap,
};
pub use vector::{Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VspaceError {
    #[error("unsupported field `{0}` (expected Q, GF(p) with prime p <= 97, or GF4)")]
    UnsupportedField(String),
    #[error("{0} has no nontrivial automorphism")]
    NoSuchAutomorphism(Field),
    #[error("operands come from different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("cannot parse vector `{0}` (expected e.g. Q[0:1,3:-1/2])")]
    BadVector(String),
    #[error("no space V{0}; expected 1 to 5")]
    NoSuchSpace(u8),
    #[error("expression carries no infinite-swap certificate")]
    CertificateMissing,
    #[error("candidate witness {0} failed verification")]
    WitnessRejected(Vector),
    #[error(transparent)]
    Perm(#[from] PermError),
}
