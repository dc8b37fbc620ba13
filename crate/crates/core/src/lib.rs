//! Codings of c.e. and Π⁰₂ sets into permutation groups, semilinear maps
//! and automorphisms of the interval algebra, with decoders and checks.

pub mod ce;
pub mod intalg;
pub mod lang;
pub mod pairing;
pub mod perm;
pub mod pi2;
pub mod pipeline;
pub mod verify;
pub mod vspace;
