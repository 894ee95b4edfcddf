//! Exact verification kernel for the tower/fermion description of sine-Gordon
//! form factors: Laurent wedge algebra, fermion actions, exact-form reduction,
//! residue functionals, pairing identities, null vectors, small-chain Bethe
//! checks and Virasoro singular vectors.

pub mod bethe;
pub mod error;
pub mod exact_residue;
pub mod fermions;
pub mod laurent;
pub mod linalg;
pub mod nullvec;
pub mod pairing;
pub mod ratfunc;
pub mod scalars;
pub mod series;
pub mod suite;
pub mod towers;
pub mod virasoro;

pub use error::{Result, SgffError};
