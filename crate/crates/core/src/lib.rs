//! Dynatomic polynomials of quadratic rational maps and their Galois groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: exact rationals, polynomials in one and two variables,
//!   resultants and complete rational-root finding.
//! * [`dynamics`]: rational maps, iteration, dynatomic polynomials, orbits,
//!   critical-point periodicity, Milnor coordinates and normal forms.
//! * [`perm`]: permutation groups with full element enumeration, the
//!   subgroup lattice up to conjugacy, and cycle-type statistics.
//! * [`galois`]: Frobenius cycle types modulo primes and empirical group
//!   identification.
//! * [`classify`]: the two quadratic families, their resolvents and
//!   parametrizations, and the classifiers for the third and fourth
//!   dynatomic Galois groups.

pub mod arith;
pub mod classify;
pub mod dynamics;
pub mod error;
pub mod galois;
pub mod perm;

pub use error::{Error, Result};
