//! Permutation groups with materialized elements, their subgroup lattice up
//! to conjugacy, and cycle-type statistics.

mod fingerprint;
mod group;
mod lattice;
mod permutation;

pub use fingerprint::{fingerprint, GroupFingerprint, DISTINGUISHING_SHAPES};
pub use group::{contained_up_to_conjugacy, generate, CycleTypeDistribution, PermGroup, DEFAULT_CLOSURE_CAP};
pub use lattice::{subgroup_conjugacy_classes, SubgroupClass, SubgroupLattice, DEFAULT_LATTICE_CAP};
pub use permutation::{format_cycle_type, CycleType, Permutation};
