//! The two quadratic families with a 2-periodic critical point and the
//! classification of their third and fourth dynatomic Galois groups.
mod applications;
mod classifier;
mod family;
mod groups;
mod param;
mod resolvent;

pub use applications::{
    family_density_bound, padic_density, periodic_point_degrees, rational_periodic_scan, DensityReport, PeriodRow,
};
pub use classifier::{
    classify, classify_with, periodic_polynomial, ClassificationResult, ClassifyOptions, Evidence, Membership,
    ResolventCheck, Status,
};
pub use family::FamilyId;
pub use groups::{catalog, wreath_3_2, wreath_4_3, GroupCatalog, GroupSummary};
pub use param::{ParamId, Parametrization};
pub use resolvent::{
    degenerate_parameters, resolvent, resolvent_root_test, resolvents, resolvents_for, ResolventEntry, RootTest,
};
