//! Exact subgroup-degree functions of finite groups.
//!
//! For a finite group `G` with `c(G)` cyclic subgroups and `|L(G)|` subgroups
//! in all:
//!
//! * `α(G) = c(G)/|G|`
//! * `β(G) = |L(G)|/|G|`
//! * `cdeg(G) = c(G)/|L(G)| = α(G)/β(G)`
//! * `ndeg(G)` and `jdeg(G)`: the fractions of subgroups that are normal and
//!   nilpotent.
//!
//! Every value is an [`ExactRational`]. The crate computes them two ways:
//! closed forms per group family ([`formulas`]) and exhaustive enumeration of
//! the subgroup lattice of a concrete Cayley table ([`group`]). [`density`]
//! builds products of `cdeg(C_{p²} ⋊ C_p)` approximating any target in `(0, 1]`.
//!
//! ```
//! use groupdeg::{construct, census, degrees, evaluate, FamilySpec};
//!
//! let spec: FamilySpec = "SD(16)".parse().unwrap();
//! let oracle = degrees(&census(&construct(&spec).unwrap()).unwrap());
//! assert_eq!(Some(oracle.beta), evaluate(&spec).unwrap().beta);
//! ```

pub mod density;
pub mod error;
pub mod families;
pub mod formulas;
pub mod group;
pub mod numtheory;

pub use density::{
    approximate, cdeg_mp, log_divergence_partial, DensityApproximation, DEFAULT_PRIME_BOUND,
};
pub use error::{Error, Result};
pub use families::{construct, parse_family_spec, FamilyKind, FamilySpec};
pub use formulas::{
    evaluate, verify, DegreeFormulaResult, DegreeFunction, LimitEntry, VerificationReport,
};
pub use group::{
    census, census_with_cap, degrees, enumerate_subgroups, Degrees, FiniteGroup, Subgroup,
    SubgroupCensus, DEFAULT_ENUMERATION_CAP, MAX_GROUP_ORDER,
};
pub use numtheory::ExactRational;
