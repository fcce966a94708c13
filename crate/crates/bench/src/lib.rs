//! Shared fixtures for the criterion benches.

use groupdeg::{construct, FamilySpec, FiniteGroup};

/// Groups whose lattices the oracle benches enumerate, smallest first.
pub const ORACLE_SPECS: [&str; 6] = [
    "Q(64)",
    "SD(128)",
    "Dic(48)",
    "Ham(n=2;C3)",
    "D(256)",
    "M(7)",
];

/// Builds the group for a spec string from [`ORACLE_SPECS`].
pub fn build(spec: &str) -> FiniteGroup {
    let spec: FamilySpec = spec.parse().expect("fixture specs parse");
    construct(&spec).expect("fixture specs are constructible")
}
