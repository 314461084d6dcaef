//! Shared workloads for the criterion benches in `benches/`.

use subrings_core::EnumConfig;

/// `(n, e, p)` cases for the enumeration benches.
pub const ENUMERATION_CASES: &[(usize, usize, u64)] = &[(3, 8, 3), (4, 4, 3), (4, 6, 2), (5, 5, 2)];

pub fn serial() -> EnumConfig {
    EnumConfig { parallel: false, ..EnumConfig::default() }
}

pub fn parallel() -> EnumConfig {
    EnumConfig::default()
}
