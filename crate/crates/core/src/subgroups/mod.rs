//! Subgroups of `(Z/p^t)^{n-1}` and the sandwich subrings they produce.

pub mod degree;
pub mod lattice;
pub mod stehling;

pub use degree::{balanced_parts, bound_h_exponent, max_degree_order_count, HBound};
pub use lattice::{brute_force_subgroups, brute_force_subgroups_with_budget, DEFAULT_SUBGROUP_BUDGET, sandwich_subring_audit, SandwichAudit, SandwichRow, DESK_SCALE_LIMIT};
pub use stehling::{count_subgroups_of_order, stehling_count, SubgroupCountQuery};
