//! Subring matrices at a concrete prime: exact counting, polynomial fits
//! across primes, and the irreducible decomposition recurrence.

pub mod enumerate;
pub mod hnf;
pub mod interpolate;
pub mod recurrence;

pub use enumerate::{
    count_by_diagonal, count_irreducible, count_subrings, count_subrings_unpruned, irreducible_matrices,
    subring_matrices, CountKind, CountMemo, EnumConfig, UnprunedCount, DEFAULT_NODE_BUDGET,
};
pub use hnf::{is_prime, HnfMatrix, SubringCertificate};
pub use interpolate::{has_degree, interpolate_count, interpolate_points, InconsistencyReport, Interpolation};
pub use recurrence::{calibrate, recurrence_f, recurrence_f_with_memo, RecurrenceConvention};
