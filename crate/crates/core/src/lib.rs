//! Exact counting of subrings of `Z^n` of prime-power index, together with
//! the lower-bound exponents and local zeta factors built on those counts.

pub mod algebra;
pub mod bounds;
pub mod closure;
pub mod error;
pub mod paths;
pub mod subgroups;
pub mod subring;
pub mod verify;
pub mod zeta;

pub use algebra::{Composition, Partition, PolyP, PowerSeriesX};
pub use error::{Error, Result};
pub use subring::{EnumConfig, HnfMatrix};
