//! Exact arithmetic substrate: polynomials in `p`, truncated series in
//! `x = p^{-s}`, Gaussian binomials, partitions and compositions.

pub mod partition;
pub mod poly;
pub mod qbinomial;
pub mod series;

pub use partition::{bounded_partitions, compositions, weak_compositions, Composition, Compositions, Partition};
pub use poly::PolyP;
pub use qbinomial::gaussian_binomial;
pub use series::{series_expand_rational, GeometricFactor, PowerSeriesX};
