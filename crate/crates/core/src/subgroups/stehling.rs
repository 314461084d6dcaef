//! Subgroup counts in finite abelian p-groups, as polynomials in `p`.

use serde::{Deserialize, Serialize};

use crate::algebra::{bounded_partitions, gaussian_binomial, Partition, PolyP};
use crate::error::{Error, Result};

/// Subgroups of order `p^k` in `(Z/p^t)^{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCountQuery {
    pub n: usize,
    pub t: usize,
    pub k: usize,
}

impl SubgroupCountQuery {
    pub fn new(n: usize, t: usize, k: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("rank parameter n must be at least 1"));
        }
        if k > t * (n - 1) {
            return Err(Error::domain(format!("order exponent {k} exceeds t(n-1) = {}", t * (n - 1))));
        }
        Ok(SubgroupCountQuery { n, t, k })
    }
}

/// Number of subgroups of type `ν` in an abelian p-group of type `λ`:
/// `prod_j p^{ν'_{j+1}(λ'_j - ν'_j)} [λ'_j - ν'_{j+1}, ν'_j - ν'_{j+1}]_p`.
pub fn stehling_count(lambda: &Partition, nu: &Partition) -> Result<PolyP> {
    if !nu.is_contained_in(lambda) {
        return Err(Error::domain(format!("{nu} is not contained in {lambda}")));
    }
    let lc = lambda.conjugate();
    let nc = nu.conjugate();
    let mut acc = PolyP::one();
    for j in 1..=lc.len() {
        let (l, v, v_next) = (lc.part(j), nc.part(j), nc.part(j + 1));
        let power = PolyP::p_pow(v_next * (l - v));
        let binom = gaussian_binomial(l - v_next, v - v_next)?;
        acc = &acc * &(&power * &binom);
    }
    Ok(acc)
}

/// Total over all types `ν` of size `k` with `ν_1 <= t` and at most `n - 1`
/// parts.
pub fn count_subgroups_of_order(q: &SubgroupCountQuery) -> Result<PolyP> {
    let q = SubgroupCountQuery::new(q.n, q.t, q.k)?;
    let lambda = Partition::rectangle(q.t, q.n - 1);
    let mut total = PolyP::zero();
    for nu in bounded_partitions(q.k, q.t, q.n - 1) {
        total = &total + &stehling_count(&lambda, &nu)?;
    }
    Ok(total)
}
