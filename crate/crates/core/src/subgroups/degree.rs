//! Degrees of subgroup counts and the resulting lower-bound exponent `h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Balanced vector of `t` nonnegative integers summing to `k`, larger
/// entries first.
pub fn balanced_parts(t: usize, k: usize) -> Vec<usize> {
    if t == 0 {
        return Vec::new();
    }
    let (b, extra) = (k / t, k % t);
    (0..t).map(|j| if j < extra { b + 1 } else { b }).collect()
}

/// Degree in `p` of the number of subgroups of order `p^k` in
/// `(Z/p^t)^{n-1}`: `k(n-1) - sum_j (ν'_j)^2` over the balanced `ν'`.
pub fn max_degree_order_count(n: usize, t: usize, k: usize) -> Result<u64> {
    if n < 1 || k > t * (n - 1) {
        return Err(Error::domain(format!("order exponent {k} is outside [0, t(n-1)]")));
    }
    let parts = balanced_parts(t, k);
    Ok(parts.iter().map(|&v| (v * (n - 1 - v)) as u64).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HBound {
    pub exponent: u64,
    /// The `t` attaining the maximum, if any candidate is positive.
    pub witness_t: Option<usize>,
}

/// Largest `max_degree_order_count(n, t, e - t(n-1))` over
/// `ceil(e / 2(n-1)) <= t <= floor(e / (n-1))`, or 0 when nothing is positive.
pub fn bound_h_exponent(n: usize, e: usize) -> Result<HBound> {
    if n < 2 {
        return Err(Error::domain("h needs n >= 2"));
    }
    if e < n - 1 {
        return Err(Error::domain(format!("h needs e >= n - 1, got e = {e}")));
    }
    let r = n - 1;
    let mut best = HBound { exponent: 0, witness_t: None };
    for t in e.div_ceil(2 * r)..=e / r {
        let v = max_degree_order_count(n, t, e - t * r)?;
        if v > best.exponent {
            best = HBound { exponent: v, witness_t: Some(t) };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::stehling::{count_subgroups_of_order, SubgroupCountQuery};

    #[test]
    fn examples() {
        assert_eq!(max_degree_order_count(6, 3, 5).unwrap(), 16);
        assert_eq!(max_degree_order_count(6, 4, 10).unwrap(), 24);
        assert_eq!(max_degree_order_count(7, 2, 0).unwrap(), 0);
        assert!(max_degree_order_count(3, 1, 3).is_err());
        assert_eq!(bound_h_exponent(6, 10).unwrap().exponent, 0);
        assert_eq!(bound_h_exponent(10, 1000).unwrap().exponent, 1538);
        assert_eq!(bound_h_exponent(6, 30).unwrap().exponent, 24);
        assert_eq!(bound_h_exponent(6, 20).unwrap(), HBound { exponent: 16, witness_t: Some(3) });
        assert!(bound_h_exponent(6, 4).is_err());
    }

    #[test]
    fn degree_matches_polynomial() {
        for n in 2..=6 {
            for t in 1..=4 {
                for k in 0..=t * (n - 1) {
                    let poly = count_subgroups_of_order(&SubgroupCountQuery::new(n, t, k).unwrap()).unwrap();
                    assert_eq!(poly.degree(), Some(max_degree_order_count(n, t, k).unwrap() as usize), "n={n} t={t} k={k}");
                }
            }
        }
    }

    #[test]
    fn divisible_case_closed_form() {
        for n in 2..=8usize {
            for t in 1..=6usize {
                let r = n - 1;
                for e in (t * r..=2 * t * r).filter(|e| e % t == 0) {
                    let k = e - t * r;
                    let want = (k * (2 * r - e / t)) as u64;
                    assert_eq!(max_degree_order_count(n, t, k).unwrap(), want);
                }
            }
        }
    }
}
