//! Gaussian binomial coefficients `[m choose r]_p`.

use crate::algebra::poly::PolyP;
use crate::error::{Error, Result};

/// `[m choose r]_p` via the product `prod_{i=1}^r (p^{m-r+i} - 1) / (p^i - 1)`,
/// divided out exactly in `PolyP`.
pub fn gaussian_binomial(m: usize, r: usize) -> Result<PolyP> {
    if r > m {
        return Err(Error::domain(format!("gaussian_binomial: r = {r} exceeds m = {m}")));
    }
    let r = r.min(m - r);
    let minus_one = PolyP::from_i64s(&[-1]);
    let mut num = PolyP::one();
    let mut den = PolyP::one();
    for i in 1..=r {
        num = &num * &(&PolyP::p_pow(m - r + i) + &minus_one);
        den = &den * &(&PolyP::p_pow(i) + &minus_one);
    }
    Ok(num.div_exact(&den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn binom(m: u64, r: u64) -> u64 {
        (0..r).fold(1, |acc, i| acc * (m - i) / (i + 1))
    }

    #[test]
    fn small_values() {
        assert_eq!(gaussian_binomial(2, 1).unwrap(), PolyP::from_i64s(&[1, 1]));
        assert_eq!(gaussian_binomial(5, 0).unwrap(), PolyP::one());
        assert_eq!(gaussian_binomial(4, 2).unwrap(), PolyP::from_i64s(&[1, 1, 2, 1, 1]));
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn four_two_by_subspace_oracle() {
        // Oracle: number of 2-dim subspaces of F_2^4 counted as pairs of
        // independent vectors divided by |GL_2(F_2)| = 6.
        let q = 2u64;
        let pairs = (q.pow(4) - 1) * (q.pow(4) - q);
        let gl2 = (q * q - 1) * (q * q - q);
        assert_eq!(gaussian_binomial(4, 2).unwrap().eval_u64(q), BigInt::from(pairs / gl2));
    }

    #[test]
    fn degree_is_r_times_m_minus_r() {
        for m in 0..=12 {
            for r in 0..=m {
                assert_eq!(gaussian_binomial(m, r).unwrap().degree(), Some(r * (m - r)));
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_pascal_and_classical_limit(m in 1usize..=12, r_seed in 0usize..=12) {
            let r = r_seed % (m + 1);
            let g = gaussian_binomial(m, r).unwrap();
            prop_assert_eq!(&g, &gaussian_binomial(m, m - r).unwrap());
            prop_assert_eq!(g.eval_u64(1), BigInt::from(binom(m as u64, r as u64)));
            if r >= 1 {
                let pascal = &gaussian_binomial(m - 1, r).unwrap_or_else(|_| PolyP::zero())
                    + &gaussian_binomial(m - 1, r - 1).unwrap().shift(m - r);
                prop_assert_eq!(g, pascal);
            }
        }
    }
}
