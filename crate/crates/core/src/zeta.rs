//! Local factors of the subring zeta function of `Z^n` for `n <= 4`,
//! partial sums of local factors, and the comparison table of bound
//! exponents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::algebra::{series_expand_rational, GeometricFactor, PolyP, PowerSeriesX};
use crate::bounds::{bound_b_exponent, c7, minorant_exponent};
use crate::error::{Error, Result};
use crate::subgroups::bound_h_exponent;
use crate::subring::hnf::require_prime;

/// `numerator(x) / prod (1 - c x^k)` with `x = p^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub n: usize,
    pub numerator: Vec<PolyP>,
    pub denominator: Vec<GeometricFactor>,
}

fn ints(v: &[i64]) -> Vec<PolyP> {
    v.iter().map(|&c| PolyP::from_i64s(&[c])).collect()
}

fn ones(k: usize) -> GeometricFactor {
    GeometricFactor::new(PolyP::one(), k)
}

impl LocalFactor {
    pub fn new(n: usize) -> Result<Self> {
        let (numerator, denominator) = match n {
            2 => (ints(&[1]), vec![ones(1)]),
            3 => (ints(&[1, 0, -2, 0, 1]), vec![ones(1), ones(1), ones(1), GeometricFactor::new(PolyP::p_pow(1), 3)]),
            4 => (
                vec![
                    PolyP::from_i64s(&[1]),
                    PolyP::from_i64s(&[4]),
                    PolyP::from_i64s(&[2]),
                    PolyP::from_i64s(&[-3, 4]),
                    PolyP::from_i64s(&[-1, 5]),
                    PolyP::from_i64s(&[0, -5, 1]),
                    PolyP::from_i64s(&[0, -4, 3]),
                    PolyP::from_i64s(&[0, 0, -2]),
                    PolyP::from_i64s(&[0, 0, -4]),
                    PolyP::from_i64s(&[0, 0, -1]),
                ],
                vec![
                    ones(1),
                    ones(1),
                    GeometricFactor::new(PolyP::p_pow(2), 4),
                    GeometricFactor::new(PolyP::p_pow(3), 6),
                ],
            ),
            _ => return Err(Error::domain(format!("closed-form local factor known only for n in 2..=4, got {n}"))),
        };
        Ok(LocalFactor { n, numerator, denominator })
    }

    pub fn expand(&self, order: usize) -> PowerSeriesX {
        let num = PowerSeriesX::from_coeffs(self.numerator.clone(), order);
        series_expand_rational(&num, &self.denominator, order)
    }
}

/// `f_n(p^e)` for `e = 0..=order` as polynomials in `p`.
pub fn local_coefficients(n: usize, order: usize) -> Result<Vec<PolyP>> {
    Ok(LocalFactor::new(n)?.expand(order).into_coeffs())
}

/// Where the coefficients of a partial sum come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    /// The closed-form local factor (`n <= 4`).
    Exact,
    /// `p^{F(d,e,n)}` for `e >= n - 1` and zero below.
    Minorant { d: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialSum {
    pub n: usize,
    pub p: u64,
    pub s: f64,
    pub cutoff: usize,
    pub coefficients: Coefficients,
    /// Leading double of the double-double sum.
    pub value: f64,
    /// Low-order double of the double-double sum.
    pub value_lo: f64,
    /// `term(E) / term(E-1)` at the cutoff, if both terms are nonzero.
    pub last_ratio: Option<f64>,
    /// Whether the terms are still not shrinking at the cutoff.
    pub still_growing: bool,
}

/// Tolerance on `ratio >= 1` for [`PartialSum::still_growing`].
pub const RATIO_TOLERANCE: f64 = 1e-12;

fn big_to_two(x: &BigInt) -> TwoFloat {
    let hi = x.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return TwoFloat::from(hi);
    }
    let rest = x - BigInt::from_f64(hi).unwrap_or_default();
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

fn rat_to_two(x: &BigRational) -> TwoFloat {
    big_to_two(x.numer()) / big_to_two(x.denom())
}

/// The default coefficient source: exact for `n <= 4`, otherwise the
/// minorant at the maximizing `d` of `c7(n)`.
pub fn default_coefficients(n: usize) -> Result<Coefficients> {
    if (2..=4).contains(&n) {
        Ok(Coefficients::Exact)
    } else {
        Ok(Coefficients::Minorant { d: c7(n)?.1 })
    }
}

/// `log` of every term `coeff_e p^{-es}`, `None` for zero terms.
fn log_terms(n: usize, p: u64, s: f64, cutoff: usize, source: Coefficients) -> Result<Vec<Option<TwoFloat>>> {
    let lp = TwoFloat::from(p as f64).ln();
    let s2 = TwoFloat::from(s);
    match source {
        Coefficients::Exact => {
            let coeffs = local_coefficients(n, cutoff)?;
            Ok(coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| {
                    let v = c.eval_u64(p);
                    (!v.is_zero()).then(|| big_to_two(&v).ln() - s2 * TwoFloat::from(e as f64) * lp)
                })
                .collect())
        }
        Coefficients::Minorant { d } => (0..=cutoff)
            .map(|e| {
                if e + 1 < n {
                    return Ok(None);
                }
                let f = rat_to_two(&minorant_exponent(d, e, n)?);
                Ok(Some((f - s2 * TwoFloat::from(e as f64)) * lp))
            })
            .collect(),
    }
}

/// `sum_{e <= cutoff} coeff_e p^{-es}` in double-double precision.
pub fn partial_sum(n: usize, p: u64, s: f64, cutoff: usize, source: Coefficients) -> Result<PartialSum> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::domain("partial sums need n >= 2"));
    }
    let logs = log_terms(n, p, s, cutoff, source)?;
    let total = logs.iter().flatten().fold(TwoFloat::from(0.0), |acc, l| acc + l.exp());
    let last_ratio = match (cutoff.checked_sub(1).and_then(|i| logs[i]), logs[cutoff]) {
        (Some(a), Some(b)) => Some((b - a).exp().hi()),
        _ => None,
    };
    Ok(PartialSum {
        n,
        p,
        s,
        cutoff,
        coefficients: source,
        value: total.hi(),
        value_lo: total.lo(),
        last_ratio,
        still_growing: last_ratio.is_some_and(|r| r >= 1.0 - RATIO_TOLERANCE),
    })
}

/// Exact `sum_{e <= cutoff} f_n(p^e) p^{-es}` for integer `s` and `n <= 4`.
pub fn partial_sum_exact(n: usize, p: u64, s: i64, cutoff: usize) -> Result<BigRational> {
    require_prime(p)?;
    let pb = BigRational::from_integer(BigInt::from(p));
    let coeffs = local_coefficients(n, cutoff)?;
    let mut acc = BigRational::zero();
    for (e, c) in coeffs.iter().enumerate() {
        let w = if s >= 0 {
            BigRational::one() / num_traits::pow(pb.clone(), e * s as usize)
        } else {
            num_traits::pow(pb.clone(), e * (-s) as usize)
        };
        acc += BigRational::from_integer(c.eval_u64(p)) * w;
    }
    Ok(acc)
}

/// Printed `(n, e, h, b)` rows of the published comparison table.
pub const TABLE1_PRINTED: [(usize, usize, u64, u64); 10] = [
    (6, 10, 0, 6),
    (6, 20, 16, 12),
    (6, 30, 30, 30),
    (6, 300, 256, 252),
    (6, 1000, 856, 852),
    (10, 10, 8, 8),
    (10, 20, 16, 20),
    (10, 30, 36, 40),
    (10, 300, 460, 460),
    (10, 1000, 1538, 1520),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub e: usize,
    pub h_computed: u64,
    pub b_computed: u64,
    pub h_printed: u64,
    pub b_printed: u64,
    pub h_match: bool,
    pub b_match: bool,
}

impl Table1Row {
    pub fn matches(&self) -> bool {
        self.h_match && self.b_match
    }
}

pub fn table1() -> Result<Vec<Table1Row>> {
    TABLE1_PRINTED
        .iter()
        .map(|&(n, e, h_printed, b_printed)| {
            let h_computed = bound_h_exponent(n, e)?.exponent;
            let b_computed = bound_b_exponent(n, e)?.exponent;
            Ok(Table1Row {
                n,
                e,
                h_computed,
                b_computed,
                h_printed,
                b_printed,
                h_match: h_computed == h_printed,
                b_match: b_computed == b_printed,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(polys: &[PolyP], p: u64) -> Vec<i64> {
        polys.iter().map(|c| c.eval_u64(p).to_i64().unwrap()).collect()
    }

    #[test]
    fn rank_two_is_all_ones() {
        assert!(local_coefficients(2, 10).unwrap().iter().all(|c| *c == PolyP::one()));
    }

    #[test]
    fn rank_three_closed_form() {
        let c = local_coefficients(3, 5).unwrap();
        let want: Vec<PolyP> =
            [[1, 0], [3, 0], [4, 0], [4, 1], [4, 3], [4, 4]].iter().map(|v| PolyP::from_i64s(v)).collect();
        assert_eq!(c, want);
        // Oracle: 4 + (2e - 7)p for e >= 3, by convolving (1+x)^2/(1-x) with 1/(1-px^3).
        for (e, coeff) in c.iter().enumerate().skip(3) {
            let direct: i64 = (0..=e / 3).map(|a| [1i64, 3, 4][(e - 3 * a).min(2)] * 2i64.pow(a as u32)).sum();
            assert_eq!(coeff.eval_u64(2).to_i64().unwrap(), direct);
        }
    }

    #[test]
    fn rank_four_first_terms() {
        let c = local_coefficients(4, 3).unwrap();
        assert_eq!(at(&c, 2), vec![1, 6, 13, 25]);
        assert_eq!(at(&c, 3), vec![1, 6, 13, 29]);
        assert!(local_coefficients(5, 3).is_err());
    }

    #[test]
    fn coefficients_nonnegative() {
        for n in 2..=4 {
            for c in local_coefficients(n, 12).unwrap() {
                assert!(c.is_nonnegative(), "n={n}: {c}");
            }
        }
    }

    #[test]
    fn partial_sums() {
        let mut prev = 0.0;
        for cutoff in 0..=10 {
            let ps = partial_sum(3, 2, 0.0, cutoff, Coefficients::Exact).unwrap();
            assert!(ps.value > prev);
            prev = ps.value;
        }
        let exact = partial_sum_exact(3, 2, 0, 10).unwrap();
        let exact = exact.to_f64().unwrap();
        assert!((exact - prev).abs() <= 1e-12 * exact, "{exact} vs {prev}");
        let half = partial_sum_exact(3, 3, 1, 6).unwrap();
        let approx = partial_sum(3, 3, 1.0, 6, Coefficients::Exact).unwrap();
        assert!((half.to_f64().unwrap() - approx.value).abs() < 1e-12);
    }

    #[test]
    fn minorant_ratio_at_boundary() {
        for n in [6usize, 10] {
            let (c, d) = c7(n).unwrap();
            let s = c.to_f64().unwrap();
            let at = partial_sum(n, 2, s, 40, Coefficients::Minorant { d }).unwrap();
            assert!((at.last_ratio.unwrap() - 1.0).abs() < 1e-12);
            assert!(at.still_growing);
            let above = partial_sum(n, 2, s + 0.1, 40, Coefficients::Minorant { d }).unwrap();
            assert!(above.last_ratio.unwrap() < 1.0);
            assert!(!above.still_growing);
        }
        assert_eq!(default_coefficients(6).unwrap(), Coefficients::Minorant { d: 2 });
    }

    #[test]
    fn table_has_one_mismatch() {
        let rows = table1().unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| !r.matches()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].n, bad[0].e, bad[0].h_computed, bad[0].b_computed), (6, 30, 24, 24));
        let r = rows.iter().find(|r| (r.n, r.e) == (6, 20)).unwrap();
        assert_eq!((r.h_computed, r.b_computed), (16, 12));
    }
}
