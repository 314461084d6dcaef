//! Closed-form lower-bound exponents for `f_n(p^e)` and the divergence
//! abscissas of the geometric minorants built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subgroups::bound_h_exponent;

/// `3 - 2√2`, the maximum of `(C - C²)/(C + 1)` on `[0, 1]`.
pub fn cap_constant() -> f64 {
    3.0 - 2.0 * std::f64::consts::SQRT_2
}

/// `(3 - 2√2)(n - 1)e`
pub fn cap_value(n: usize, e: usize) -> f64 {
    cap_constant() * (n - 1) as f64 * e as f64
}

fn check_range(n: usize, e: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("bounds need n >= 2"));
    }
    if e < n - 1 {
        return Err(Error::domain(format!("bounds need e >= n - 1, got n = {n}, e = {e}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BBound {
    pub exponent: u64,
    pub witness_d: usize,
}

/// `max_d floor(e / (n-1+d)) d (n-1-d)` over `0 <= d <= n-1`; ties go to
/// the smallest `d`.
pub fn bound_b_exponent(n: usize, e: usize) -> Result<BBound> {
    check_range(n, e)?;
    let r = n - 1;
    let mut best = BBound { exponent: 0, witness_d: 0 };
    for d in 0..=r {
        let v = (e / (r + d) * d * (r - d)) as u64;
        if v > best.exponent {
            best = BBound { exponent: v, witness_d: d };
        }
    }
    Ok(best)
}

/// The smooth objective `G(C, e, n)` maximized by [`bound_c_exponent`].
pub fn c_objective(n: usize, e: usize, c: f64) -> f64 {
    let x = (n - 1) as f64;
    let e = e as f64;
    let q = c - c * c;
    e * (q / (c + 1.0) * x + (c - 1.0) / (c + 1.0)) - (q * x * x + (c - 1.0) * x)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CBound {
    pub value: f64,
    pub argmax: f64,
}

const C_GRID: usize = 10_000;

/// Maximum of [`c_objective`] over `C ∈ [0, 1]`: a grid of `10^4` cells,
/// then golden-section search on the two cells around the best grid point.
pub fn bound_c_exponent(n: usize, e: usize) -> Result<CBound> {
    check_range(n, e)?;
    let f = |c: f64| c_objective(n, e, c);
    let h = 1.0 / C_GRID as f64;
    let best = (0..=C_GRID).max_by(|&a, &b| f(a as f64 * h).total_cmp(&f(b as f64 * h))).unwrap();
    let (mut lo, mut hi) = (best.saturating_sub(1) as f64 * h, ((best + 1).min(C_GRID)) as f64 * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-13 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = (lo + hi) / 2.0;
    let grid_best = best as f64 * h;
    let (argmax, value) = [mid, grid_best].into_iter().map(|c| (c, f(c))).max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    Ok(CBound { value, argmax })
}

fn rational(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact maximum over integer `d` of `num(d) / (n-1+d)`, smallest `d` on ties.
fn max_over_d(n: usize, num: impl Fn(usize, usize) -> usize) -> Result<(BigRational, usize)> {
    if n < 2 {
        return Err(Error::domain("needs n >= 2"));
    }
    let r = n - 1;
    let mut best = (BigRational::zero(), usize::MAX);
    for d in 0..=r {
        let v = rational(num(d, r), r + d);
        if best.1 == usize::MAX || v > best.0 {
            best = (v, d);
        }
    }
    Ok(best)
}

/// `max_d d(n-1-d)/(n-1+d)` and its argmax.
pub fn c7(n: usize) -> Result<(BigRational, usize)> {
    max_over_d(n, |d, r| d * (r - d))
}

/// `max_d (d(n-1-d) + 1)/(n-1+d)` and its argmax.
pub fn a_exponent(n: usize) -> Result<(BigRational, usize)> {
    max_over_d(n, |d, r| d * (r - d) + 1)
}

/// `(3 - 2√2)(n - 1) + 1 - √2`
pub fn divergence_line(n: usize) -> f64 {
    cap_constant() * (n - 1) as f64 + 1.0 - std::f64::consts::SQRT_2
}

/// Exponents for orders, where the subring series is evaluated at `2s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderExponents {
    pub order_growth: BigRational,
    pub order_divergence_c7: BigRational,
    pub order_divergence_line: f64,
}

pub fn order_exponents(n: usize) -> Result<OrderExponents> {
    let half = rational(1, 2);
    Ok(OrderExponents {
        order_growth: a_exponent(n)?.0 * &half,
        order_divergence_c7: c7(n)?.0 * &half,
        order_divergence_line: divergence_line(n) / 2.0,
    })
}

/// Tolerance for deciding `s <= d(n-1-d)/(n-1+d)` in floating point.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

fn minorant_rate(d: usize, n: usize) -> Result<BigRational> {
    if n < 2 || d > n - 1 {
        return Err(Error::domain(format!("d = {d} is outside [0, n-1]")));
    }
    Ok(rational(d * (n - 1 - d), n - 1 + d))
}

/// `log_p` of the common ratio of `sum_e p^{F(d,e,n)} p^{-es}`:
/// `d(n-1-d)/(n-1+d) - s`.
pub fn minorant_log_ratio(d: usize, n: usize, s: f64) -> Result<f64> {
    Ok(minorant_rate(d, n)?.to_f64().unwrap() - s)
}

/// The minorant's term ratio `p^{d(n-1-d)/(n-1+d) - s}`.
pub fn minorant_term_ratio(d: usize, n: usize, s: f64, p: u64) -> Result<f64> {
    Ok((p as f64).powf(minorant_log_ratio(d, n, s)?))
}

/// Whether the minorant diverges at real `s`, i.e. `s <= d(n-1-d)/(n-1+d)`
/// up to [`BOUNDARY_TOLERANCE`].
pub fn minorant_divergence(d: usize, n: usize, s: f64) -> Result<bool> {
    Ok(minorant_log_ratio(d, n, s)? >= -BOUNDARY_TOLERANCE)
}

/// Exact version of [`minorant_divergence`] for rational `s`.
pub fn minorant_divergence_exact(d: usize, n: usize, s: &BigRational) -> Result<bool> {
    Ok(s <= &minorant_rate(d, n)?)
}

/// `F(d, e, n) = e d(n-1-d)/(n-1+d) - d(n-1-d)`, the floor-free minorant exponent.
pub fn minorant_exponent(d: usize, e: usize, n: usize) -> Result<BigRational> {
    let rate = minorant_rate(d, n)?;
    Ok(rate * BigInt::from(e) - BigRational::from_integer(BigInt::from(d * (n - 1 - d))))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub e: usize,
    pub h: u64,
    pub h_witness_t: Option<usize>,
    pub b: u64,
    pub b_witness_d: usize,
    pub c: f64,
    pub c_argmax: f64,
    pub cap: f64,
}

pub fn bound_report(n: usize, e: usize) -> Result<BoundReport> {
    let h = bound_h_exponent(n, e)?;
    let b = bound_b_exponent(n, e)?;
    let c = bound_c_exponent(n, e)?;
    Ok(BoundReport {
        n,
        e,
        h: h.exponent,
        h_witness_t: h.witness_t,
        b: b.exponent,
        b_witness_d: b.witness_d,
        c: c.value,
        c_argmax: c.argmax,
        cap: cap_value(n, e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn b_examples() {
        assert_eq!(bound_b_exponent(6, 10).unwrap(), BBound { exponent: 6, witness_d: 2 });
        assert_eq!(bound_b_exponent(10, 20).unwrap(), BBound { exponent: 20, witness_d: 4 });
        assert_eq!(bound_b_exponent(10, 1000).unwrap(), BBound { exponent: 1520, witness_d: 4 });
        assert!(bound_b_exponent(6, 4).is_err());
    }

    #[test]
    fn rational_examples() {
        assert_eq!(c7(2).unwrap().0, q(0, 1));
        assert_eq!(c7(6).unwrap(), (q(6, 7), 2));
        assert_eq!(c7(10).unwrap(), (q(20, 13), 4));
        assert_eq!(a_exponent(2).unwrap().0, q(1, 1));
        assert_eq!(a_exponent(6).unwrap(), (q(1, 1), 2));
        assert_eq!(a_exponent(10).unwrap(), (q(21, 13), 4));
        let o6 = order_exponents(6).unwrap();
        assert_eq!(o6.order_growth, q(1, 2));
        assert_eq!(order_exponents(10).unwrap().order_divergence_c7, q(10, 13));
        assert_eq!(order_exponents(2).unwrap().order_growth, q(1, 2));
    }

    #[test]
    fn divergence_line_values() {
        assert!((divergence_line(2) + 0.242640687).abs() < 1e-8);
        assert!((divergence_line(100) - 16.571501).abs() < 1e-6);
    }

    #[test]
    fn minorant_examples() {
        assert!(minorant_divergence(2, 6, 6.0 / 7.0).unwrap());
        assert!(!minorant_divergence(2, 6, 0.9).unwrap());
        assert!(minorant_divergence(0, 9, 0.0).unwrap());
        assert!(minorant_divergence_exact(2, 6, &q(6, 7)).unwrap());
        assert!(!minorant_divergence_exact(2, 6, &q(6001, 7000)).unwrap());
        assert!(minorant_divergence(7, 6, 0.0).is_err());
    }

    /// Independent stationary point: bisection on the analytic derivative.
    fn stationary_point(n: usize, e: usize) -> f64 {
        let x = (n - 1) as f64;
        let e = e as f64;
        let deriv = |c: f64| {
            let num = (c - c * c) * x + c - 1.0;
            let dnum = (1.0 - 2.0 * c) * x + 1.0;
            e * (dnum * (c + 1.0) - num) / ((c + 1.0) * (c + 1.0)) - (1.0 - 2.0 * c) * x * x - x
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        assert!(deriv(lo) > 0.0 && deriv(hi) < 0.0);
        for _ in 0..200 {
            let mid = (lo + hi) / 2.0;
            if deriv(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn c_matches_stationary_point() {
        let got = bound_c_exponent(6, 1000).unwrap();
        let c = stationary_point(6, 1000);
        assert!((got.value - c_objective(6, 1000, c)).abs() < 1e-6);
        assert!((got.argmax - c).abs() < 1e-5);
    }

    #[test]
    fn c_argmax_limits() {
        // For fixed n the argmax tends to sqrt(2 + 2/(n-1)) - 1 as e grows,
        // which itself tends to sqrt(2) - 1 as n grows.
        for n in [3usize, 6, 10, 1000] {
            let limit = (2.0 + 2.0 / (n - 1) as f64).sqrt() - 1.0;
            let far = bound_c_exponent(n, 1_000_000_000).unwrap().argmax;
            assert!((far - limit).abs() < 1e-4, "n={n}: {far} vs {limit}");
        }
        let target = std::f64::consts::SQRT_2 - 1.0;
        let big_n = bound_c_exponent(100_000, 1_000_000_000_000).unwrap().argmax;
        assert!((big_n - target).abs() < 1e-4);
    }

    #[test]
    fn c_relaxation_holds_from_e_equal_n() {
        for n in 2..=20 {
            for e in n..=200 {
                let c = bound_c_exponent(n, e).unwrap().value;
                let b = bound_b_exponent(n, e).unwrap().exponent as f64;
                assert!(c <= b + 1e-6, "n={n} e={e}: c={c} b={b}");
            }
        }
    }

    #[test]
    fn c_exceeds_b_at_the_left_edge() {
        // At e = n - 1 the smooth bound is positive while every floor is zero.
        for n in 2..=12 {
            let c = bound_c_exponent(n, n - 1).unwrap().value;
            assert_eq!(bound_b_exponent(n, n - 1).unwrap().exponent, 0);
            assert!(c > 0.0, "n={n}");
        }
    }

    #[test]
    fn caps_hold() {
        for n in 2..=50 {
            for e in n - 1..=500 {
                let cap = cap_value(n, e) + 1e-9;
                assert!(bound_b_exponent(n, e).unwrap().exponent as f64 <= cap);
                assert!(bound_h_exponent(n, e).unwrap().exponent as f64 <= cap);
            }
        }
    }

    #[test]
    fn c7_over_n_approaches_cap() {
        for n in 60..=200 {
            let r = c7(n).unwrap().0.to_f64().unwrap() / n as f64;
            assert!(r < cap_constant() && cap_constant() - r < 0.02, "n={n}");
        }
    }

    #[test]
    fn a_beats_one_from_seven() {
        for n in 7..=100 {
            assert!(a_exponent(n).unwrap().0 > q(1, 1), "n={n}");
        }
    }

    #[test]
    fn divergence_line_below_c7() {
        for n in 2..=100 {
            assert!(divergence_line(n) <= c7(n).unwrap().0.to_f64().unwrap() + 1e-12, "n={n}");
        }
    }

    proptest! {
        #[test]
        fn b_dominates_minorant(n in 2usize..30, extra in 0usize..300, d_seed in 0usize..100) {
            let e = n - 1 + extra;
            let d = d_seed % n;
            let b = bound_b_exponent(n, e).unwrap().exponent;
            prop_assert!(BigRational::from_integer(b.into()) >= minorant_exponent(d, e, n).unwrap());
        }
    }
}
