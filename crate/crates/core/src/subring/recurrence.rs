//! The decomposition of `f_n` into irreducible pieces:
//!
//! `f_n(p^e) = sum_{i=0..e} sum_{j=1..n} C(n-1, j-1) f_{n-j}(p^{e-i}) g_j(p^i)`
//!
//! where `f_0(p^k) = [k = 0]`. How `g_j` lines up with the irreducible counts
//! and what it is at exponent zero is a convention; see
//! [`RecurrenceConvention`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subring::enumerate::{count_subrings, CountKind, CountMemo, EnumConfig};
use crate::subring::hnf::require_prime;

/// How the `g_j` in the recurrence map onto irreducible counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecurrenceConvention {
    /// `g_j(p^i)` for `i >= 1` is `g_{j + index_offset}(p^i)` as counted by
    /// the enumerator.
    pub index_offset: i32,
    /// Value used for `g_1(1)`.
    pub g1_at_unit: u64,
    /// Value used for `g_j(1)` with `j >= 2`.
    pub gj_at_unit: u64,
}

impl Default for RecurrenceConvention {
    /// The convention that reproduces the enumerator, found by [`calibrate`].
    fn default() -> Self {
        RecurrenceConvention { index_offset: 0, g1_at_unit: 1, gj_at_unit: 0 }
    }
}

impl RecurrenceConvention {
    /// Every convention in the search space used by [`calibrate`].
    pub fn candidates() -> Vec<RecurrenceConvention> {
        let mut out = Vec::new();
        for index_offset in -1..=1 {
            for g1_at_unit in 0..=1 {
                for gj_at_unit in 0..=1 {
                    out.push(RecurrenceConvention { index_offset, g1_at_unit, gj_at_unit });
                }
            }
        }
        out
    }
}

struct Evaluator<'a> {
    p: u64,
    conv: RecurrenceConvention,
    cfg: &'a EnumConfig,
    memo: &'a CountMemo,
    f: HashMap<(usize, usize), u128>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl Evaluator<'_> {
    fn g(&self, j: usize, i: usize) -> Result<u128> {
        if i == 0 {
            return Ok(u128::from(if j == 1 { self.conv.g1_at_unit } else { self.conv.gj_at_unit }));
        }
        let dim = j as i64 + i64::from(self.conv.index_offset);
        if dim < 2 {
            // Dimension one has only the trivial ring, which has index 1.
            return Ok(0);
        }
        Ok(self.memo.count(CountKind::Irreducible, dim as usize, i, self.p, self.cfg)?.into())
    }

    fn f(&mut self, n: usize, e: usize) -> Result<u128> {
        if n == 0 {
            return Ok(u128::from(e == 0));
        }
        if let Some(&v) = self.f.get(&(n, e)) {
            return Ok(v);
        }
        let mut total = 0u128;
        for i in 0..=e {
            for j in 1..=n {
                let g = self.g(j, i)?;
                if g == 0 {
                    continue;
                }
                let rest = self.f(n - j, e - i)?;
                total += binomial(n - 1, j - 1) * rest * g;
            }
        }
        self.f.insert((n, e), total);
        Ok(total)
    }
}

/// Evaluates the recurrence for `f_n(p^e)` under `convention`.
pub fn recurrence_f(n: usize, e: usize, p: u64, convention: &RecurrenceConvention, cfg: &EnumConfig) -> Result<u64> {
    recurrence_f_with_memo(n, e, p, convention, cfg, &CountMemo::new())
}

/// As [`recurrence_f`], sharing irreducible counts through `memo`.
pub fn recurrence_f_with_memo(
    n: usize,
    e: usize,
    p: u64,
    convention: &RecurrenceConvention,
    cfg: &EnumConfig,
    memo: &CountMemo,
) -> Result<u64> {
    require_prime(p)?;
    let mut ev = Evaluator { p, conv: *convention, cfg, memo, f: HashMap::new() };
    let v = ev.f(n, e)?;
    u64::try_from(v).map_err(|_| Error::domain("recurrence value exceeds 64 bits"))
}

/// Conventions from [`RecurrenceConvention::candidates`] that agree with the
/// enumerator on every `(n, e, p)` with `n <= max_n`, `e <= max_e`.
pub fn calibrate(max_n: usize, max_e: usize, primes: &[u64], cfg: &EnumConfig) -> Result<Vec<RecurrenceConvention>> {
    let memo = CountMemo::new();
    let mut truth = HashMap::new();
    for &p in primes {
        for n in 1..=max_n {
            for e in 0..=max_e {
                truth.insert((n, e, p), count_subrings(n, e, p, cfg)?);
            }
        }
    }
    let mut good = Vec::new();
    'conv: for conv in RecurrenceConvention::candidates() {
        for (&(n, e, p), &want) in &truth {
            if recurrence_f_with_memo(n, e, p, &conv, cfg, &memo)? != want {
                continue 'conv;
            }
        }
        good.push(conv);
    }
    Ok(good)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_is_unique_and_default() {
        let found = calibrate(3, 3, &[2, 3], &EnumConfig::default()).unwrap();
        assert_eq!(found, vec![RecurrenceConvention::default()]);
    }

    #[test]
    fn small_values() {
        let c = RecurrenceConvention::default();
        let cfg = EnumConfig::default();
        assert_eq!(recurrence_f(2, 3, 2, &c, &cfg).unwrap(), 1);
        assert_eq!(recurrence_f(3, 2, 2, &c, &cfg).unwrap(), 4);
        assert_eq!(recurrence_f(3, 0, 5, &c, &cfg).unwrap(), 1);
    }

    #[test]
    fn agrees_with_enumeration() {
        let c = RecurrenceConvention::default();
        let cfg = EnumConfig::default();
        for p in [2, 3] {
            for n in 1..=4 {
                for e in 0..=4 {
                    assert_eq!(
                        recurrence_f(n, e, p, &c, &cfg).unwrap(),
                        count_subrings(n, e, p, &cfg).unwrap(),
                        "n={n} e={e} p={p}"
                    );
                }
            }
        }
    }
}
