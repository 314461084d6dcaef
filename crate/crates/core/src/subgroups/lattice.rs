//! Sublattices between `p^t Z^r` and `Z^r`, which are the subgroups of
//! `(Z/p^t)^r`, and the sandwich subgroups of `Z^n` built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subring::hnf::{modulus, require_prime, HnfMatrix};

/// Largest ambient group order the brute-force routines accept.
pub const DESK_SCALE_LIMIT: u128 = 1_000_000;

fn prime_power_log(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut rest = m;
    let mut s = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p, s))
}

/// Ranks above this exceed [`DESK_SCALE_LIMIT`] even at `p = 2`.
const MAX_RANK: usize = 20;

/// Node budget used by [`brute_force_subgroups`].
pub const DEFAULT_SUBGROUP_BUDGET: u64 = 1_000_000_000;

fn check_scale(p: u64, t: u32, r: usize) -> Result<()> {
    if r > MAX_RANK {
        return Err(Error::domain(format!("rank {r} exceeds the brute-force maximum of {MAX_RANK}")));
    }
    let order = (p as u128).checked_pow(t * r as u32);
    match order {
        Some(o) if o <= DESK_SCALE_LIMIT => Ok(()),
        _ => Err(Error::ResourceLimit {
            budget: DESK_SCALE_LIMIT as u64,
            visited: 0,
            progress: format!("group (Z/{p}^{t})^{r} is beyond the brute-force limit"),
        }),
    }
}

struct SublatticeSearch<'a, F> {
    r: usize,
    p: u64,
    t: u32,
    pt: u64,
    /// Required sum of diagonal exponents, if any.
    target: Option<u32>,
    budget: u64,
    visited: u64,
    diag: Vec<u32>,
    a: Vec<u64>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u32], &[u64])> SublatticeSearch<'_, F> {
    fn column(&mut self, j: usize, used: u32) -> Result<()> {
        let r = self.r;
        if j == r {
            if self.target.is_none_or(|s| s == used) {
                (self.visit)(&self.diag, &self.a);
            }
            return Ok(());
        }
        let left = (r - j - 1) as u32;
        for dj in 0..=self.t {
            if let Some(s) = self.target {
                if used + dj > s || used + dj + left * self.t < s {
                    continue;
                }
            }
            self.diag[j] = dj;
            self.a[j * r + j] = self.p.pow(dj);
            let scale = self.p.pow(self.t - dj);
            let mut acc = [0u64; MAX_RANK];
            if j == 0 {
                self.column(1, used + dj)?;
            } else {
                self.entry(j, j - 1, scale, &mut acc, used + dj)?;
            }
        }
        Ok(())
    }

    /// Chooses `a[c][j]` for rows `c` from `j - 1` down to 0.
    ///
    /// `p^t e_j` lies in the lattice iff `scale` times the part of column `j`
    /// above the diagonal lies in the span of the earlier columns. Back
    /// substitution decides row `c` from the entries in rows `c..j` alone:
    /// `scale * a[c][j] - acc[c]` must be divisible by `p^{d_c}`, where
    /// `acc[i]` is what rows below `i` have already subtracted from row `i`.
    /// Only the residues solving that congruence are visited.
    fn entry(&mut self, j: usize, c: usize, scale: u64, acc: &mut [u64; MAX_RANK], used: u32) -> Result<()> {
        let (r, pt) = (self.r, self.pt);
        let dc = self.a[c * r + c];
        let target = acc[c] % dc;
        let (first, stride) = if scale >= dc {
            if target != 0 {
                return Ok(());
            }
            (0, 1)
        } else {
            if !target.is_multiple_of(scale) {
                return Ok(());
            }
            (target / scale, dc / scale)
        };
        let mut x = first;
        while x < dc {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::ResourceLimit {
                    budget: self.budget,
                    visited: self.visited,
                    progress: format!("column {j} of a rank-{r} sublattice search"),
                });
            }
            let wc = (scale * x % pt + pt - acc[c]) % pt;
            self.a[c * r + j] = x;
            let q = wc / dc;
            let saved = *acc;
            for i in 0..c {
                acc[i] = (acc[i] + q * self.a[i * r + c]) % pt;
            }
            if c == 0 {
                self.column(j + 1, used)?;
            } else {
                self.entry(j, c - 1, scale, acc, used)?;
            }
            *acc = saved;
            x += stride;
        }
        self.a[c * r + j] = 0;
        Ok(())
    }
}

/// Visits the HNF basis (as `r x r` rows) and diagonal exponents of every
/// sublattice `L` with `p^t Z^r ⊆ L ⊆ Z^r`, optionally only those of index
/// `p^target`. Returns the number of search nodes.
fn for_each_sublattice(
    r: usize,
    p: u64,
    t: u32,
    target: Option<u32>,
    budget: u64,
    mut visit: impl FnMut(&[u32], &[u64]),
) -> Result<u64> {
    let pt = modulus(p, t)? as u64;
    let mut search = SublatticeSearch {
        r,
        p,
        t,
        pt,
        target,
        budget,
        visited: 0,
        diag: vec![0; r],
        a: vec![0; r * r],
        visit: &mut visit,
    };
    search.column(0, 0)?;
    Ok(search.visited)
}

/// Subgroups of order `p^k` in `(Z/p^t)^{n-1}`, counted as sublattices of
/// index `p^{t(n-1) - k}` containing `p^t Z^{n-1}`.
pub fn brute_force_subgroups(n: usize, t: usize, k: usize, p: u64) -> Result<u64> {
    brute_force_subgroups_with_budget(n, t, k, p, DEFAULT_SUBGROUP_BUDGET)
}

/// [`brute_force_subgroups`] with an explicit limit on search nodes.
pub fn brute_force_subgroups_with_budget(n: usize, t: usize, k: usize, p: u64, budget: u64) -> Result<u64> {
    require_prime(p)?;
    if n < 1 || k > t * (n - 1) {
        return Err(Error::domain(format!("no subgroups of order p^{k} in (Z/p^{t})^{}", n.saturating_sub(1))));
    }
    let r = n - 1;
    check_scale(p, t as u32, r)?;
    let mut count = 0;
    for_each_sublattice(r, p, t as u32, Some((t * r - k) as u32), budget, |_, _| count += 1)?;
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichRow {
    /// `log_p` of the index of the sandwich subgroup in `Z^n`.
    pub index_exponent: u32,
    pub subgroup_count: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichAudit {
    pub n: usize,
    pub m: u64,
    pub prime: u64,
    pub rows: Vec<SandwichRow>,
}

impl SandwichAudit {
    pub fn total_violations(&self) -> u64 {
        self.rows.iter().map(|r| r.violations).sum()
    }

    /// Number of sandwich subgroups of index `m^{n-1} p^j`.
    pub fn count_at_offset(&self, j: u32) -> u64 {
        let s = prime_power_log(self.m).map_or(0, |(_, s)| s);
        let e = s * (self.n as u32 - 1) + j;
        self.rows.iter().find(|r| r.index_exponent == e).map_or(0, |r| r.subgroup_count)
    }
}

/// Every additive subgroup `G` with `Z + m^2 Z^n ⊆ G ⊆ Z + m Z^n`, checked
/// against the subring conditions. `m` must be a prime power.
///
/// Such a `G` is `Z·1 + m·H` for a sublattice `H ⊇ m Z^{n-1}` placed in the
/// first `n - 1` coordinates; its HNF has first columns `m·H` and last
/// column all ones.
pub fn sandwich_subring_audit(n: usize, m: u64) -> Result<SandwichAudit> {
    if n < 2 {
        return Err(Error::domain("sandwich audit needs n >= 2"));
    }
    let (p, s) = prime_power_log(m).ok_or_else(|| Error::domain(format!("{m} is not a prime power")))?;
    let r = n - 1;
    check_scale(p, s, r)?;
    let mut rows: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
    let mut failure = None;
    for_each_sublattice(r, p, s, None, u64::MAX, |diag, a| {
        let mut exps: Vec<u32> = diag.iter().map(|d| d + s).collect();
        exps.push(0);
        let mut g = vec![vec![0u128; n]; n];
        for i in 0..r {
            for j in 0..r {
                g[i][j] = a[i * r + j] as u128 * m as u128;
            }
            g[i][r] = 1;
        }
        g[r][r] = 1;
        match HnfMatrix::new(p, exps, g) {
            Ok(hm) => {
                let slot = rows.entry(hm.index_exponent()).or_insert((0, 0));
                slot.0 += 1;
                if !(hm.identity_in_span() && hm.is_closed_full()) {
                    slot.1 += 1;
                }
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let rows = rows
        .into_iter()
        .map(|(index_exponent, (subgroup_count, violations))| SandwichRow { index_exponent, subgroup_count, violations })
        .collect();
    Ok(SandwichAudit { n, m, prime: p, rows })
}
