//! Exhaustive counting of subring matrices at a concrete prime.
//!
//! Columns are filled left to right and each column top to bottom. As soon as
//! column `j` is complete every pair `(i, j)` with `i <= j` is tested on the
//! leading `(i+1) x (i+1)` block, so a failing prefix is never extended.
//!
//! The identity condition prunes twice: the last row forces `e_n = 0`, and
//! `1 - v_n` must lie in the span of the first `n - 1` columns, which fixes the
//! last column as the reduced representative of `(1, ..., 1)` modulo that
//! span. Only the first `n - 1` columns are ever searched.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::algebra::partition::{compositions, weak_compositions, Composition};
use crate::error::{Error, Result};
use crate::subring::hnf::{pair_closed, prefix_moduli, require_prime, HnfMatrix};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

const FLUSH_EVERY: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Maximum number of partial matrices visited before giving up.
    pub node_budget: u64,
    /// Search independent diagonals on the rayon pool.
    pub parallel: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { node_budget: DEFAULT_NODE_BUDGET, parallel: true }
    }
}

impl EnumConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        EnumConfig { node_budget, ..Self::default() }
    }
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    /// Adds `n` nodes; false once the total exceeds the limit.
    fn charge(&self, n: u64) -> bool {
        self.used.fetch_add(n, Ordering::Relaxed) + n <= self.limit
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entries {
    /// `a_ij` in `[0, p^{e_i})`.
    Reduced,
    /// `a_ij = p * b` with `b` in `[0, p^{e_i - 1})`; irreducible matrices.
    MultiplesOfP,
}

struct Exhausted;

struct DiagonalSearch<'a> {
    n: usize,
    p: u128,
    diag: Vec<u32>,
    moduli: Vec<u128>,
    a: Vec<u128>,
    w: Vec<u128>,
    entries: Entries,
    budget: &'a Budget,
    pending: u64,
    count: u64,
    collect: Option<Vec<HnfMatrix>>,
}

impl<'a> DiagonalSearch<'a> {
    fn new(p: u64, diag: Vec<u32>, entries: Entries, budget: &'a Budget, collect: bool) -> Result<Self> {
        let n = diag.len();
        let moduli = prefix_moduli(p, &diag)?;
        let mut a = vec![0u128; n * n];
        for (i, &e) in diag.iter().enumerate() {
            a[i * n + i] = (p as u128).pow(e);
        }
        Ok(DiagonalSearch {
            n,
            p: p as u128,
            diag,
            moduli,
            a,
            w: vec![0; n],
            entries,
            budget,
            pending: 0,
            count: 0,
            collect: collect.then(Vec::new),
        })
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            return self.flush();
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), Exhausted> {
        let n = std::mem::take(&mut self.pending);
        if self.budget.charge(n) {
            Ok(())
        } else {
            Err(Exhausted)
        }
    }

    fn run(&mut self) -> Result<(), Exhausted> {
        if self.n == 0 {
            return Ok(());
        }
        self.column(0)?;
        self.flush()
    }

    fn column(&mut self, j: usize) -> Result<(), Exhausted> {
        if j + 1 == self.n {
            return self.finish();
        }
        self.entry(j, 0)
    }

    fn entry(&mut self, j: usize, i: usize) -> Result<(), Exhausted> {
        let n = self.n;
        if i == j {
            for r in 0..=j {
                if !pair_closed(&self.a, n, r, j, &self.moduli, &mut self.w) {
                    return Ok(());
                }
            }
            return self.column(j + 1);
        }
        let (step, count) = match self.entries {
            Entries::Reduced => (1, self.p.pow(self.diag[i])),
            Entries::MultiplesOfP => (self.p, self.p.pow(self.diag[i].saturating_sub(1))),
        };
        for k in 0..count {
            self.a[i * n + j] = k * step;
            self.tick()?;
            self.entry(j, i + 1)?;
        }
        self.a[i * n + j] = 0;
        Ok(())
    }

    /// Fills the forced last column and runs the pairs that involve it.
    fn finish(&mut self) -> Result<(), Exhausted> {
        let n = self.n;
        let last = n - 1;
        let m = self.moduli[last];
        let mut r = vec![1u128 % m.max(1); last];
        for c in (0..last).rev() {
            let d = self.a[c * n + c];
            let q = r[c] / d;
            r[c] %= d;
            if q != 0 {
                for row in 0..c {
                    let sub = (q * self.a[row * n + c]) % m;
                    r[row] = (r[row] + m - sub) % m;
                }
            }
        }
        for (row, x) in r.into_iter().enumerate() {
            self.a[row * n + last] = x;
        }
        self.a[last * n + last] = 1;
        self.tick()?;
        let closed = (0..n).all(|i| pair_closed(&self.a, n, i, last, &self.moduli, &mut self.w));
        if closed {
            self.count += 1;
            if let Some(out) = self.collect.as_mut() {
                out.push(HnfMatrix::from_raw(self.p as u64, self.diag.clone(), self.a.clone()));
            }
        }
        Ok(())
    }
}

struct DiagonalOutcome {
    count: u64,
    matrices: Vec<HnfMatrix>,
    exhausted: bool,
}

fn search_diagonals(
    p: u64,
    diagonals: Vec<Vec<u32>>,
    entries: Entries,
    cfg: &EnumConfig,
    collect: bool,
) -> Result<(u64, Vec<HnfMatrix>)> {
    let budget = Budget::new(cfg.node_budget);
    let run_one = |diag: &Vec<u32>| -> Result<DiagonalOutcome> {
        let mut search = DiagonalSearch::new(p, diag.clone(), entries, &budget, collect)?;
        let exhausted = search.run().is_err();
        Ok(DiagonalOutcome { count: search.count, matrices: search.collect.unwrap_or_default(), exhausted })
    };
    let outcomes: Vec<DiagonalOutcome> = if cfg.parallel {
        diagonals.par_iter().map(run_one).collect::<Result<_>>()?
    } else {
        diagonals.iter().map(run_one).collect::<Result<_>>()?
    };
    let total = diagonals.len();
    let done = outcomes.iter().filter(|o| !o.exhausted).count();
    if done < total {
        let partial: u64 = outcomes.iter().filter(|o| !o.exhausted).map(|o| o.count).sum();
        return Err(Error::ResourceLimit {
            budget: cfg.node_budget,
            visited: budget.used(),
            progress: format!("{done} of {total} diagonals finished, partial count {partial}"),
        });
    }
    let count = outcomes.iter().map(|o| o.count).sum();
    let matrices = outcomes.into_iter().flat_map(|o| o.matrices).collect();
    Ok((count, matrices))
}

fn subring_diagonals(n: usize, e: usize) -> Vec<Vec<u32>> {
    weak_compositions(e, n - 1)
        .into_iter()
        .map(|mut d| {
            d.push(0);
            d.into_iter().map(|x| x as u32).collect()
        })
        .collect()
}

/// `f_n(p^e)`: the number of subrings of index `p^e` in `Z^n`.
pub fn count_subrings(n: usize, e: usize, p: u64, cfg: &EnumConfig) -> Result<u64> {
    require_prime(p)?;
    match n {
        0 => Err(Error::domain("count_subrings needs n >= 1")),
        1 => Ok(u64::from(e == 0)),
        _ => Ok(search_diagonals(p, subring_diagonals(n, e), Entries::Reduced, cfg, false)?.0),
    }
}

/// All subring matrices of determinant `p^e` in dimension `n`.
pub fn subring_matrices(n: usize, e: usize, p: u64, cfg: &EnumConfig) -> Result<Vec<HnfMatrix>> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::domain("subring_matrices needs n >= 2"));
    }
    Ok(search_diagonals(p, subring_diagonals(n, e), Entries::Reduced, cfg, true)?.1)
}

fn irreducible_diagonal(alpha: &Composition) -> Vec<u32> {
    let mut diag: Vec<u32> = alpha.parts().iter().map(|&x| x as u32).collect();
    diag.push(0);
    diag
}

/// `g_α(p)`: irreducible subring matrices with diagonal `α`.
pub fn count_by_diagonal(alpha: &Composition, p: u64, cfg: &EnumConfig) -> Result<u64> {
    require_prime(p)?;
    let diag = irreducible_diagonal(alpha);
    Ok(search_diagonals(p, vec![diag], Entries::MultiplesOfP, cfg, false)?.0)
}

/// The irreducible subring matrices with diagonal `α`.
pub fn irreducible_matrices(alpha: &Composition, p: u64, cfg: &EnumConfig) -> Result<Vec<HnfMatrix>> {
    require_prime(p)?;
    let diag = irreducible_diagonal(alpha);
    Ok(search_diagonals(p, vec![diag], Entries::MultiplesOfP, cfg, true)?.1)
}

/// `g_n(p^e)`: the sum of `g_α(p)` over compositions of `e` into `n - 1` parts.
pub fn count_irreducible(n: usize, e: usize, p: u64, cfg: &EnumConfig) -> Result<u64> {
    require_prime(p)?;
    if n < 2 {
        return Err(Error::domain("count_irreducible needs n >= 2"));
    }
    let diagonals: Vec<Vec<u32>> = compositions(n, e).map(|a| irreducible_diagonal(&a)).collect();
    Ok(search_diagonals(p, diagonals, Entries::MultiplesOfP, cfg, false)?.0)
}

/// Result of the unpruned oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnprunedCount {
    pub count: u64,
    pub candidates: u64,
}

/// Counts subring matrices by testing every HNF matrix of determinant `p^e`
/// against the full definition, with no pruning at all. Fails with a
/// resource error when there are more than `max_candidates` matrices.
pub fn count_subrings_unpruned(n: usize, e: usize, p: u64, max_candidates: u64) -> Result<UnprunedCount> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::domain("count_subrings_unpruned needs n >= 1"));
    }
    let mut count = 0;
    let mut candidates = 0u64;
    for diag in weak_compositions(e, n) {
        let diag: Vec<u32> = diag.into_iter().map(|x| x as u32).collect();
        let slots: Vec<(usize, usize, u128)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| (i, j, (p as u128).pow(diag[i])))
            .collect();
        let mut rows: Vec<Vec<u128>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { (p as u128).pow(diag[i]) } else { 0 }).collect())
            .collect();
        let mut digits = vec![0u128; slots.len()];
        loop {
            candidates += 1;
            if candidates > max_candidates {
                return Err(Error::ResourceLimit {
                    budget: max_candidates,
                    visited: candidates,
                    progress: format!("unpruned oracle stopped with partial count {count}"),
                });
            }
            for (k, &(i, j, _)) in slots.iter().enumerate() {
                rows[i][j] = digits[k];
            }
            let m = HnfMatrix::new(p, diag.clone(), rows.clone())?;
            if m.identity_in_span() && m.is_closed_full() {
                count += 1;
            }
            // odometer step
            let mut k = 0;
            while k < slots.len() {
                digits[k] += 1;
                if digits[k] < slots[k].2 {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == slots.len() {
                break;
            }
        }
    }
    Ok(UnprunedCount { count, candidates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    Subrings,
    Irreducible,
}

/// Shared memo of `(kind, n, e, p)` counts with insert-if-absent semantics.
#[derive(Debug, Default)]
pub struct CountMemo {
    table: Mutex<HashMap<(CountKind, usize, usize, u64), u64>>,
}

impl CountMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, kind: CountKind, n: usize, e: usize, p: u64) -> Option<u64> {
        self.table.lock().unwrap().get(&(kind, n, e, p)).copied()
    }

    /// Stores `value` unless the key is present; returns the stored value.
    pub fn insert_if_absent(&self, kind: CountKind, n: usize, e: usize, p: u64, value: u64) -> u64 {
        *self.table.lock().unwrap().entry((kind, n, e, p)).or_insert(value)
    }

    pub fn count(&self, kind: CountKind, n: usize, e: usize, p: u64, cfg: &EnumConfig) -> Result<u64> {
        if let Some(v) = self.get(kind, n, e, p) {
            return Ok(v);
        }
        let v = match kind {
            CountKind::Subrings => count_subrings(n, e, p, cfg)?,
            CountKind::Irreducible => count_irreducible(n, e, p, cfg)?,
        };
        Ok(self.insert_if_absent(kind, n, e, p, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EnumConfig {
        EnumConfig::default()
    }

    fn alpha(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rank_two_has_one_subring_per_index() {
        for p in [2, 3, 5] {
            for e in 0..=8 {
                assert_eq!(count_subrings(2, e, p, &cfg()).unwrap(), 1, "p={p} e={e}");
            }
        }
    }

    #[test]
    fn rank_three_small_indices() {
        // Frozen from the unpruned oracle below.
        assert_eq!(count_subrings(3, 2, 2, &cfg()).unwrap(), 4);
        assert_eq!(count_subrings(3, 3, 2, &cfg()).unwrap(), 6);
        assert_eq!(count_subrings(3, 0, 5, &cfg()).unwrap(), 1);
        assert_eq!(count_subrings(1, 0, 2, &cfg()).unwrap(), 1);
        assert_eq!(count_subrings(1, 3, 2, &cfg()).unwrap(), 0);
    }

    #[test]
    fn pruned_matches_unpruned_oracle() {
        for (n, e_max, p) in [(2, 5, 2), (3, 4, 2), (3, 3, 3), (4, 3, 2), (4, 2, 3), (5, 2, 2)] {
            for e in 0..=e_max {
                let oracle = count_subrings_unpruned(n, e, p, 1_000_000).unwrap();
                assert_eq!(count_subrings(n, e, p, &cfg()).unwrap(), oracle.count, "n={n} e={e} p={p}");
            }
        }
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(count_irreducible(4, 3, 5, &cfg()).unwrap(), 1);
        assert_eq!(count_irreducible(4, 4, 3, &cfg()).unwrap(), 13);
        assert_eq!(count_irreducible(3, 1, 2, &cfg()).unwrap(), 0);
        assert_eq!(count_by_diagonal(&alpha(&[2, 1]), 3, &cfg()).unwrap(), 3);
        assert_eq!(count_by_diagonal(&alpha(&[1, 2]), 3, &cfg()).unwrap(), 1);
        assert_eq!(count_by_diagonal(&alpha(&[1, 1, 1, 1]), 7, &cfg()).unwrap(), 1);
        assert!(count_by_diagonal(&alpha(&[2, 1, 2, 1, 2]), 2, &cfg()).unwrap() >= 8);
    }

    #[test]
    fn prop_4_3_small() {
        for n in 3..=5usize {
            for p in [2u64, 3, 5] {
                assert_eq!(count_irreducible(n, n - 1, p, &cfg()).unwrap(), 1);
                let expect = (p.pow(n as u32 - 1) - 1) / (p - 1);
                assert_eq!(count_irreducible(n, n, p, &cfg()).unwrap(), expect, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn subrings_dominate_irreducibles() {
        for (n, p) in [(3, 2), (3, 3), (4, 2)] {
            for e in 0..=4 {
                assert!(count_subrings(n, e, p, &cfg()).unwrap() >= count_irreducible(n, e, p, &cfg()).unwrap());
            }
        }
    }

    #[test]
    fn accepted_matrices_pass_full_recheck() {
        for (n, e, p) in [(3, 4, 2), (4, 3, 3), (4, 4, 2)] {
            let ms = subring_matrices(n, e, p, &cfg()).unwrap();
            assert_eq!(ms.len() as u64, count_subrings(n, e, p, &cfg()).unwrap());
            for m in &ms {
                assert!(m.identity_in_span() && m.is_closed() && m.is_closed_full(), "{m}");
            }
        }
        for m in irreducible_matrices(&alpha(&[3, 2, 1]), 2, &cfg()).unwrap() {
            assert!(m.is_irreducible() && m.is_closed_full() && m.identity_in_span());
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err = count_subrings(4, 4, 2, &EnumConfig { node_budget: 10, parallel: false }).unwrap_err();
        match err {
            Error::ResourceLimit { budget, visited, .. } => {
                assert_eq!(budget, 10);
                assert!(visited > 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let serial = EnumConfig { parallel: false, ..cfg() };
        assert_eq!(count_subrings(4, 4, 3, &serial).unwrap(), count_subrings(4, 4, 3, &cfg()).unwrap());
    }

    #[test]
    fn memo_inserts_once() {
        let memo = CountMemo::new();
        assert_eq!(memo.count(CountKind::Subrings, 3, 3, 3, &cfg()).unwrap(), 7);
        assert_eq!(memo.insert_if_absent(CountKind::Subrings, 3, 3, 3, 99), 7);
        assert_eq!(memo.get(CountKind::Irreducible, 3, 3, 3), None);
    }

    #[test]
    fn non_prime_rejected() {
        assert!(count_subrings(3, 2, 4, &cfg()).is_err());
    }
}
