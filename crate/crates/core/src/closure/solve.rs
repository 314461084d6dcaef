//! Exhaustive point counting for a [`CongruenceSystem`] at a concrete prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::conditions::CongruenceSystem;
use super::laurent::Var;
use crate::error::{Error, Result};
use crate::subring::hnf::{modulus, require_prime, HnfMatrix};

struct Compiled {
    modulus: u128,
    terms: Vec<(u128, Vec<(usize, u32)>)>,
    /// Number of leading variables that must be assigned before testing.
    ready_at: usize,
}

fn pow_mod(mut b: u128, mut e: u32, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Compiled {
    fn holds(&self, values: &[u128]) -> bool {
        let m = self.modulus;
        let mut acc = 0u128;
        for (c, mono) in &self.terms {
            let mut t = *c;
            for &(v, k) in mono {
                t = t * pow_mod(values[v], k, m) % m;
            }
            acc = (acc + t) % m;
        }
        acc == 0
    }
}

struct Prepared {
    p: u128,
    vars: Vec<Var>,
    /// Residues tested per variable: `p^tested[v]`.
    tested: Vec<u32>,
    free_exponent: u32,
    by_depth: Vec<Vec<Compiled>>,
}

fn prepare(system: &CongruenceSystem, p: u64) -> Result<Prepared> {
    require_prime(p)?;
    let vars: Vec<Var> = system.variables.iter().map(|v| v.var).collect();
    let index = |v: &Var| {
        vars.iter()
            .position(|w| w == v)
            .ok_or_else(|| Error::domain(format!("condition mentions unknown variable {v}")))
    };
    let mut need = vec![0u32; vars.len()];
    let mut by_depth: Vec<Vec<Compiled>> = (0..=vars.len()).map(|_| Vec::new()).collect();
    for cond in &system.conditions {
        let m = modulus(p, cond.r)?;
        let mb = BigInt::from(m);
        let mut terms = Vec::new();
        let mut ready_at = 0;
        for (mono, k, c) in cond.numerator.terms() {
            let k = u32::try_from(k).map_err(|_| Error::domain("numerator has a negative power of p"))?;
            let c = (c.mod_floor(&mb)).to_u128().unwrap();
            let c = c * pow_mod(p as u128, k, m) % m;
            let mut factors = Vec::new();
            for &(v, e) in mono.factors() {
                let i = index(&v)?;
                need[i] = need[i].max(cond.r);
                ready_at = ready_at.max(i + 1);
                factors.push((i, e));
            }
            terms.push((c, factors));
        }
        by_depth[ready_at].push(Compiled { modulus: m, terms, ready_at });
    }
    let mut tested = Vec::with_capacity(vars.len());
    let mut free_exponent = 0;
    for (vr, &n) in system.variables.iter().zip(&need) {
        let t = vr.range_exponent.min(n);
        free_exponent += vr.range_exponent - t;
        modulus(p, t)?;
        tested.push(t);
    }
    Ok(Prepared { p: p as u128, vars, tested, free_exponent, by_depth })
}

struct Walker<'a, F> {
    prep: &'a Prepared,
    values: Vec<u128>,
    budget: u64,
    visited: u64,
    found: u64,
    visit: F,
}

impl<F: FnMut(&[(Var, u128)])> Walker<'_, F> {
    fn dfs(&mut self, depth: usize) -> Result<()> {
        if !self.prep.by_depth[depth].iter().all(|c| c.holds(&self.values)) {
            return Ok(());
        }
        if depth == self.prep.vars.len() {
            self.found += 1;
            let assignment: Vec<(Var, u128)> = self.prep.vars.iter().copied().zip(self.values.iter().copied()).collect();
            (self.visit)(&assignment);
            return Ok(());
        }
        let count = self.prep.p.pow(self.prep.tested[depth]);
        for v in 0..count {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::ResourceLimit {
                    budget: self.budget,
                    visited: self.visited,
                    progress: format!("{} reduced solutions found so far", self.found),
                });
            }
            self.values[depth] = v;
            self.dfs(depth + 1)?;
        }
        self.values[depth] = 0;
        Ok(())
    }
}

/// Calls `visit` once per solution with every variable reduced modulo the
/// largest modulus it is tested against. Returns the free-range exponent:
/// each reduced solution stands for `p^free` solutions in the full box.
pub fn for_each_solution(
    system: &CongruenceSystem,
    p: u64,
    budget: u64,
    visit: impl FnMut(&[(Var, u128)]),
) -> Result<u32> {
    let prep = prepare(system, p)?;
    debug_assert!(prep.by_depth.iter().flatten().all(|c| c.ready_at <= prep.vars.len()));
    let mut w = Walker { values: vec![0; prep.vars.len()], prep: &prep, budget, visited: 0, found: 0, visit };
    w.dfs(0)?;
    Ok(prep.free_exponent)
}

/// Number of points of the full variable box satisfying every condition.
pub fn count_solutions(system: &CongruenceSystem, p: u64, budget: u64) -> Result<u64> {
    let mut reduced = 0u64;
    let free = for_each_solution(system, p, budget, |_| reduced += 1)?;
    p.checked_pow(free)
        .and_then(|f| f.checked_mul(reduced))
        .ok_or_else(|| Error::domain("solution count exceeds 64 bits"))
}

/// The irreducible matrix obtained by plugging `assignment` into the generic
/// matrix of `system`. Variables absent from `assignment` are zero.
pub fn solution_matrix(system: &CongruenceSystem, p: u64, assignment: &[(Var, u128)]) -> Result<HnfMatrix> {
    let diag: Vec<u32> = system.alpha.parts().iter().map(|&e| e as u32).collect();
    let n = diag.len() + 1;
    let mut rows = vec![vec![0u128; n]; n];
    for i in 0..n {
        rows[i][n - 1] = 1;
        if i + 1 < n {
            rows[i][i] = modulus(p, diag[i])?;
        }
    }
    for &(v, value) in assignment {
        let power = system
            .substitutions
            .iter()
            .find(|s| (s.row, s.col) == (v.row, v.col))
            .map_or(0, |s| s.power);
        let d = rows[v.row - 1][v.row - 1];
        rows[v.row - 1][v.col - 1] = (value * modulus(p, 1 + power)?) % d;
    }
    let mut exps = diag;
    exps.push(0);
    HnfMatrix::new(p, exps, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Composition;
    use crate::closure::conditions::{extract_conditions, Substitution};
    use crate::subring::{count_by_diagonal, EnumConfig};

    const BUDGET: u64 = 50_000_000;

    fn alpha(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn matches_enumerator_for_worked_example() {
        let a = alpha(&[3, 2, 1, 1]);
        let sys = extract_conditions(&a, &[]).unwrap();
        let sub = extract_conditions(&a, &[Substitution::new(1, 2, 1)]).unwrap();
        for p in [2, 3] {
            let want = count_by_diagonal(&a, p, &EnumConfig::default()).unwrap();
            assert_eq!(count_solutions(&sys, p, BUDGET).unwrap(), want);
            assert_eq!(count_solutions(&sub, p, BUDGET).unwrap(), want);
        }
        assert_eq!(count_solutions(&sys, 2, BUDGET).unwrap(), 88);
        assert_eq!(count_solutions(&sys, 3, BUDGET).unwrap(), 459);
    }

    #[test]
    fn empty_system_counts_the_box() {
        let sys = extract_conditions(&alpha(&[2, 1]), &[]).unwrap();
        assert_eq!(count_solutions(&sys, 3, BUDGET).unwrap(), 3);
    }

    #[test]
    fn two_two_matches_enumerator() {
        let a = alpha(&[2, 2]);
        let sys = extract_conditions(&a, &[]).unwrap();
        for p in [2, 3, 5] {
            assert_eq!(count_solutions(&sys, p, BUDGET).unwrap(), count_by_diagonal(&a, p, &EnumConfig::default()).unwrap());
        }
    }

    #[test]
    fn every_solution_gives_a_subring_matrix() {
        for parts in [&[3, 2, 1][..], &[2, 2, 2], &[2, 3, 1], &[4, 2]] {
            let sys = extract_conditions(&alpha(parts), &[]).unwrap();
            for p in [2, 3] {
                let mut bad = Vec::new();
                let free = for_each_solution(&sys, p, BUDGET, |asg| {
                    let m = solution_matrix(&sys, p, asg).unwrap();
                    if !(m.is_closed_full() && m.identity_in_span() && m.is_irreducible()) {
                        bad.push(m.to_string());
                    }
                })
                .unwrap();
                assert!(bad.is_empty(), "{parts:?} p={p}: {bad:?}");
                let _ = free;
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let sys = extract_conditions(&alpha(&[3, 2, 1, 1]), &[]).unwrap();
        assert!(matches!(count_solutions(&sys, 3, 10), Err(Error::ResourceLimit { .. })));
    }
}
