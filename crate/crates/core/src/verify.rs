//! The acceptance suite as library code, shared by the integration test and
//! the `verify` command. Every check compares a fast or closed-form answer
//! with an independent one and reports each disagreement with its inputs.

use std::fmt::Debug;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{compositions, Composition, PolyP};
use crate::bounds::{
    bound_b_exponent, c7, cap_value, minorant_divergence, minorant_divergence_exact, minorant_exponent, order_exponents,
    BOUNDARY_TOLERANCE,
};
use crate::closure::{count_solutions, extract_conditions, Substitution};
use crate::error::{Error, Result};
use crate::paths::{family_compositions, family_count, family_matrices, path_area_identity_check};
use crate::subgroups::{bound_h_exponent, brute_force_subgroups, count_subgroups_of_order, sandwich_subring_audit, SubgroupCountQuery};
use crate::subring::{
    count_by_diagonal, count_irreducible, count_subrings, has_degree, interpolate_count, recurrence_f, CountKind,
    EnumConfig, RecurrenceConvention,
};
use crate::zeta::{local_coefficients, table1};

pub const CHECK_COUNT: usize = 14;

/// Subgroup-count cases predicted to exceed this many subgroups are not
/// enumerated and count as failures. Enumeration runs at roughly 2e7
/// subgroups per second on one core; the largest case in range has about
/// 2.3e11.
pub const ENUMERATION_CASE_LIMIT: u64 = 200_000_000;

const TITLES: [&str; CHECK_COUNT] = [
    "rank two has a single subring of each index",
    "rank three counts match the local factor",
    "rank four counts match the local factor",
    "irreducible counts at e = n-1 and e = n",
    "g_4(p^5) is a degree-two polynomial",
    "two-valued families have area-power size and are closed",
    "path areas sum to the Gaussian binomial",
    "subgroup count formula matches lattice enumeration",
    "sandwich subgroups are subrings with the right counts",
    "comparison table reproduces the printed exponents",
    "h and b stay below the quadratic cap",
    "closure conditions count the irreducible matrices",
    "recurrence reproduces the enumeration",
    "minorant divergence boundary",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    /// Cases compared.
    pub cases: usize,
    /// One line per disagreement: location, inputs, expected and actual.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl CheckReport {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut out = format!("{status} {:>2} {} [{} cases, {:.2}s]", self.id, self.title, self.cases, self.seconds);
        for f in self.failures.iter().take(5) {
            out.push_str(&format!("\n     mismatch: {f}"));
        }
        if self.failures.len() > 5 {
            out.push_str(&format!("\n     ... {} more", self.failures.len() - 5));
        }
        for n in &self.notes {
            out.push_str(&format!("\n     note: {n}"));
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn eq<T: PartialEq + Debug>(&mut self, site: impl FnOnce() -> String, expected: T, actual: T) {
        self.cases += 1;
        if expected != actual {
            self.failures.push(format!("{}: expected {expected:?}, got {actual:?}", site()));
        }
    }

    fn holds(&mut self, site: impl FnOnce() -> String, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(site());
        }
    }
}

fn int(x: u64) -> BigInt {
    BigInt::from(x)
}

fn check_rank_two(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    for p in [2, 3, 5] {
        for e in 0..=8 {
            t.eq(|| format!("subring::count_subrings(n=2, e={e}, p={p})"), 1, count_subrings(2, e, p, cfg)?);
        }
    }
    Ok(())
}

fn check_local_factor(n: usize, max_e: usize, primes: &[u64], cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    let coeffs = local_coefficients(n, max_e)?;
    for &p in primes {
        for (e, c) in coeffs.iter().enumerate() {
            t.eq(
                || format!("subring::count_subrings(n={n}, e={e}, p={p}) vs zeta::local_coefficients({n})[{e}] = {c}"),
                c.eval_u64(p),
                int(count_subrings(n, e, p, cfg)?),
            );
        }
    }
    Ok(())
}

fn check_rank_three(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    check_local_factor(3, 5, &[2, 3], cfg, t)?;
    // The value list quoted alongside this criterion (1, 3, 5, 7+p, 9+3p,
    // 11+5p) comes from a single ζ(2s) factor; enumeration rules it out.
    let listed: Vec<PolyP> = [[1, 0], [3, 0], [5, 0], [7, 1], [9, 3], [11, 5]].iter().map(|v| PolyP::from_i64s(v)).collect();
    let mut refuted = Vec::new();
    for (e, c) in listed.iter().enumerate() {
        for p in [2, 3] {
            if c.eval_u64(p) != int(count_subrings(3, e, p, cfg)?) {
                refuted.push(format!("e={e} p={p}"));
            }
        }
    }
    if !refuted.is_empty() {
        t.notes.push(format!(
            "the listed values 1, 3, 5, 7+p, 9+3p, 11+5p disagree with enumeration at {}; enumeration gives 1, 3, 4, 4+p, 4+3p, 4+4p",
            refuted.join(", ")
        ));
    }
    Ok(())
}

fn check_rank_four(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    check_local_factor(4, 4, &[2], cfg, t)?;
    t.eq(|| "zeta::local_coefficients(4)[1]".into(), PolyP::from_i64s(&[6]), local_coefficients(4, 1)?[1].clone());
    Ok(())
}

fn check_irreducible_edges(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    for n in 3..=5 {
        for p in [2u64, 3, 5] {
            t.eq(|| format!("subring::count_irreducible(n={n}, e={}, p={p})", n - 1), 1, count_irreducible(n, n - 1, p, cfg)?);
            let want = (p.pow(n as u32 - 1) - 1) / (p - 1);
            t.eq(|| format!("subring::count_irreducible(n={n}, e={n}, p={p})"), want, count_irreducible(n, n, p, cfg)?);
        }
    }
    Ok(())
}

fn check_degree_two(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    let fit = interpolate_count(CountKind::Irreducible, 4, 5, &[2, 3, 5, 7], 2, cfg)?;
    t.holds(|| format!("subring::interpolate_count(g, n=4, e=5, primes=2,3,5,7, cap=2): {fit:?} is not a degree-2 fit"), has_degree(&fit, 2));
    if let Some(poly) = fit.polynomial() {
        t.notes.push(format!("g_4(p^5) = {poly}"));
    }
    Ok(())
}

fn check_families(t: &mut Tally) -> Result<()> {
    for n in 2..=5 {
        for k in 1usize..=4 {
            for l in k.div_ceil(2)..=4 {
                if l == k {
                    continue;
                }
                for d in 0..n {
                    for alpha in family_compositions(n, d, k, l)? {
                        let size = family_count(&alpha, k, l)?;
                        for p in [2u64, 3] {
                            let mut members = 0u64;
                            let mut open = 0u64;
                            for m in family_matrices(&alpha, k, l, p)? {
                                members += 1;
                                if !(m.is_closed() && m.is_irreducible()) {
                                    open += 1;
                                }
                            }
                            let site = || format!("paths::family_matrices(alpha={alpha}, k={k}, l={l}, p={p})");
                            t.eq(site, size.eval_u64(p), int(members));
                            t.eq(|| format!("{} members failing closure", site()), 0, open);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_path_identity(t: &mut Tally) -> Result<()> {
    for u in 0..=8 {
        for v in 0..=8 - u {
            for q in [2, 3, 5] {
                t.holds(|| format!("paths::path_area_identity_check(u={u}, v={v}, q={q}) returned false"), path_area_identity_check(u, v, q)?);
            }
        }
    }
    Ok(())
}

fn check_subgroup_formula(t: &mut Tally) -> Result<()> {
    for p in [2u64, 3] {
        for n in 2.. {
            if p.pow(n as u32 - 1) > 4096 {
                break;
            }
            for tt in 1.. {
                match p.checked_pow((tt * (n - 1)) as u32) {
                    Some(order) if order <= 4096 => {}
                    _ => break,
                }
                for k in 0..=tt * (n - 1) {
                    let formula = count_subgroups_of_order(&SubgroupCountQuery::new(n, tt, k)?)?.eval_u64(p);
                    let site = || format!("subgroups::count_subgroups_of_order(n={n}, t={tt}, k={k}) at p={p}");
                    if formula > int(ENUMERATION_CASE_LIMIT) {
                        t.holds(|| format!("{}: not enumerated, {formula} subgroups is beyond the enumeration limit", site()), false);
                        continue;
                    }
                    match brute_force_subgroups(n, tt, k, p) {
                        Ok(brute) => t.eq(site, int(brute), formula),
                        Err(e @ Error::ResourceLimit { .. }) => t.holds(|| format!("{}: no brute-force value ({e})", site()), false),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_sandwich(t: &mut Tally) -> Result<()> {
    for (m, p, s) in [(2u64, 2u64, 1usize), (3, 3, 1), (4, 2, 2)] {
        for n in 3..=4 {
            let audit = sandwich_subring_audit(n, m)?;
            t.eq(|| format!("subgroups::sandwich_subring_audit(n={n}, m={m}) violations"), 0, audit.total_violations());
            for j in 0..=s * (n - 1) {
                let want = count_subgroups_of_order(&SubgroupCountQuery::new(n, s, j)?)?.eval_u64(p);
                t.eq(
                    || format!("subgroups::sandwich_subring_audit(n={n}, m={m}) at index {m}^{}*{p}^{j}", n - 1),
                    want,
                    int(audit.count_at_offset(j as u32)),
                );
            }
        }
    }
    Ok(())
}

fn check_table(t: &mut Tally) -> Result<()> {
    let rows = table1()?;
    for r in &rows {
        let expect_match = (r.n, r.e) != (6, 30);
        t.eq(|| format!("zeta::table1 row ({}, {}) match flag", r.n, r.e), expect_match, r.matches());
    }
    if let Some(r) = rows.iter().find(|r| (r.n, r.e) == (6, 30)) {
        t.eq(|| "zeta::table1 row (6, 30) computed (h, b)".into(), (24, 24), (r.h_computed, r.b_computed));
        t.notes.push(format!("row (6, 30): computed ({}, {}), printed ({}, {})", r.h_computed, r.b_computed, r.h_printed, r.b_printed));
    }
    Ok(())
}

fn check_caps(t: &mut Tally) -> Result<()> {
    for n in 2..=50 {
        for e in n - 1..=500 {
            let cap = cap_value(n, e) + 1e-9;
            let h = bound_h_exponent(n, e)?.exponent;
            let b = bound_b_exponent(n, e)?.exponent;
            t.holds(|| format!("subgroups::bound_h_exponent(n={n}, e={e}) = {h} exceeds cap {cap}"), h as f64 <= cap);
            t.holds(|| format!("bounds::bound_b_exponent(n={n}, e={e}) = {b} exceeds cap {cap}"), b as f64 <= cap);
        }
    }
    Ok(())
}

fn check_closure(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    let worked = Composition::new(vec![3, 2, 1, 1])?;
    let mut cases: Vec<(Composition, Vec<Substitution>)> =
        vec![(worked.clone(), vec![]), (worked, vec![Substitution::new(1, 2, 1)])];
    for n in 2..=4 {
        for e in n - 1..=6 {
            cases.extend(compositions(n, e).map(|a| (a, vec![])));
        }
    }
    for (alpha, subs) in &cases {
        let system = extract_conditions(alpha, subs)?;
        for p in [2u64, 3, 5] {
            let want = count_by_diagonal(alpha, p, cfg)?;
            let got = count_solutions(&system, p, cfg.node_budget)?;
            t.eq(|| format!("closure::count_solutions(alpha={alpha}, substitutions={}, p={p})", subs.len()), want, got);
        }
    }
    Ok(())
}

fn check_recurrence(cfg: &EnumConfig, t: &mut Tally) -> Result<()> {
    let conv = RecurrenceConvention::default();
    for n in 1..=4 {
        for e in 0..=4 {
            for p in [2u64, 3] {
                t.eq(
                    || format!("subring::recurrence_f(n={n}, e={e}, p={p}, {conv:?})"),
                    count_subrings(n, e, p, cfg)?,
                    recurrence_f(n, e, p, &conv, cfg)?,
                );
            }
        }
    }
    Ok(())
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn check_divergence(t: &mut Tally) -> Result<()> {
    t.eq(|| "bounds::c7(6)".into(), rat(6, 7), c7(6)?.0);
    t.eq(|| "bounds::c7(10)".into(), rat(20, 13), c7(10)?.0);
    let offsets = [-0.5, -0.1, -1e-3, -1e-9, 0.0, 1e-9, 1e-3, 0.1, 0.5];
    for n in [6usize, 10] {
        let (c, _) = c7(n)?;
        let c_f = c.to_f64().unwrap_or(f64::NAN);
        let half = rat(1, 2);
        let orders = order_exponents(n)?;
        t.eq(|| format!("bounds::order_exponents({n}).order_divergence_c7"), &c * &half, orders.order_divergence_c7);
        for d in 0..n {
            let rate = rat((d * (n - 1 - d)) as i64, (n - 1 + d) as i64);
            let rate_f = rate.to_f64().unwrap_or(f64::NAN);
            // Term ratio recovered from consecutive minorant exponents.
            let step = minorant_exponent(d, 11, n)? - minorant_exponent(d, 10, n)?;
            t.eq(|| format!("bounds::minorant_exponent(d={d}, n={n}) step"), rate.clone(), step.clone());
            for off in offsets {
                let s = c_f + off;
                let log_ratio = step.to_f64().unwrap_or(f64::NAN) - s;
                let diverges = log_ratio >= -BOUNDARY_TOLERANCE;
                let want = s <= rate_f + BOUNDARY_TOLERANCE;
                t.eq(|| format!("term ratio >= 1 at d={d}, n={n}, s={s}"), want, diverges);
                t.eq(|| format!("bounds::minorant_divergence(d={d}, n={n}, s={s})"), want, minorant_divergence(d, n, s)?);
            }
            t.holds(|| format!("bounds::minorant_divergence(d={d}, n={n}) at its own boundary"), minorant_divergence(d, n, rate_f)?);
            let above = &rate + rat(1, 1_000_000_000_000);
            t.eq(|| format!("bounds::minorant_divergence_exact(d={d}, n={n}) at the threshold"), true, minorant_divergence_exact(d, n, &rate)?);
            t.eq(|| format!("bounds::minorant_divergence_exact(d={d}, n={n}) just above"), false, minorant_divergence_exact(d, n, &above)?);
        }
        let diverging = (0..n).filter(|&d| minorant_divergence(d, n, c_f).unwrap_or(false)).count();
        t.holds(|| format!("no minorant diverges at s = c7({n})"), diverging > 0);
    }
    Ok(())
}

/// Runs check `id` (1-based). Library errors, including exhausted node
/// budgets, count as failures.
pub fn run_check(id: usize, cfg: &EnumConfig) -> Result<CheckReport> {
    if !(1..=CHECK_COUNT).contains(&id) {
        return Err(Error::domain(format!("no acceptance check {id}; valid ids are 1..={CHECK_COUNT}")));
    }
    let start = Instant::now();
    let mut t = Tally::default();
    let outcome = match id {
        1 => check_rank_two(cfg, &mut t),
        2 => check_rank_three(cfg, &mut t),
        3 => check_rank_four(cfg, &mut t),
        4 => check_irreducible_edges(cfg, &mut t),
        5 => check_degree_two(cfg, &mut t),
        6 => check_families(&mut t),
        7 => check_path_identity(&mut t),
        8 => check_subgroup_formula(&mut t),
        9 => check_sandwich(&mut t),
        10 => check_table(&mut t),
        11 => check_caps(&mut t),
        12 => check_closure(cfg, &mut t),
        13 => check_recurrence(cfg, &mut t),
        _ => check_divergence(&mut t),
    };
    if let Err(e) = outcome {
        t.failures.push(format!("aborted: {e}"));
    }
    Ok(CheckReport {
        id,
        title: TITLES[id - 1].to_string(),
        passed: t.failures.is_empty(),
        cases: t.cases,
        failures: t.failures,
        notes: t.notes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_all(cfg: &EnumConfig) -> Vec<CheckReport> {
    (1..=CHECK_COUNT).map(|id| run_check(id, cfg).expect("ids are in range")).collect()
}
