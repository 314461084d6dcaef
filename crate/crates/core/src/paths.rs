//! North-east lattice paths and the two-valued diagonal families of
//! irreducible subring matrices they count.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{gaussian_binomial, Composition, PolyP};
use crate::error::{Error, Result};
use crate::subring::hnf::{modulus, require_prime, HnfMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    North,
    East,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `(east steps, north steps)`
    pub fn endpoint(&self) -> (usize, usize) {
        let north = self.steps.iter().filter(|s| **s == Step::North).count();
        (self.steps.len() - north, north)
    }

    /// Area under the path: pairs of a north step followed later by an east step.
    pub fn area(&self) -> usize {
        let mut north = 0;
        let mut area = 0;
        for s in &self.steps {
            match s {
                Step::North => north += 1,
                Step::East => area += north,
            }
        }
        area
    }

    /// Every path from `(0, 0)` to `(u, v)`.
    pub fn all(u: usize, v: usize) -> Vec<LatticePath> {
        fn go(u: usize, v: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
            if u == 0 && v == 0 {
                out.push(LatticePath::new(cur.clone()));
                return;
            }
            if v > 0 {
                cur.push(Step::North);
                go(u, v - 1, cur, out);
                cur.pop();
            }
            if u > 0 {
                cur.push(Step::East);
                go(u - 1, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(u, v, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.steps.iter().map(|s| if *s == Step::North { "N" } else { "E" }).collect();
        write!(f, "{}", s.join(","))
    }
}

fn half_up(k: usize) -> usize {
    k.div_ceil(2)
}

fn check_two_valued(alpha: &Composition, k: usize, l: usize) -> Result<()> {
    if k == l {
        return Err(Error::domain("the two diagonal values must differ"));
    }
    if let Some(x) = alpha.parts().iter().find(|&&x| x != k && x != l) {
        return Err(Error::domain(format!("part {x} is neither {k} nor {l}")));
    }
    Ok(())
}

/// North for each part equal to `k`, east for each part equal to `l`.
pub fn path_from_composition(alpha: &Composition, k: usize, l: usize) -> Result<LatticePath> {
    check_two_valued(alpha, k, l)?;
    Ok(LatticePath::new(alpha.parts().iter().map(|&x| if x == k { Step::North } else { Step::East }).collect()))
}

/// Every arrangement of `d` parts equal to `k` and `n - 1 - d` equal to `l`.
pub fn family_compositions(n: usize, d: usize, k: usize, l: usize) -> Result<Vec<Composition>> {
    if n < 2 || d > n - 1 || k == 0 || l == 0 {
        return Err(Error::domain(format!("no family for n={n}, d={d}, k={k}, l={l}")));
    }
    LatticePath::all(n - 1 - d, d)
        .into_iter()
        .map(|path| Composition::new(path.steps().iter().map(|s| if *s == Step::North { k } else { l }).collect()))
        .collect()
}

/// Lazily enumerates the family: entry `(i, j)` runs over the multiples of
/// `p^{ceil(k/2)}` in `[0, p^k)` when `(α_i, α_j) = (k, l)`, every other
/// off-diagonal entry of the first `n - 1` columns is zero, and the last
/// column is all ones.
pub struct FamilyMatrices {
    p: u64,
    diag: Vec<u32>,
    slots: Vec<(usize, usize)>,
    step: u128,
    top: u128,
    rows: Vec<Vec<u128>>,
    done: bool,
}

impl Iterator for FamilyMatrices {
    type Item = HnfMatrix;

    fn next(&mut self) -> Option<HnfMatrix> {
        if self.done {
            return None;
        }
        let out = HnfMatrix::new(self.p, self.diag.clone(), self.rows.clone()).expect("family entries are reduced");
        let mut k = 0;
        while k < self.slots.len() {
            let (i, j) = self.slots[k];
            self.rows[i][j] += self.step;
            if self.rows[i][j] < self.top {
                break;
            }
            self.rows[i][j] = 0;
            k += 1;
        }
        self.done = k == self.slots.len();
        Some(out)
    }
}

pub fn family_matrices(alpha: &Composition, k: usize, l: usize, p: u64) -> Result<FamilyMatrices> {
    require_prime(p)?;
    check_two_valued(alpha, k, l)?;
    if l < half_up(k) {
        return Err(Error::domain(format!("l = {l} is below ceil(k/2) = {}", half_up(k))));
    }
    let parts = alpha.parts();
    let n = parts.len() + 1;
    let mut diag: Vec<u32> = parts.iter().map(|&x| x as u32).collect();
    diag.push(0);
    modulus(p, diag.iter().sum())?;
    let mut rows = vec![vec![0u128; n]; n];
    for i in 0..n {
        rows[i][i] = (p as u128).pow(diag[i]);
        rows[i][n - 1] = 1;
    }
    let slots = (0..n - 1)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| parts[i] == k && parts[j] == l)
        .collect();
    Ok(FamilyMatrices {
        p,
        diag,
        slots,
        step: (p as u128).pow(half_up(k) as u32),
        top: (p as u128).pow(k as u32),
        rows,
        done: false,
    })
}

/// `p^{(k - ceil(k/2)) * Area}` for the path of `α`.
pub fn family_count(alpha: &Composition, k: usize, l: usize) -> Result<PolyP> {
    if l < half_up(k) {
        return Err(Error::domain(format!("l = {l} is below ceil(k/2) = {}", half_up(k))));
    }
    let area = path_from_composition(alpha, k, l)?.area();
    Ok(PolyP::p_pow((k - half_up(k)) * area))
}

/// Checks `sum_P q^{Area(P)} = [u+v, v]_q` over all paths to `(u, v)`.
pub fn path_area_identity_check(u: usize, v: usize, q: u64) -> Result<bool> {
    if u + v > 16 {
        return Err(Error::domain("path identity check is limited to u + v <= 16"));
    }
    let qb = BigInt::from(q);
    let lhs = LatticePath::all(u, v)
        .iter()
        .fold(BigInt::zero(), |acc, path| acc + num_traits::pow(qb.clone(), path.area()));
    Ok(lhs == gaussian_binomial(u + v, v)?.eval(&qb))
}
