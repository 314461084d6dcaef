//! Symbolic back substitution on the generic irreducible matrix of a given
//! diagonal, producing the integrality conditions as congruences.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, Var};
use crate::algebra::Composition;
use crate::error::{Error, Result};

/// Rescaling `a_ij -> p^power * a_ij'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub row: usize,
    pub col: usize,
    pub power: u32,
}

impl Substitution {
    pub fn new(row: usize, col: usize, power: u32) -> Self {
        Substitution { row, col, power }
    }
}

/// A variable together with its range `[0, p^range_exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarRange {
    pub var: Var,
    pub range_exponent: u32,
}

/// `numerator ≡ 0 (mod p^r)`, arising from row `row` of the solve for the
/// column product `v_i ∘ v_j`, with `source_pair = (i, j)` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceCondition {
    pub numerator: LaurentPoly,
    pub r: u32,
    pub source_pair: (usize, usize),
    pub row: usize,
}

impl fmt::Display for CongruenceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≡ 0 mod p^{}", self.numerator, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSystem {
    pub alpha: Composition,
    pub substitutions: Vec<Substitution>,
    pub variables: Vec<VarRange>,
    pub conditions: Vec<CongruenceCondition>,
}

impl CongruenceSystem {
    /// Canonical text, one condition per line.
    pub fn to_text(&self) -> String {
        self.conditions.iter().map(|c| format!("{c}\n")).collect()
    }
}

/// The generic matrix: entry `(i, j)` of the first `n - 1` columns as a
/// Laurent polynomial, 0-based.
struct GenericMatrix {
    size: usize,
    diag: Vec<u32>,
    entries: Vec<Vec<LaurentPoly>>,
    variables: Vec<VarRange>,
}

fn generic_matrix(alpha: &Composition, substitutions: &[Substitution]) -> Result<GenericMatrix> {
    let diag: Vec<u32> = alpha.parts().iter().map(|&e| e as u32).collect();
    let size = diag.len();
    for (k, s) in substitutions.iter().enumerate() {
        if s.row == 0 || s.row >= s.col || s.col > size {
            return Err(Error::domain(format!("substitution target a_{},{} is not a variable", s.row, s.col)));
        }
        if substitutions[..k].iter().any(|t| (t.row, t.col) == (s.row, s.col)) {
            return Err(Error::domain(format!("a_{},{} is substituted twice", s.row, s.col)));
        }
    }
    let mut entries = vec![vec![LaurentPoly::zero(); size]; size];
    let mut variables = Vec::new();
    for i in 0..size {
        entries[i][i] = LaurentPoly::term(1.into(), diag[i] as i32, Default::default());
        for j in i + 1..size {
            let sub = substitutions.iter().find(|s| (s.row, s.col) == (i + 1, j + 1));
            let power = sub.map_or(0, |s| s.power);
            let range_exponent = (diag[i] - 1).saturating_sub(power);
            if range_exponent == 0 {
                continue;
            }
            let var = Var { row: i + 1, col: j + 1, primes: u32::from(sub.is_some()) };
            entries[i][j] = LaurentPoly::scaled_var(var, 1 + power as i32);
            variables.push(VarRange { var, range_exponent });
        }
    }
    variables.sort_by_key(|v| v.var);
    Ok(GenericMatrix { size, diag, entries, variables })
}

/// Solves the leading `(i+1) x (i+1)` system against `v_i ∘ v_j` and emits
/// one condition per non-integral coordinate.
fn pair_conditions(m: &GenericMatrix, i: usize, j: usize) -> Vec<CongruenceCondition> {
    let rhs: Vec<LaurentPoly> = (0..=i).map(|r| m.entries[r][i].mul(&m.entries[r][j])).collect();
    let mut x = vec![LaurentPoly::zero(); i + 1];
    for c in (0..=i).rev() {
        let mut acc = rhs[c].clone();
        for k in c + 1..=i {
            acc = acc.sub(&m.entries[c][k].mul(&x[k]));
        }
        x[c] = acc.shift(-(m.diag[c] as i32));
    }
    let mut out = Vec::new();
    for (c, xc) in x.iter().enumerate() {
        let low = xc.min_p_exponent();
        if low >= 0 {
            continue;
        }
        let r = (-low) as u32;
        let numerator = xc.below(0).shift(r as i32).normalized_sign();
        out.push(CongruenceCondition { numerator, r, source_pair: (i + 1, j + 1), row: c + 1 });
    }
    out
}

/// Integrality conditions for irreducible matrices with diagonal `α`.
///
/// Pairs involving the all-ones last column are always closed and produce
/// nothing; conditions are ordered by pair, then by row.
pub fn extract_conditions(alpha: &Composition, substitutions: &[Substitution]) -> Result<CongruenceSystem> {
    let m = generic_matrix(alpha, substitutions)?;
    let mut conditions = Vec::new();
    for j in 0..m.size {
        for i in 0..=j {
            conditions.extend(pair_conditions(&m, i, j));
        }
    }
    Ok(CongruenceSystem { alpha: alpha.clone(), substitutions: substitutions.to_vec(), variables: m.variables, conditions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn all_ones_diagonal_has_no_conditions() {
        let sys = extract_conditions(&alpha(&[1, 1, 1, 1]), &[]).unwrap();
        assert!(sys.conditions.is_empty());
        assert!(sys.variables.is_empty());
    }

    #[test]
    fn rank_three_diagonal_two_one() {
        // The only variable is a_12 in [0, p) and every pair solves exactly,
        // so the count is the full box p.
        let sys = extract_conditions(&alpha(&[2, 1]), &[]).unwrap();
        assert_eq!(sys.variables.len(), 1);
        assert!(sys.conditions.is_empty());
    }

    #[test]
    fn canonical_text_is_stable() {
        let a = extract_conditions(&alpha(&[3, 2, 1, 1]), &[Substitution::new(1, 2, 1)]).unwrap();
        let b = extract_conditions(&alpha(&[3, 2, 1, 1]), &[Substitution::new(1, 2, 1)]).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert!(a.variables.iter().any(|v| v.var.primes == 1 && v.range_exponent == 1));
    }

    #[test]
    fn bad_substitutions_rejected() {
        assert!(extract_conditions(&alpha(&[2, 2]), &[Substitution::new(2, 1, 1)]).is_err());
        assert!(extract_conditions(&alpha(&[2, 2]), &[Substitution::new(1, 2, 1), Substitution::new(1, 2, 1)]).is_err());
    }
}
