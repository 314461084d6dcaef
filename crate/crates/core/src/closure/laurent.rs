//! Multivariate polynomials in the entry variables whose coefficients are
//! integers times integer powers of the symbol `p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An off-diagonal entry variable `a_ij` (1-based), primed once per
/// rescaling `a -> p^k a'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub row: usize,
    pub col: usize,
    pub primes: u32,
}

impl Var {
    pub fn new(row: usize, col: usize) -> Self {
        Var { row, col, primes: 0 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "a_{}{}", self.row, self.col)?;
        } else {
            write!(f, "a_{},{}", self.row, self.col)?;
        }
        for _ in 0..self.primes {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// Product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, k)| k).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, k) in &rhs.0 {
            *out.entry(v).or_insert(0) += k;
        }
        Monomial(out.into_iter().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, k)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *k == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{k}")?;
            }
        }
        Ok(())
    }
}

/// `sum c * p^k * m` over monomials `m`, with `k` any integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<(Monomial, i32), BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c.into(), 0, Monomial::one())
    }

    /// `c * p^k * m`
    pub fn term(c: BigInt, k: i32, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, k), c);
        }
        LaurentPoly { terms }
    }

    /// `p^k * v`
    pub fn scaled_var(v: Var, k: i32) -> Self {
        Self::term(BigInt::one(), k, Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i32, &BigInt)> {
        self.terms.iter().map(|((m, k), c)| (m, *k, c))
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|(m, _)| m.0.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Smallest power of `p` among the terms; zero for the zero polynomial.
    pub fn min_p_exponent(&self) -> i32 {
        self.terms.keys().map(|(_, k)| *k).min().unwrap_or(0)
    }

    fn insert(&mut self, key: (Monomial, i32), c: BigInt) {
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.insert(key.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.insert(key.clone(), -c);
        }
        out
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((ma, ka), ca) in &self.terms {
            for ((mb, kb), cb) in &rhs.terms {
                out.insert((ma.mul(mb), ka + kb), ca * cb);
            }
        }
        out
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i32) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|((m, e), c)| ((m.clone(), e + k), c.clone())).collect() }
    }

    /// Keeps the terms whose power of `p` is below `k`.
    pub fn below(&self, k: i32) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().filter(|((_, e), _)| *e < k).map(|(a, b)| (a.clone(), b.clone())).collect() }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    /// Terms in display order: higher total degree first, then by monomial,
    /// then by power of `p`.
    fn ordered(&self) -> Vec<(&Monomial, i32, &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)).then_with(|| a.1.cmp(&b.1)));
        v
    }

    /// The sign that makes the first displayed coefficient positive.
    pub fn normalized_sign(&self) -> LaurentPoly {
        match self.ordered().first() {
            Some((_, _, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, k, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (k == 0 && m.0.is_empty()) {
                parts.push(mag.to_string());
            }
            match k {
                0 => {}
                1 => parts.push("p".into()),
                _ => parts.push(format!("p^{k}")),
            }
            if !m.0.is_empty() {
                parts.push(m.to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::scaled_var(Var::new(i, j), 0)
    }

    #[test]
    fn arithmetic_and_display() {
        let x = a(1, 3);
        let sq = x.mul(&x).sub(&x);
        assert_eq!(sq.to_string(), "a_13^2 - a_13");
        let y = a(1, 2).shift(-2).mul(&LaurentPoly::constant(3));
        assert_eq!(y.to_string(), "3*p^-2*a_12");
        assert_eq!(y.min_p_exponent(), -2);
        assert!(x.sub(&x).is_zero());
        assert_eq!(LaurentPoly::constant(-1).to_string(), "-1");
    }

    #[test]
    fn primed_variables_sort_after_plain() {
        let v = Var { row: 1, col: 2, primes: 1 };
        assert_eq!(v.to_string(), "a_12'");
        assert!(Var::new(1, 2) < v);
        let p = a(2, 3).add(&LaurentPoly::scaled_var(v, 0));
        assert_eq!(p.variables(), vec![v, Var::new(2, 3)]);
    }

    #[test]
    fn sign_normalization() {
        let p = a(1, 3).neg().add(&LaurentPoly::constant(1));
        assert_eq!(p.normalized_sign().to_string(), "a_13 - 1");
    }
}
