//! Univariate integer polynomials in the symbol `p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A polynomial in `p` with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `p^i`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<BigInt>", from = "Vec<BigInt>")]
pub struct PolyP {
    coeffs: Vec<BigInt>,
}

impl From<PolyP> for Vec<BigInt> {
    fn from(p: PolyP) -> Self {
        p.coeffs
    }
}

impl From<Vec<BigInt>> for PolyP {
    fn from(coeffs: Vec<BigInt>) -> Self {
        PolyP::new(coeffs)
    }
}

impl PolyP {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyP { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyP { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * p^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `p^k`
    pub fn p_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, p: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * p + c)
    }

    pub fn eval_u64(&self, p: u64) -> BigInt {
        self.eval(&BigInt::from(p))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyP { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder by a divisor whose leading coefficient divides
    /// every intermediate leading term. Returns `None` if some intermediate
    /// division is not exact in the integers.
    pub fn div_rem(&self, divisor: &PolyP) -> Option<(PolyP, PolyP)> {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((PolyP::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        Some((PolyP::new(quot), PolyP::new(rem)))
    }

    /// Exact division. Panics if `divisor` does not divide `self`: every
    /// caller divides by a known factor, so a remainder means a logic error.
    pub fn div_exact(&self, divisor: &PolyP) -> PolyP {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => q,
            _ => panic!("inexact polynomial division: ({self}) / ({divisor})"),
        }
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for PolyP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "p")?,
                1 => write!(f, "{mag}*p")?,
                _ if unit => write!(f, "p^{i}")?,
                _ => write!(f, "{mag}*p^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyP {
    type Output = PolyP;
    fn add(self, rhs: &PolyP) -> PolyP {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyP::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyP {
    type Output = PolyP;
    fn sub(self, rhs: &PolyP) -> PolyP {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyP::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyP {
    type Output = PolyP;
    fn mul(self, rhs: &PolyP) -> PolyP {
        if self.is_zero() || rhs.is_zero() {
            return PolyP::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyP::new(out)
    }
}

impl Neg for &PolyP {
    type Output = PolyP;
    fn neg(self) -> PolyP {
        PolyP::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyP {
            type Output = PolyP;
            fn $m(self, rhs: PolyP) -> PolyP {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = PolyP::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(PolyP::from_i64s(&[0, 0]).degree(), None);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(PolyP::from_i64s(&[1, 1, 2, 1, 1]).to_string(), "p^4 + p^3 + 2*p^2 + p + 1");
        assert_eq!(PolyP::from_i64s(&[-3, 4]).to_string(), "4*p - 3");
        assert_eq!(PolyP::from_i64s(&[0, -1]).to_string(), "-p");
        assert_eq!(PolyP::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        // (p^3 - 1) / (p - 1) = p^2 + p + 1
        let q = PolyP::from_i64s(&[-1, 0, 0, 1]).div_exact(&PolyP::from_i64s(&[-1, 1]));
        assert_eq!(q, PolyP::from_i64s(&[1, 1, 1]));
        let (_, r) = PolyP::from_i64s(&[1, 0, 1]).div_rem(&PolyP::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(r, PolyP::from_i64s(&[2]));
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        PolyP::from_i64s(&[1, 0, 1]).div_exact(&PolyP::from_i64s(&[-1, 1]));
    }

    #[test]
    fn eval_and_pow() {
        let p = PolyP::from_i64s(&[1, 1]);
        assert_eq!(p.pow(3).eval_u64(2), BigInt::from(27));
        assert_eq!(PolyP::p_pow(5).eval_u64(3), BigInt::from(243));
    }
}
