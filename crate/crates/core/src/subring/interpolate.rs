//! Polynomial fits of counts across primes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::PolyP;
use crate::error::{Error, Result};
use crate::subring::enumerate::{count_irreducible, count_subrings, CountKind, EnumConfig};
use crate::subring::hnf::require_prime;

/// Why a fit was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconsistencyReport {
    pub prime: u64,
    pub observed: BigInt,
    /// Value of the fitted interpolant at `prime`, as a reduced fraction.
    pub predicted: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interpolation {
    Fit(PolyP),
    Inconsistent(InconsistencyReport),
}

impl Interpolation {
    pub fn polynomial(&self) -> Option<&PolyP> {
        match self {
            Interpolation::Fit(p) => Some(p),
            Interpolation::Inconsistent(_) => None,
        }
    }
}

/// Newton interpolation through the points, expanded to monomial form.
fn newton_fit(points: &[(u64, BigInt)]) -> Vec<BigRational> {
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from_integer(BigInt::from(*x))).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| BigRational::from_integer(y.clone())).collect();
    let k = dd.len();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton basis: c_{k-1}, then (acc)(x - x_i) + c_i.
    let mut coeffs = vec![BigRational::zero(); k.max(1)];
    for i in (0..k).rev() {
        let mut next = vec![BigRational::zero(); k.max(1)];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

fn eval_rational(coeffs: &[BigRational], x: u64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Fits a polynomial of degree at most `degree_cap` through the first
/// `degree_cap + 1` points and checks it at every remaining point.
pub fn interpolate_points(points: &[(u64, BigInt)], degree_cap: usize) -> Result<Interpolation> {
    if points.len() < degree_cap + 2 {
        return Err(Error::domain(format!(
            "a degree-{degree_cap} fit needs at least {} points, got {}",
            degree_cap + 2,
            points.len()
        )));
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::domain(format!("repeated abscissa {x}")));
        }
    }
    let coeffs = newton_fit(&points[..=degree_cap]);
    for (x, y) in &points[degree_cap + 1..] {
        let v = eval_rational(&coeffs, *x);
        if v != BigRational::from_integer(y.clone()) {
            return Ok(Interpolation::Inconsistent(InconsistencyReport {
                prime: *x,
                observed: y.clone(),
                predicted: v.to_string(),
                reason: "held-out value differs from the interpolant".into(),
            }));
        }
    }
    if let Some(c) = coeffs.iter().find(|c| !c.is_integer()) {
        let (x, y) = points.last().unwrap();
        return Ok(Interpolation::Inconsistent(InconsistencyReport {
            prime: *x,
            observed: y.clone(),
            predicted: eval_rational(&coeffs, *x).to_string(),
            reason: format!("interpolant has non-integral coefficient {c}"),
        }));
    }
    let ints = coeffs.into_iter().map(|c| c.to_integer()).collect();
    Ok(Interpolation::Fit(PolyP::new(ints)))
}

/// Counts at each prime, then [`interpolate_points`].
pub fn interpolate_count(
    kind: CountKind,
    n: usize,
    e: usize,
    primes: &[u64],
    degree_cap: usize,
    cfg: &EnumConfig,
) -> Result<Interpolation> {
    if primes.len() < degree_cap + 2 {
        return Err(Error::domain(format!(
            "a degree-{degree_cap} fit needs at least {} primes, got {}",
            degree_cap + 2,
            primes.len()
        )));
    }
    let mut points = Vec::with_capacity(primes.len());
    for &p in primes {
        require_prime(p)?;
        let v = match kind {
            CountKind::Subrings => count_subrings(n, e, p, cfg)?,
            CountKind::Irreducible => count_irreducible(n, e, p, cfg)?,
        };
        points.push((p, BigInt::from(v)));
    }
    interpolate_points(&points, degree_cap)
}

/// True if the fitted polynomial has exactly the given degree.
pub fn has_degree(fit: &Interpolation, degree: usize) -> bool {
    fit.polynomial().and_then(PolyP::degree) == Some(degree)
}
