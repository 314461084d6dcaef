//! Truncated power series in `x` (standing for `p^{-s}`) with [`PolyP`]
//! coefficients.

use serde::{Deserialize, Serialize};

use super::poly::PolyP;

/// Power series `sum_e c_e x^e` known exactly through `x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSeriesX {
    coeffs: Vec<PolyP>,
}

/// A denominator factor `(1 - c * x^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricFactor {
    pub coeff: PolyP,
    pub step: usize,
}

impl GeometricFactor {
    pub fn new(coeff: PolyP, step: usize) -> Self {
        assert!(step >= 1, "geometric factor needs x-degree at least 1");
        GeometricFactor { coeff, step }
    }
}

impl PowerSeriesX {
    /// Series from leading coefficients; missing terms are zero and extra
    /// terms beyond `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<PolyP>, order: usize) -> Self {
        coeffs.resize(order + 1, PolyP::zero());
        PowerSeriesX { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::from_coeffs(vec![PolyP::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[PolyP] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<PolyP> {
        self.coeffs
    }

    pub fn coeff(&self, e: usize) -> &PolyP {
        &self.coeffs[e]
    }

    pub fn add(&self, rhs: &PowerSeriesX) -> PowerSeriesX {
        let order = self.order().min(rhs.order());
        PowerSeriesX {
            coeffs: (0..=order).map(|e| &self.coeffs[e] + &rhs.coeffs[e]).collect(),
        }
    }

    pub fn mul(&self, rhs: &PowerSeriesX) -> PowerSeriesX {
        let order = self.order().min(rhs.order());
        let mut out = vec![PolyP::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PowerSeriesX { coeffs: out }
    }

    /// Multiply by `(1 - c x^k)`.
    pub fn mul_factor(&self, f: &GeometricFactor) -> PowerSeriesX {
        let mut out = self.coeffs.clone();
        for e in (f.step..out.len()).rev() {
            out[e] = &out[e] - &(&f.coeff * &self.coeffs[e - f.step]);
        }
        PowerSeriesX { coeffs: out }
    }

    /// Divide by `(1 - c x^k)`, a unit of the series ring.
    pub fn div_factor(&self, f: &GeometricFactor) -> PowerSeriesX {
        let mut out = self.coeffs.clone();
        for e in f.step..out.len() {
            let carried = &f.coeff * &out[e - f.step];
            out[e] = &out[e] + &carried;
        }
        PowerSeriesX { coeffs: out }
    }
}

/// Exact coefficients of `numerator / prod (1 - c x^k)` through `x^order`.
pub fn series_expand_rational(
    numerator: &PowerSeriesX,
    denominator_factors: &[GeometricFactor],
    order: usize,
) -> PowerSeriesX {
    let mut s = PowerSeriesX::from_coeffs(numerator.coeffs.clone(), order);
    for f in denominator_factors {
        s = s.div_factor(f);
    }
    s
}
