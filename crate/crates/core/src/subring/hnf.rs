//! Hermite-normal-form matrices of prime-power determinant and the exact
//! span tests behind the subring conditions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

/// `p^e` as `u128`, or a domain error if it does not fit below `2^64`.
///
/// Span tests multiply two reduced residues, so every modulus must stay below
/// `2^64` for the products to fit in `u128`.
pub(crate) fn modulus(p: u64, e: u32) -> Result<u128> {
    let m = (p as u128)
        .checked_pow(e)
        .filter(|&m| m < (1u128 << 64))
        .ok_or_else(|| Error::domain(format!("{p}^{e} exceeds the exact-arithmetic range")))?;
    Ok(m)
}

/// Tests whether `w` lies in the integer span of the first `k` columns of the
/// upper-triangular row-major `n x n` matrix `a`, restricted to rows `0..k`.
///
/// `modulus` must be a multiple of the determinant of the leading `k x k`
/// block; that block's lattice contains `modulus * Z^k`, so reducing `w`
/// modulo it does not change membership. `w` is clobbered.
pub(crate) fn in_leading_span(a: &[u128], n: usize, k: usize, w: &mut [u128], modulus: u128) -> bool {
    for c in (0..k).rev() {
        let d = a[c * n + c];
        let wc = w[c] % modulus;
        if !wc.is_multiple_of(d) {
            return false;
        }
        let q = wc / d;
        if q == 0 {
            continue;
        }
        for r in 0..c {
            let sub = (q * a[r * n + c]) % modulus;
            w[r] = (w[r] % modulus + modulus - sub) % modulus;
        }
    }
    true
}

/// Closure test for the column pair `(i, j)`, `i <= j`: is `v_i ∘ v_j` in the
/// column span? Only the leading `(i+1) x (i+1)` block matters because
/// `v_i` vanishes below row `i`.
pub(crate) fn pair_closed(a: &[u128], n: usize, i: usize, j: usize, moduli: &[u128], w: &mut [u128]) -> bool {
    let m = moduli[i + 1];
    for r in 0..=i {
        w[r] = ((a[r * n + i] % m) * (a[r * n + j] % m)) % m;
    }
    in_leading_span(a, n, i + 1, &mut w[..=i], m)
}

/// `moduli[k] = p^(e_1 + ... + e_k)` for `k = 0..=n`.
pub(crate) fn prefix_moduli(p: u64, diag: &[u32]) -> Result<Vec<u128>> {
    let mut out = Vec::with_capacity(diag.len() + 1);
    let mut acc = 0u32;
    out.push(1);
    for &e in diag {
        acc += e;
        out.push(modulus(p, acc)?);
    }
    Ok(out)
}

/// An upper-triangular integer matrix with diagonal `p^{e_i}` and
/// off-diagonal entries reduced into `[0, p^{e_i})` along each row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HnfMatrix {
    n: usize,
    prime: u64,
    diag_exponents: Vec<u32>,
    entries: Vec<u128>,
}

impl HnfMatrix {
    /// Builds and validates a matrix from its rows.
    pub fn new(prime: u64, diag_exponents: Vec<u32>, rows: Vec<Vec<u128>>) -> Result<Self> {
        require_prime(prime)?;
        let n = diag_exponents.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix shape does not match the diagonal"));
        }
        let total: u32 = diag_exponents.iter().sum();
        modulus(prime, total)?;
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let d = modulus(prime, diag_exponents[i])?;
            for (j, &x) in row.iter().enumerate() {
                if j < i && x != 0 {
                    return Err(Error::domain(format!("entry ({},{}) below the diagonal is nonzero", i + 1, j + 1)));
                }
                if j == i && x != d {
                    return Err(Error::domain(format!("diagonal entry {} is not p^{}", i + 1, diag_exponents[i])));
                }
                if j > i && x >= d {
                    return Err(Error::domain(format!("entry ({},{}) = {x} is not reduced below {d}", i + 1, j + 1)));
                }
            }
            entries.extend_from_slice(row);
        }
        Ok(HnfMatrix { n, prime, diag_exponents, entries })
    }

    /// Internal constructor for already-validated buffers.
    pub(crate) fn from_raw(prime: u64, diag_exponents: Vec<u32>, entries: Vec<u128>) -> Self {
        let n = diag_exponents.len();
        debug_assert_eq!(entries.len(), n * n);
        HnfMatrix { n, prime, diag_exponents, entries }
    }

    pub fn identity(n: usize, prime: u64) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect();
        Self::new(prime, vec![0; n], rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn diag_exponents(&self) -> &[u32] {
        &self.diag_exponents
    }

    /// Entry at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u128 {
        self.entries[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<u128> {
        (0..self.n).map(|i| self.entry(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u128>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Exponent of the determinant `p^{sum e_i}`.
    pub fn index_exponent(&self) -> u32 {
        self.diag_exponents.iter().sum()
    }

    fn moduli(&self) -> Vec<u128> {
        prefix_moduli(self.prime, &self.diag_exponents).expect("validated at construction")
    }

    /// Is the integer vector `v` in the column span?
    pub fn contains(&self, v: &[i128]) -> bool {
        assert_eq!(v.len(), self.n);
        let m = *self.moduli().last().unwrap();
        let mut w: Vec<u128> = v.iter().map(|&x| x.rem_euclid(m as i128) as u128).collect();
        in_leading_span(&self.entries, self.n, self.n, &mut w, m)
    }

    fn contains_residues(&self, mut w: Vec<u128>) -> bool {
        let m = *self.moduli().last().unwrap();
        in_leading_span(&self.entries, self.n, self.n, &mut w, m)
    }

    /// Is `(1, ..., 1)` in the column span?
    pub fn identity_in_span(&self) -> bool {
        self.contains(&vec![1; self.n])
    }

    /// Is `v_i ∘ v_j` in the column span for every pair of columns?
    pub fn is_closed(&self) -> bool {
        let moduli = self.moduli();
        let mut w = vec![0u128; self.n];
        (0..self.n).all(|j| (0..=j).all(|i| pair_closed(&self.entries, self.n, i, j, &moduli, &mut w)))
    }

    /// Same as [`is_closed`](Self::is_closed) but multiplies out every
    /// `v_i ∘ v_j` over the full matrix, without the leading-block shortcut.
    pub fn is_closed_full(&self) -> bool {
        let m = *self.moduli().last().unwrap();
        (0..self.n).all(|j| {
            (0..=j).all(|i| {
                let vi = self.column(i);
                let vj = self.column(j);
                let prod = vi.iter().zip(&vj).map(|(a, b)| ((a % m) * (b % m)) % m).collect();
                self.contains_residues(prod)
            })
        })
    }

    /// Last column all ones, `e_n = 0`, and `p` divides every entry of the
    /// other columns.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        if n == 0 || self.diag_exponents[n - 1] != 0 {
            return false;
        }
        let p = self.prime as u128;
        (0..n).all(|i| self.entry(i, n - 1) == 1)
            && (0..n - 1).all(|j| (0..n).all(|i| self.entry(i, j).is_multiple_of(p)))
    }

    pub fn is_subring_matrix(&self) -> bool {
        self.identity_in_span() && self.is_closed()
    }

    pub fn certificate(&self) -> SubringCertificate {
        let identity_in_span = self.identity_in_span();
        let closed = self.is_closed();
        SubringCertificate {
            matrix: self.clone(),
            identity_in_span,
            closed,
            irreducible: identity_in_span && closed && self.is_irreducible(),
        }
    }
}

impl fmt::Display for HnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of the three subring-matrix tests on one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubringCertificate {
    pub matrix: HnfMatrix,
    pub identity_in_span: bool,
    pub closed: bool,
    pub irreducible: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, diag: &[u32], rows: &[&[u128]]) -> HnfMatrix {
        HnfMatrix::new(p, diag.to_vec(), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn identity_matrix() {
        let id = HnfMatrix::identity(4, 3).unwrap();
        assert!(id.identity_in_span());
        assert!(id.is_closed());
        assert!(!id.is_irreducible());
    }

    #[test]
    fn rank_two_examples() {
        // columns (p^e, 0), (1, 1)
        let a = m(3, &[4, 0], &[&[81, 1], &[0, 1]]);
        assert!(a.identity_in_span());
        assert!(a.is_closed());
        // columns (p, 0), (1, 1) is irreducible
        assert!(m(5, &[1, 0], &[&[5, 1], &[0, 1]]).is_irreducible());
        // diag (p, p): last row forces p * x_2 = 1
        for a12 in 0..3 {
            assert!(!m(3, &[1, 1], &[&[3, a12], &[0, 3]]).identity_in_span());
        }
    }

    #[test]
    fn alpha_3211_closure_examples() {
        // diag (p^3, p^2, p, p, 1), entries p*a_ij with a'_12 = 0, a_13 = 1.
        let build = |p: u128, a13: u128| {
            let p3 = p * p * p;
            let p2 = p * p;
            HnfMatrix::new(
                p as u64,
                vec![3, 2, 1, 1, 0],
                vec![
                    vec![p3, 0, p * a13, 0, 1],
                    vec![0, p2, 0, 0, 1],
                    vec![0, 0, p, 0, 1],
                    vec![0, 0, 0, p, 1],
                    vec![0, 0, 0, 0, 1],
                ],
            )
            .unwrap()
        };
        let good = build(2, 1);
        assert!(good.is_closed() && good.is_irreducible());
        assert!(good.certificate().irreducible);
        // a_13^2 - a_13 = 2, not 0 mod 3
        assert!(!build(3, 2).is_closed());
    }

    #[test]
    fn validation_rejects_non_hnf() {
        assert!(HnfMatrix::new(2, vec![1, 0], vec![vec![2, 1], vec![1, 1]]).is_err());
        assert!(HnfMatrix::new(2, vec![1, 0], vec![vec![2, 2], vec![0, 1]]).is_err());
        assert!(HnfMatrix::new(2, vec![1, 0], vec![vec![2, 1], vec![0, 1]]).is_ok());
        assert!(HnfMatrix::new(2, vec![1, 1], vec![vec![2, 2], vec![0, 2]]).is_err());
        assert!(HnfMatrix::new(4, vec![1], vec![vec![4]]).is_err());
    }

    #[test]
    fn leading_block_matches_full_product() {
        let a = m(2, &[2, 1, 0], &[&[4, 2, 1], &[0, 2, 1], &[0, 0, 1]]);
        assert_eq!(a.is_closed(), a.is_closed_full());
    }
}
