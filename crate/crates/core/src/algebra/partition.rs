//! Integer partitions and compositions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain("partition parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    /// `(t, t, ..., t)` with `copies` parts.
    pub fn rectangle(t: usize, copies: usize) -> Self {
        if t == 0 {
            return Partition(Vec::new());
        }
        Partition(vec![t; copies])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` counted from 1, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&x| x >= j).count()).collect())
    }

    /// `self ⊆ other` componentwise.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `k` with largest part at most `max_part` and at most
/// `max_len` parts, in reverse lexicographic order. Bounds are enforced while
/// generating.
pub fn bounded_partitions(k: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 || cap * slots < rest {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// An ordered tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("composition parts must be positive"));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Dimension `n` of the irreducible matrices with this diagonal.
    pub fn dimension(&self) -> usize {
        self.0.len() + 1
    }
}

impl std::str::FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::domain(format!("bad composition part {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Lexicographic stream of the compositions of `e` into `n - 1` positive parts.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.as_mut()?;
        let out = Composition(cur.clone());
        // Successor: find the rightmost position (excluding the last) that can
        // grow while the tail still has room for ones.
        let len = cur.len();
        let mut advanced = false;
        if len >= 2 {
            let mut i = len - 1;
            while i > 0 {
                i -= 1;
                let tail: usize = cur[i + 1..].iter().sum();
                let slots = len - i - 1;
                if tail > slots {
                    cur[i] += 1;
                    let rest = tail - 1;
                    for x in &mut cur[i + 1..len - 1] {
                        *x = 1;
                    }
                    cur[len - 1] = rest - (slots - 1);
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

pub fn compositions(n: usize, e: usize) -> Compositions {
    assert!(n >= 2, "compositions need n >= 2");
    let parts = n - 1;
    if e < parts {
        return Compositions { current: None };
    }
    let mut first = vec![1; parts];
    first[parts - 1] = e - (parts - 1);
    Compositions { current: Some(first) }
}

/// Weak compositions of `e` into `parts` nonnegative parts, lexicographic.
pub fn weak_compositions(e: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            go(rest - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if e == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(e, parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(m: usize, r: usize) -> usize {
        if r > m {
            return 0;
        }
        (0..r).fold(1, |acc, i| acc * (m - i) / (i + 1))
    }

    #[test]
    fn conjugates() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate(), Partition::new(vec![2, 1, 1]).unwrap());
        assert_eq!(Partition::default().conjugate(), Partition::default());
        // (t,...,t) with n-1 copies conjugates to (n-1,...,n-1) with t copies.
        assert_eq!(Partition::rectangle(3, 5).conjugate(), Partition::rectangle(5, 3));
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn composition_examples() {
        let c: Vec<_> = compositions(3, 3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(c, vec![vec![1, 2], vec![2, 1]]);
        let c: Vec<_> = compositions(4, 3).map(|c| c.parts().to_vec()).collect();
        assert_eq!(c, vec![vec![1, 1, 1]]);
        assert_eq!(compositions(5, 7).count(), 20);
        assert_eq!(compositions(4, 2).count(), 0);
        assert_eq!(compositions(2, 0).count(), 0);
        assert_eq!(compositions(2, 4).map(|c| c.parts().to_vec()).collect::<Vec<_>>(), vec![vec![4]]);
    }

    #[test]
    fn composition_counts_and_order() {
        for n in 2..=8 {
            for e in 0..=20 {
                let all: Vec<_> = compositions(n, e).collect();
                let expect = if e == 0 { 0 } else { binom(e - 1, n - 2) };
                assert_eq!(all.len(), expect, "n={n} e={e}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|c| c.total() == e && c.len() == n - 1));
            }
        }
    }

    #[test]
    fn bounded_partition_generation() {
        let ps = bounded_partitions(4, 2, 3);
        let parts: Vec<_> = ps.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(parts, vec![vec![2, 2], vec![2, 1, 1]]);
        assert_eq!(bounded_partitions(0, 3, 3), vec![Partition::default()]);
        assert_eq!(bounded_partitions(30, 30, 30).len(), 5604);
    }

    #[test]
    fn weak_composition_count() {
        assert_eq!(weak_compositions(4, 3).len(), binom(6, 2));
        assert_eq!(weak_compositions(0, 0).len(), 1);
    }

    proptest! {
        #[test]
        fn conjugation_is_involutive(mut parts in proptest::collection::vec(1usize..8, 0..8)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(parts).unwrap();
            prop_assert_eq!(p.conjugate().size(), p.size());
            prop_assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}
