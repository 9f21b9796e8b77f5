//! Set partitions of `{0, …, n−1}` and Cigler's block-of-zero statistic.
//!
//! `cigl(π)` is the sum of the elements in the block containing `0`. Summing
//! `q^cigl(π)` over the `k`-block partitions gives the cigl-q-Stirling numbers;
//! over all partitions, the cigl-q-Bell numbers. The same polynomials come out
//! of the Poisson(1) average of `X(X+q−1)(X+q²−1)…(X+q^{n−1}−1)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dobinski::poisson_moment_exact_q;
use crate::error::{Error, Result};
use crate::poly::{Poly, QPolynomial};
use crate::rational::{int, Rational};

/// Largest ground-set size accepted by the enumerator (`B_13 = 27 644 437`).
pub const ENUMERATION_CAP: usize = 13;

/// Restricted growth string: `rgs[i]` is the block of element `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<usize>,
}

impl SetPartition {
    /// Returns `None` unless `rgs[0] = 0` and `rgs[i] ≤ 1 + max(rgs[..i])`.
    pub fn from_rgs(rgs: Vec<usize>) -> Option<Self> {
        let mut max = None::<usize>;
        for &b in &rgs {
            let limit = max.map_or(0, |m| m + 1);
            if b > limit {
                return None;
            }
            max = Some(max.map_or(b, |m| m.max(b)));
        }
        Some(SetPartition { rgs })
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }
}

/// Streams every partition of `{0, …, n−1}` once, in lexicographic rgs order.
#[derive(Clone, Debug)]
pub struct PartitionIter {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIter {
    fn new(n: usize) -> Self {
        PartitionIter { rgs: vec![0; n], prefix_max: vec![0; n], started: false, done: false }
    }

    /// Moves to the next partition; the current one is then readable via
    /// [`PartitionIter::current`]. Returns `false` once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.rgs.len();
        // rightmost position that can still grow
        let Some(i) = (1..n).rev().find(|&i| self.rgs[i] <= self.prefix_max[i - 1]) else {
            self.done = true;
            return false;
        };
        self.rgs[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
        for j in i + 1..n {
            self.rgs[j] = 0;
            self.prefix_max[j] = self.prefix_max[i];
        }
        true
    }

    pub fn current(&self) -> &[usize] {
        &self.rgs
    }

    /// Number of blocks of the current partition.
    pub fn current_blocks(&self) -> usize {
        self.prefix_max.last().map_or(0, |m| m + 1)
    }
}

impl Iterator for PartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.advance().then(|| SetPartition { rgs: self.rgs.clone() })
    }
}

/// All partitions of `{0, …, n−1}`; `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    Ok(PartitionIter::new(n))
}

/// Number of partitions produced by the enumerator.
pub fn count_partitions(n: usize) -> Result<u64> {
    let mut it = enumerate_partitions(n)?;
    let mut count = 0;
    while it.advance() {
        count += 1;
    }
    Ok(count)
}

fn cigl_of_rgs(rgs: &[usize]) -> usize {
    rgs.iter().enumerate().filter(|(_, &b)| b == 0).map(|(i, _)| i).sum()
}

/// Sum of the elements sharing a block with `0`.
pub fn cigl_statistic(p: &SetPartition) -> usize {
    cigl_of_rgs(&p.rgs)
}

/// `Σ q^cigl(π)` split by block count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiglWeightedCount {
    pub n: usize,
    pub by_blocks: BTreeMap<usize, QPolynomial>,
}

impl CiglWeightedCount {
    pub fn stirling(&self, k: usize) -> QPolynomial {
        self.by_blocks.get(&k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn bell(&self) -> QPolynomial {
        self.by_blocks.values().fold(Poly::zero(), |acc, p| &acc + p)
    }
}

/// One enumeration pass accumulating `q^cigl` per block count.
pub fn cigl_weighted_count(n: usize) -> Result<CiglWeightedCount> {
    let mut it = enumerate_partitions(n)?;
    let max_cigl = n * n.saturating_sub(1) / 2;
    // counts[k][s]: k-block partitions with cigl = s
    let mut counts = vec![vec![0u64; max_cigl + 1]; n + 1];
    while it.advance() {
        counts[it.current_blocks()][cigl_of_rgs(it.current())] += 1;
    }
    let by_blocks = counts
        .into_iter()
        .enumerate()
        .filter_map(|(k, row)| {
            let p = Poly::new(row.into_iter().map(|c| int(c as i64)).collect());
            (!p.is_zero()).then_some((k, p))
        })
        .collect();
    Ok(CiglWeightedCount { n, by_blocks })
}

/// `Σ_{π ∈ A_{n,k}} q^cigl(π)`.
pub fn cigl_q_stirling(n: usize, k: usize) -> Result<QPolynomial> {
    Ok(cigl_weighted_count(n)?.stirling(k))
}

/// `Σ_π q^cigl(π)` over all partitions of `{0, …, n−1}`.
pub fn cigl_q_bell(n: usize) -> Result<QPolynomial> {
    Ok(cigl_weighted_count(n)?.bell())
}

/// `X(X+q−1)(X+q²−1)…(X+q^{n−1}−1)` as a polynomial in `X` over `Q[q]`.
pub fn cigl_q_power(n: usize) -> Poly<QPolynomial> {
    (0..n).fold(Poly::one(), |acc, i| {
        let shift = &Poly::monomial(Rational::one(), i) - &Poly::one();
        &acc * &Poly::new(vec![shift, Poly::one()])
    })
}

/// Poisson(1) average of [`cigl_q_power`], via `X^m ↦ B_m`.
pub fn cigl_q_dobinski_exact(n: usize) -> QPolynomial {
    poisson_moment_exact_q(&cigl_q_power(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qpoly;

    fn part(rgs: &[usize]) -> SetPartition {
        SetPartition::from_rgs(rgs.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(3).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(5).unwrap().count(), 52);
        let empty: Vec<_> = enumerate_partitions(0).unwrap().collect();
        assert_eq!(empty, vec![part(&[])]);
        assert_eq!(count_partitions(1).unwrap(), 1);
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<Vec<usize>> = enumerate_partitions(3).unwrap().map(|p| p.rgs).collect();
        assert_eq!(all, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
        let four: Vec<SetPartition> = enumerate_partitions(4).unwrap().collect();
        assert!(four.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(enumerate_partitions(14).err(), Some(Error::CapExceeded { n: 14, cap: 13 }));
        assert!(cigl_q_bell(14).is_err());
    }

    #[test]
    fn rgs_validation() {
        assert!(SetPartition::from_rgs(vec![1]).is_none());
        assert!(SetPartition::from_rgs(vec![0, 2]).is_none());
        assert!(SetPartition::from_rgs(vec![0, 1, 0, 2]).is_some());
        assert_eq!(part(&[0, 1, 0, 2]).blocks(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn statistic() {
        assert_eq!(cigl_statistic(&part(&[0, 0, 0])), 3);
        assert_eq!(cigl_statistic(&part(&[0, 1, 2])), 0);
        assert_eq!(cigl_statistic(&part(&[0, 1, 0])), 2);
    }

    #[test]
    fn cigl_stirling_examples() {
        assert_eq!(cigl_q_stirling(2, 1).unwrap(), qpoly(&[0, 1]));
        assert_eq!(cigl_q_stirling(2, 2).unwrap(), qpoly(&[1]));
        assert_eq!(cigl_q_stirling(3, 2).unwrap(), qpoly(&[1, 1, 1]));
        assert!(cigl_q_stirling(3, 4).unwrap().is_zero());
    }

    #[test]
    fn cigl_bell_examples() {
        assert_eq!(cigl_q_bell(2).unwrap(), qpoly(&[1, 1]));
        assert_eq!(cigl_q_bell(3).unwrap(), qpoly(&[2, 1, 1, 1]));
        assert_eq!(cigl_q_bell(0).unwrap(), qpoly(&[1]));
    }

    #[test]
    fn cigl_power_expansions() {
        assert_eq!(cigl_q_power(0), Poly::one());
        assert_eq!(cigl_q_power(1), Poly::new(vec![Poly::zero(), Poly::one()]));
        assert_eq!(cigl_q_power(2), Poly::new(vec![Poly::zero(), qpoly(&[-1, 1]), Poly::one()]));
        let c1 = &qpoly(&[-1, 1]) * &qpoly(&[-1, 0, 1]);
        let c2 = qpoly(&[-2, 1, 1]);
        assert_eq!(cigl_q_power(3), Poly::new(vec![Poly::zero(), c1, c2, Poly::one()]));
    }

    #[test]
    fn cigl_dobinski_examples() {
        assert_eq!(cigl_q_dobinski_exact(2), qpoly(&[1, 1]));
        assert_eq!(cigl_q_dobinski_exact(3), qpoly(&[2, 1, 1, 1]));
        assert_eq!(cigl_q_dobinski_exact(0), qpoly(&[1]));
    }

    #[test]
    fn weighted_count_totals() {
        let w = cigl_weighted_count(6).unwrap();
        assert_eq!(w.bell().eval(&int(1)), int(203));
        assert_eq!(w.bell().degree(), Some(15));
        assert_eq!(w.bell().leading(), Some(&int(1)));
    }
}
