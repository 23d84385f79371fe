use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::partition::Partition;

/// A permutation together with a finite support containing all its moved points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPermutation {
    perm: Vec<usize>,
    support: BTreeSet<usize>,
}

impl PartialPermutation {
    /// `perm` is a word on `0..perm.len()`; points outside the support must be fixed.
    pub fn new(perm: Vec<usize>, support: BTreeSet<usize>) -> Result<Self> {
        if !crate::square_roots::is_permutation(&perm) {
            return invalid("not a permutation word");
        }
        for (x, &y) in perm.iter().enumerate() {
            if x != y && !support.contains(&x) {
                return invalid(format!("moved point {x} is outside the support"));
            }
        }
        Ok(PartialPermutation { perm, support })
    }

    /// The cycle `(a_1 … a_k)` with support `{a_1, …, a_k}`.
    pub fn cycle(points: &[usize]) -> Result<Self> {
        let ground = points.iter().max().map_or(0, |m| m + 1);
        let mut perm: Vec<usize> = (0..ground).collect();
        for (i, &a) in points.iter().enumerate() {
            perm[a] = points[(i + 1) % points.len()];
        }
        Self::new(perm, points.iter().copied().collect())
    }

    /// Canonical element of the class `μ`: consecutive cycles, parts equal to 1
    /// becoming supported fixed points.
    pub fn canonical(mu: &Partition) -> Self {
        let perm = crate::square_roots::representative(mu);
        let support = (0..mu.size()).collect();
        PartialPermutation { perm, support }
    }

    pub fn image(&self, x: usize) -> usize {
        self.perm.get(x).copied().unwrap_or(x)
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    /// `(σ, S)(τ, T) = (σ∘τ, S ∪ T)`.
    pub fn compose(&self, other: &PartialPermutation) -> PartialPermutation {
        let ground = self.perm.len().max(other.perm.len());
        let perm = (0..ground).map(|x| self.image(other.image(x))).collect();
        let support = self.support.union(&other.support).copied().collect();
        PartialPermutation { perm, support }
    }

    /// Index partition: cycle lengths on the support, supported fixed points as 1.
    pub fn class(&self) -> Partition {
        let mut seen = BTreeSet::new();
        let mut lens = Vec::new();
        for &s in &self.support {
            if seen.contains(&s) {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while seen.insert(x) {
                x = self.image(x);
                len += 1;
            }
            lens.push(len);
        }
        Partition::from_unsorted(lens)
    }

    /// `|Fix(σ) ∩ S| + |S|`.
    pub fn kerov_degree(&self) -> usize {
        let fixed = self.support.iter().filter(|&&x| self.image(x) == x).count();
        fixed + self.support.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_classes() {
        let c = PartialPermutation::cycle(&[0, 1, 2]).unwrap();
        assert_eq!(c.kerov_degree(), 3);
        assert_eq!(c.class(), "3".parse().unwrap());
        let inv = PartialPermutation::cycle(&[2, 1, 0]).unwrap();
        let prod = c.compose(&inv);
        assert_eq!(prod.class(), "1,1,1".parse().unwrap());
        assert_eq!(prod.kerov_degree(), 6);
        let fixed = PartialPermutation::canonical(&"2,1".parse().unwrap());
        assert_eq!(fixed.kerov_degree(), 4);
        assert!(PartialPermutation::new(vec![1, 0], BTreeSet::from([0])).is_err());
    }
}
