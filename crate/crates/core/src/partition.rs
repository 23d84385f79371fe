//! Integer partitions (Young diagrams) and the exact observables attached to a
//! single diagram: interlacing coordinates, interlacing moments, hook lengths,
//! dimensions and rim hooks.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::util::ln_biguint;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Builds a partition from parts that must already be weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid(format!("parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts must be weakly decreasing: {parts:?}"));
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    /// Sorts the input and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    /// Partition with multiplicities `mults[i]` of part `i + 1`.
    pub fn from_multiplicities(mults: &[usize]) -> Self {
        let mut parts = Vec::new();
        for (i, &m) in mults.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, m));
        }
        Self::from_unsorted(parts)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `1^n`.
    pub fn column(n: usize) -> Self {
        Self::from_unsorted(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `m[i - 1]` is the number of parts equal to `i`, for `i = 1..=λ₁`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0)];
        for &p in &self.parts {
            m[p - 1] += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts, size: self.size }
    }

    /// Disjoint union λ ⊔ μ.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_unsorted(parts)
    }

    /// `self` with `count` extra parts equal to 1.
    pub fn pad_ones(&self, count: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, count));
        Partition { parts, size: self.size + count }
    }

    /// Hook lengths of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.parts[j] - i - 1);
            }
        }
        hooks
    }

    /// Contents `j - i` of the addable cells, increasing.
    pub fn addable_contents(&self) -> Vec<i64> {
        let l = self.parts.len();
        let mut out = Vec::with_capacity(l + 1);
        // row l+1 (1-indexed) gets a new cell in column 1
        out.push(-(l as i64));
        for i in (0..l).rev() {
            if i == 0 || self.parts[i - 1] > self.parts[i] {
                out.push(self.parts[i] as i64 - i as i64);
            }
        }
        out
    }

    /// Contents `j - i` of the removable cells, increasing.
    pub fn removable_contents(&self) -> Vec<i64> {
        let l = self.parts.len();
        let mut out = Vec::with_capacity(l);
        for i in (0..l).rev() {
            if i + 1 == l || self.parts[i + 1] < self.parts[i] {
                out.push(self.parts[i] as i64 - 1 - i as i64);
            }
        }
        out
    }

    /// Local minima and maxima of the 45°-rotated profile.
    pub fn interlacing(&self) -> InterlacingCoordinates {
        InterlacingCoordinates {
            minima: self.addable_contents(),
            maxima: self.removable_contents(),
        }
    }

    /// Interlacing moment `p_k = Σ x_i^k − Σ y_i^k`.
    pub fn moment_p(&self, k: u32) -> BigInt {
        self.interlacing().moment(k)
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn dim_exact(&self) -> BigUint {
        let mut num = BigUint::one();
        for i in 2..=self.size {
            num *= i;
        }
        let mut den = BigUint::one();
        for h in self.hook_lengths() {
            den *= h;
        }
        num / den
    }

    /// Natural logarithm of `dim λ`, via log-gamma for `n!`.
    pub fn log_dim(&self) -> f64 {
        let ln_fact = statrs::function::gamma::ln_gamma(self.size as f64 + 1.0);
        let ln_hooks: f64 = self.hook_lengths().iter().map(|&h| (h as f64).ln()).sum();
        ln_fact - ln_hooks
    }

    /// Beta numbers `β_i = λ_i + ℓ − i`, strictly decreasing, one bead per part.
    pub fn beta_numbers(&self) -> Vec<usize> {
        let l = self.parts.len();
        self.parts.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect()
    }

    fn from_beta_numbers(mut beta: Vec<usize>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let l = beta.len();
        let parts = beta.iter().enumerate().map(|(i, &b)| b + i + 1 - l).collect();
        Partition::from_unsorted(parts)
    }

    /// All rim hooks (border strips) of size `k`: the diagram left after removal
    /// together with the leg length (number of rows spanned minus one).
    pub fn rim_hooks(&self, k: usize) -> Vec<(Partition, usize)> {
        if k == 0 || k > self.size {
            return Vec::new();
        }
        let beta = self.beta_numbers();
        let set: BTreeSet<usize> = beta.iter().copied().collect();
        let mut out = Vec::new();
        for (idx, &b) in beta.iter().enumerate() {
            if b < k || set.contains(&(b - k)) {
                continue;
            }
            let height = set.range(b - k + 1..b).count();
            let mut moved = beta.clone();
            moved[idx] = b - k;
            out.push((Self::from_beta_numbers(moved), height));
        }
        out
    }

    /// Cells as `(row, column)`, zero-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)`, `[2,1]` or an empty string; parts in any order.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if trimmed.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in {s:?}")));
        }
        Ok(Partition::from_unsorted(parts))
    }
}

/// Minima `x_1 < … < x_s` and maxima `y_1 < … < y_{s-1}` of a rotated profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacingCoordinates {
    pub minima: Vec<i64>,
    pub maxima: Vec<i64>,
}

impl InterlacingCoordinates {
    /// Checks strict interlacing and the centering `Σx − Σy = 0`.
    pub fn validate(&self) -> Result<()> {
        if self.minima.len() != self.maxima.len() + 1 {
            return invalid("need exactly one more minimum than maxima");
        }
        for (i, y) in self.maxima.iter().enumerate() {
            if !(self.minima[i] < *y && *y < self.minima[i + 1]) {
                return invalid(format!("interlacing fails around y_{} = {y}", i + 1));
            }
        }
        if self.minima.iter().sum::<i64>() != self.maxima.iter().sum::<i64>() {
            return invalid("Σx − Σy must vanish");
        }
        Ok(())
    }

    pub fn moment(&self, k: u32) -> BigInt {
        let mut acc = BigInt::zero();
        for &x in &self.minima {
            acc += BigInt::from(x).pow(k);
        }
        for &y in &self.maxima {
            acc -= BigInt::from(y).pow(k);
        }
        acc
    }
}

/// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Natural log of `dim λ` computed from the exact big integer (for cross-checks).
pub fn log_dim_exact(p: &Partition) -> f64 {
    ln_biguint(&p.dim_exact())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn interlacing_small_cases() {
        let e = Partition::empty().interlacing();
        assert_eq!(e.minima, vec![0]);
        assert!(e.maxima.is_empty());

        let c = p(&[2, 1]).interlacing();
        assert_eq!(c.minima, vec![-2, 0, 2]);
        assert_eq!(c.maxima, vec![-1, 1]);

        let fig = p(&[7, 6, 4, 4, 3, 1]).interlacing();
        assert_eq!(fig.maxima.len(), 5);
        assert_eq!(fig.minima.len(), 6);
        fig.validate().unwrap();
        assert_eq!(p(&[7, 6, 4, 4, 3, 1]).moment_p(2), BigInt::from(50));
    }

    #[test]
    fn moments_of_two_one() {
        let l = p(&[2, 1]);
        assert_eq!(l.moment_p(1), BigInt::zero());
        assert_eq!(l.moment_p(2), BigInt::from(6));
        assert_eq!(l.moment_p(3), BigInt::zero());
        assert_eq!(l.moment_p(4), BigInt::from(30));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("(1,3,2)".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn dims() {
        assert_eq!(p(&[2, 1]).dim_exact(), BigUint::from(2u32));
        for n in 1..10 {
            assert_eq!(Partition::row(n).dim_exact(), BigUint::one());
        }
        let total: BigUint = partitions_of(6).iter().map(|l| l.dim_exact()).sum();
        assert_eq!(total, BigUint::from(76u32));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn rim_hooks_of_two_one() {
        let hooks = p(&[2, 1]).rim_hooks(2);
        let mut shapes: Vec<(String, usize)> =
            hooks.iter().map(|(q, h)| (q.to_string(), *h)).collect();
        shapes.sort();
        assert!(shapes.is_empty(), "(2,1) has no 2-rim hooks, got {shapes:?}");
        let hooks = p(&[2, 1]).rim_hooks(3);
        assert_eq!(hooks, vec![(Partition::empty(), 1)]);
        let hooks = p(&[1, 1]).rim_hooks(2);
        assert_eq!(hooks, vec![(Partition::empty(), 1)]);
    }

    #[test]
    fn conjugate_and_multiplicities() {
        let l = p(&[4, 2, 2, 1]);
        assert_eq!(l.conjugate(), p(&[4, 3, 1, 1]));
        assert_eq!(l.multiplicities(), vec![1, 2, 0, 1]);
        assert_eq!(Partition::from_multiplicities(&[1, 2, 0, 1]), l);
    }

    #[test]
    fn serde_as_array() {
        let l = p(&[7, 6, 4, 4, 3, 1]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, "[7,6,4,4,3,1]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
