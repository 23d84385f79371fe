//! Set partitions of `{0, …, r−1}`, the Möbius function of their lattice, and
//! joint cumulants built from it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::util::factorial;

/// Enumeration refuses larger ground sets (`Bell(10) = 115975`).
pub const SET_PARTITION_MAX_R: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, ℓ(π).
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `μ(π) = (−1)^{ℓ−1} (ℓ−1)!`, Möbius value against the one-block partition.
    pub fn mobius(&self) -> BigInt {
        let l = self.blocks.len();
        let f = BigInt::from(factorial(l.saturating_sub(1)));
        if l.is_multiple_of(2) {
            -f
        } else {
            f
        }
    }

    fn mobius_f64(&self) -> f64 {
        let l = self.blocks.len();
        let f: f64 = (1..l).map(|i| i as f64).product();
        if l.is_multiple_of(2) {
            -f
        } else {
            f
        }
    }
}

/// All set partitions of `{0, …, r−1}` via restricted growth strings.
pub fn set_partitions(r: usize) -> Result<Vec<SetPartition>> {
    if r > SET_PARTITION_MAX_R {
        return Err(Error::ResourceGuard(format!(
            "set partitions of {r} > {SET_PARTITION_MAX_R} points refused"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; r];
    fn rec(pos: usize, max: usize, rgs: &mut [usize], out: &mut Vec<SetPartition>) {
        if pos == rgs.len() {
            let nblocks = if rgs.is_empty() { 0 } else { max + 1 };
            let mut blocks = vec![Vec::new(); nblocks];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i);
            }
            out.push(SetPartition { blocks });
            return;
        }
        let limit = if pos == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[pos] = b;
            rec(pos + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    Ok(out)
}

/// Evaluates `Σ_π μ(π) ∏_j ∏_{r_ij ≥ 1} F(i, r_ij)` for the label sequence with
/// `multiplicities[i−1]` copies of `i`, where `r_ij` counts the copies of label
/// `i` in block `j`. Vanishes whenever at least two labels occur.
pub fn mobius_identity_check(
    f: impl Fn(usize, usize) -> BigRational,
    multiplicities: &[usize],
) -> Result<BigRational> {
    if multiplicities.len() < 2 {
        return invalid("the identity needs at least two distinct labels (s ≥ 2)");
    }
    if multiplicities.contains(&0) {
        return invalid("every label must occur at least once");
    }
    let labels: Vec<usize> = multiplicities
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i + 1, m))
        .collect();
    mobius_sum(&f, &labels)
}

/// The same alternating sum without the `s ≥ 2` hypothesis.
pub fn mobius_sum(f: &impl Fn(usize, usize) -> BigRational, labels: &[usize]) -> Result<BigRational> {
    let s = labels.iter().copied().max().unwrap_or(0);
    let mut total = BigRational::zero();
    for pi in set_partitions(labels.len())? {
        let mut term = BigRational::from_integer(pi.mobius());
        for block in pi.blocks() {
            let mut counts = vec![0usize; s + 1];
            for &idx in block {
                counts[labels[idx]] += 1;
            }
            for (i, &r) in counts.iter().enumerate().skip(1) {
                if r >= 1 {
                    term *= f(i, r);
                }
            }
        }
        total += term;
    }
    Ok(total)
}

/// Plug-in joint cumulant `k(X_{i_1}, …, X_{i_r})` from per-trial value vectors,
/// `Σ_π μ(π) ∏_blocks mean(∏_{i∈block} X_i)`. Indices may repeat.
pub fn empirical_cumulant(samples: &[Vec<f64>], subset: &[usize]) -> Result<f64> {
    if samples.len() < 2 {
        return invalid("need at least two trials");
    }
    if subset.is_empty() || subset.len() > 4 {
        return invalid("joint cumulants are supported for 1 to 4 variables");
    }
    if let Some(&bad) = subset.iter().find(|&&i| samples.iter().any(|s| i >= s.len())) {
        return invalid(format!("observable index {bad} out of range"));
    }
    let t = samples.len() as f64;
    let mut total = 0.0;
    for pi in set_partitions(subset.len())? {
        let mut term = pi.mobius_f64();
        for block in pi.blocks() {
            let mean = samples
                .iter()
                .map(|s| block.iter().map(|&b| s[subset[b]]).product::<f64>())
                .sum::<f64>()
                / t;
            term *= mean;
        }
        total += term;
    }
    Ok(total)
}

/// Bell numbers by the triangle recurrence (test oracle for enumeration sizes).
pub fn bell_number(r: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..r {
        let mut next = vec![*row.last().expect("non-empty")];
        for v in &row {
            let last = *next.last().expect("non-empty");
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rat;

    #[test]
    fn counts() {
        assert_eq!(set_partitions(4).unwrap().len(), 15);
        assert_eq!(set_partitions(5).unwrap().len(), 52);
        let one = set_partitions(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].mobius(), BigInt::from(1));
        assert_eq!(bell_number(5), 52);
        assert!(set_partitions(11).is_err());
    }

    #[test]
    fn two_labels_one_each() {
        let f = |i: usize, r: usize| rat((i * 10 + r) as i64);
        assert_eq!(mobius_identity_check(f, &[1, 1]).unwrap(), rat(0));
        assert!(mobius_identity_check(f, &[3]).is_err());
        // one label: not zero in general
        assert_ne!(mobius_sum(&f, &[1, 1]).unwrap(), rat(0));
    }

    #[test]
    fn cumulant_of_one_and_two_variables() {
        let samples = vec![vec![1.0, 2.0], vec![3.0, 1.0], vec![5.0, 6.0]];
        let mean = empirical_cumulant(&samples, &[0]).unwrap();
        assert!((mean - 3.0).abs() < 1e-12);
        let cov = empirical_cumulant(&samples, &[0, 1]).unwrap();
        let (mx, my) = (3.0, 3.0);
        let expect =
            samples.iter().map(|s| (s[0] - mx) * (s[1] - my)).sum::<f64>() / samples.len() as f64;
        assert!((cov - expect).abs() < 1e-12);
        assert!(empirical_cumulant(&samples[..1], &[0]).is_err());
        assert!(empirical_cumulant(&samples, &[0, 0, 0, 0, 0]).is_err());
    }
}
