//! Irreducible characters of the symmetric groups and central characters.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::util::falling_factorial;

/// Murnaghan–Nakayama evaluator with a memo on `(shape, remaining cycles)`.
///
/// The memo makes the evaluator `&mut`; share it across threads only after
/// warm-up behind a lock, or give each thread its own.
#[derive(Debug, Default)]
pub struct CharacterEvaluator {
    memo: HashMap<(Vec<usize>, Vec<usize>), BigInt>,
}

impl CharacterEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Non-normalized character `ς^λ(μ)`.
    pub fn character(&mut self, shape: &Partition, cycle_type: &Partition) -> Result<BigInt> {
        if shape.size() != cycle_type.size() {
            return Err(Error::SizeMismatch { expected: shape.size(), got: cycle_type.size() });
        }
        Ok(self.mn(shape, cycle_type.parts()))
    }

    fn mn(&mut self, shape: &Partition, cycles: &[usize]) -> BigInt {
        if cycles.is_empty() {
            return BigInt::from(1);
        }
        let key = (shape.parts().to_vec(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (k, rest) = (cycles[0], &cycles[1..]);
        let mut acc = BigInt::zero();
        for (inner, height) in shape.rim_hooks(k) {
            let v = self.mn(&inner, rest);
            if height % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }

    /// Normalized character `χ^λ(μ) = ς^λ(μ)/dim λ`.
    pub fn normalized(&mut self, shape: &Partition, cycle_type: &Partition) -> Result<BigRational> {
        let v = self.character(shape, cycle_type)?;
        Ok(BigRational::new(v, shape.dim_exact().into()))
    }

    /// `Σ_μ(λ) = n^{↓k} χ^λ(μ ⊔ 1^{n−k})`, zero when `|μ| > |λ|`.
    pub fn central_character(&mut self, shape: &Partition, mu: &Partition) -> BigRational {
        let (n, k) = (shape.size(), mu.size());
        if k > n {
            return BigRational::zero();
        }
        let padded = mu.pad_ones(n - k);
        let chi = self.normalized(shape, &padded).expect("sizes agree after padding");
        chi * BigRational::from_integer(falling_factorial(n, k).into())
    }
}

/// `Σ_k(λ)` for one `k`-cycle, evaluated in floating point from single rim-hook
/// removals. With beta numbers `β` of `λ`, each removable hook moves a bead
/// `b → b − k` and contributes `b^{↓k} ∏_{β_j ≠ b} (b − k − β_j)/(b − β_j)`,
/// which equals `n^{↓k} (−1)^{ht} dim(λ∖ξ)/dim λ`. The sign of the product
/// is the hook's height parity.
pub fn central_character_cyclic_large(shape: &Partition, k: usize) -> f64 {
    if k == 0 || k > shape.size() {
        return 0.0;
    }
    let beta = shape.beta_numbers();
    let mut occupied = vec![false; beta.first().map_or(0, |b| b + 1)];
    for &b in &beta {
        occupied[b] = true;
    }
    let mut total = 0.0;
    for &b in &beta {
        if b < k || occupied[b - k] {
            continue;
        }
        let target = (b - k) as f64;
        let bf = b as f64;
        let mut term: f64 = (0..k).map(|i| bf - i as f64).product();
        for &other in &beta {
            if other != b {
                let o = other as f64;
                term *= (target - o) / (bf - o);
            }
        }
        total += term;
    }
    total
}
