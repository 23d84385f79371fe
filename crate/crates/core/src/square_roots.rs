//! Involutions and square roots of permutations.
//!
//! Permutations are words `w` on `0..n` with `w[i]` the image of `i`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::util::{expect_integer, factorial, ln_biguint, rat_to_f64};

/// Above this size the involution ratio table switches from exact big-integer
/// ratios to the floating recurrence `r_n = 1/(1 + (n−1)·r_{n−1})`.
pub const EXACT_RATIO_LIMIT: usize = 2000;

/// Brute-force enumeration refuses permutations longer than this.
pub const BRUTE_FORCE_MAX_N: usize = 9;

/// `I_n` by the recurrence `I_n = I_{n−1} + (n−1)·I_{n−2}`.
pub fn involution_count(n: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for m in 2..=n {
        let next = &cur + &prev * (m - 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// `I_n = Σ_k n! / (k!·(n−2k)!·2^k)`.
pub fn involution_count_closed(n: usize) -> BigUint {
    let nf = factorial(n);
    (0..=n / 2)
        .map(|k| &nf / (factorial(k) * factorial(n - 2 * k) * (BigUint::one() << k)))
        .sum()
}

/// Natural log of `(n/e)^{n/2} · e^{√n − 1/4} / √2`.
pub fn ln_involution_count_estimate(n: usize) -> f64 {
    let n = n as f64;
    0.5 * n * (n.ln() - 1.0) + n.sqrt() - 0.25 - 0.5 * std::f64::consts::LN_2
}

/// The saddle-point estimate of `I_n`; overflows to infinity for large `n`,
/// use [`ln_involution_count_estimate`] there.
pub fn involution_count_estimate(n: usize) -> f64 {
    ln_involution_count_estimate(n).exp()
}

/// `|estimate / I_n − 1|`, computed in log space.
pub fn involution_estimate_relative_error(n: usize) -> f64 {
    let exact = ln_biguint(&involution_count(n));
    (ln_involution_count_estimate(n) - exact).exp_m1().abs()
}

/// Exact `I_0..=I_N` (capped at [`EXACT_RATIO_LIMIT`]) and a ratio table
/// `r_n = I_{n−1}/I_n` for all `n ≤ N`.
#[derive(Clone, Debug)]
pub struct InvolutionCounter {
    exact: Vec<BigUint>,
    ratios: Vec<f64>,
}

impl InvolutionCounter {
    pub fn new(max_n: usize) -> Self {
        let exact_len = max_n.min(EXACT_RATIO_LIMIT) + 1;
        let mut exact = Vec::with_capacity(exact_len);
        exact.push(BigUint::one());
        if exact_len > 1 {
            exact.push(BigUint::one());
        }
        for m in 2..exact_len {
            let next = &exact[m - 1] + &exact[m - 2] * (m - 1);
            exact.push(next);
        }
        let mut ratios = vec![0.0; max_n + 1];
        for n in 1..=max_n {
            ratios[n] = if n < exact_len {
                let r = BigRational::new(exact[n - 1].clone().into(), exact[n].clone().into());
                rat_to_f64(&r)
            } else {
                1.0 / (1.0 + (n - 1) as f64 * ratios[n - 1])
            };
        }
        InvolutionCounter { exact, ratios }
    }

    pub fn max_n(&self) -> usize {
        self.ratios.len() - 1
    }

    /// Exact `I_n` when cached.
    pub fn count(&self, n: usize) -> Option<&BigUint> {
        self.exact.get(n)
    }

    /// `I_{n−1}/I_n`, the probability that the largest point of a uniform
    /// involution of `n` points is fixed.
    pub fn ratio(&self, n: usize) -> f64 {
        self.ratios[n]
    }
}

/// Number of ways `m` cycles of length `i` arise in the square of some permutation.
pub fn f_factor(i: usize, m: usize) -> BigUint {
    assert!(i >= 1, "cycle length must be positive");
    let half_i = BigRational::new(BigInt::from(i), BigInt::from(2));
    let mf = BigRational::from_integer(factorial(m).into());
    let total = if i.is_multiple_of(2) {
        if m % 2 == 1 {
            return BigUint::zero();
        }
        mf / BigRational::from_integer(factorial(m / 2).into()) * half_i.pow((m / 2) as i32)
    } else {
        (0..=m / 2).fold(BigRational::zero(), |acc, k| {
            let den = factorial(m - 2 * k) * factorial(k);
            acc + &mf / BigRational::from_integer(den.into()) * half_i.pow(k as i32)
        })
    };
    expect_integer(&total, "f(i, m)").to_biguint().expect("nonnegative")
}

/// `#{τ : τ² = σ}` for `σ` of the given cycle type, as `∏_i f(i, m_i)`.
pub fn square_root_count(cycle_type: &Partition) -> BigUint {
    cycle_type
        .multiplicities()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| f_factor(i + 1, m))
        .product()
}

/// Whether a permutation of this cycle type is a square.
pub fn is_square_type(cycle_type: &Partition) -> bool {
    cycle_type
        .multiplicities()
        .iter()
        .enumerate()
        .all(|(i, &m)| (i + 1) % 2 == 1 || m % 2 == 0)
}

pub fn is_permutation(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len()];
    for &x in w {
        if x >= w.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Cycle type of a permutation word, fixed points included.
pub fn cycle_type(w: &[usize]) -> Partition {
    let mut seen = vec![false; w.len()];
    let mut lens = Vec::new();
    for start in 0..w.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = w[x];
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_unsorted(lens)
}

/// A permutation of the given cycle type whose cycles are consecutive runs.
pub fn representative(cycle_type: &Partition) -> Vec<usize> {
    let mut w = Vec::with_capacity(cycle_type.size());
    let mut start = 0;
    for &len in cycle_type.parts() {
        for j in 0..len {
            w.push(start + (j + 1) % len);
        }
        start += len;
    }
    w
}

/// `n!/z_μ`, the size of the conjugacy class of type `μ`.
pub fn class_size(cycle_type: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (i, &m) in cycle_type.multiplicities().iter().enumerate() {
        z *= BigUint::from(i + 1).pow(m as u32) * factorial(m);
    }
    factorial(cycle_type.size()) / z
}

/// Visits every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Counts `τ ∈ S_n` with `τ∘τ = σ` by exhaustive search.
pub fn brute_force_square_roots(sigma: &[usize]) -> Result<u64> {
    let n = sigma.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::ResourceGuard(format!(
            "brute force over S_{n} refused (limit {BRUTE_FORCE_MAX_N})"
        )));
    }
    if !is_permutation(sigma) {
        return Err(Error::InvalidArgument("not a permutation".into()));
    }
    let mut count = 0u64;
    for_each_permutation(n, |t| {
        if (0..n).all(|i| t[t[i]] == sigma[i]) {
            count += 1;
        }
    });
    Ok(count)
}

/// Square-root counts for every cycle type of `S_n`, by both routes; rows are
/// `(cycle_type, formula, brute_force)`.
pub fn square_root_table(n: usize) -> Result<Vec<(Partition, BigUint, u64)>> {
    crate::partition::partitions_of(n)
        .into_iter()
        .map(|t| {
            let brute = brute_force_square_roots(&representative(&t))?;
            let formula = square_root_count(&t);
            Ok((t, formula, brute))
        })
        .collect()
}

pub fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
