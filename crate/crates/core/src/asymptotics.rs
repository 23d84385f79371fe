//! Fluctuation functionals of a partition around the limit shape and the
//! gaussian limits they are compared against.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::diagram::lskv_moment;
use crate::measures::Measure;
use crate::partition::Partition;
use crate::util::{binomial, rat_to_f64};

/// Largest degree kept in the Chebyshev tables.
pub const CHEBYSHEV_MAX_DEGREE: usize = 20;

/// Integer coefficients of the Chebyshev polynomials of the second kind,
/// normalised by `U_k(2cos θ) = sin((k+1)θ)/sin θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevU {
    /// `coeffs[k][j]` is the coefficient of `X^j` in `U_k`.
    coeffs: Vec<Vec<i64>>,
}

impl ChebyshevU {
    /// Tables for `U_0..=U_max` from `U_{k+2} = X·U_{k+1} − U_k`.
    pub fn by_recurrence(max: usize) -> Self {
        let mut coeffs: Vec<Vec<i64>> = vec![vec![1]];
        if max >= 1 {
            coeffs.push(vec![0, 1]);
        }
        for k in 2..=max {
            let mut next = vec![0i64; k + 1];
            for (j, c) in coeffs[k - 1].iter().enumerate() {
                next[j + 1] += c;
            }
            for (j, c) in coeffs[k - 2].iter().enumerate() {
                next[j] -= c;
            }
            coeffs.push(next);
        }
        ChebyshevU { coeffs }
    }

    /// Tables from `U_k(X) = Σ_m (−1)^m C(k−m, m) X^{k−2m}`.
    pub fn explicit(max: usize) -> Self {
        let coeffs = (0..=max)
            .map(|k| {
                let mut row = vec![0i64; k + 1];
                for m in 0..=k / 2 {
                    let c = i64::try_from(binomial(k - m, m)).expect("fits in i64");
                    row[k - 2 * m] = if m % 2 == 0 { c } else { -c };
                }
                row
            })
            .collect();
        ChebyshevU { coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self, k: usize) -> &[i64] {
        &self.coeffs[k]
    }

    /// `U_k(x)` by Horner's rule.
    pub fn eval(&self, k: usize, x: f64) -> f64 {
        self.coeffs[k].iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

/// `Θ_k = √n·(p_{k+2}(λ*) − p_{k+2}(Ω)) / ((k+1)(k+2))`, the `k`-th moment of
/// the scaled deviation `(√n/2)(λ* − Ω)`.
///
/// The bracket is formed exactly: for even `k` it is `(p_{k+2}(λ) − C·n^{j})/n^{j}`
/// with `k+2 = 2j`, and for odd `k` the moment of `Ω` vanishes.
pub fn deviation_moment(shape: &Partition, k: usize) -> f64 {
    let n = shape.size();
    assert!(n >= 1, "deviation moments need a non-empty partition");
    let order = (k + 2) as u32;
    let p = shape.moment_p(order);
    let nb = BigInt::from(n);
    let scale = ((k + 1) * (k + 2)) as f64;
    if k.is_multiple_of(2) {
        let j = (k + 2) / 2;
        let nj = nb.pow(j as u32);
        let centred = BigRational::new(p - BigInt::from(lskv_moment(order)) * &nj, nj);
        rat_to_f64(&centred) * (n as f64).sqrt() / scale
    } else {
        // √n · p/n^{(k+2)/2} = p / n^{(k+1)/2}
        let v = BigRational::new(p, nb.pow(k.div_ceil(2) as u32));
        rat_to_f64(&v) / scale
    }
}

/// `Θ_0, …, Θ_kmax`.
pub fn deviation_moments(shape: &Partition, kmax: usize) -> Vec<f64> {
    (0..=kmax).map(|k| deviation_moment(shape, k)).collect()
}

/// `Υ_k = Σ_m (−1)^m C(k−m, m) Θ_{k−2m}` from precomputed `Θ_0..Θ_k`.
pub fn chebyshev_functional_from_moments(theta: &[f64], k: usize) -> f64 {
    (0..=k / 2)
        .map(|m| {
            let c = u64::try_from(binomial(k - m, m)).expect("fits in u64") as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * c * theta[k - 2 * m]
        })
        .sum()
}

/// `Υ_k = (√n/2)∫U_k(s)(λ*(s) − Ω(s))ds`, through deviation moments.
pub fn chebyshev_functional(shape: &Partition, k: usize) -> f64 {
    chebyshev_functional_from_moments(&deviation_moments(shape, k), k)
}

/// Deterministic part of the limiting deviation field under the Gelfand
/// measure at `s = 2cos θ`: `1/2 − 2 sin θ / π`.
pub fn limit_process_mean(theta: f64) -> f64 {
    0.5 - 2.0 * theta.sin() / std::f64::consts::PI
}

/// Partial sum `(2/π) Σ_{j=1}^{terms} sin((2j+1)θ)/(2j+1)`, whose limit is
/// [`limit_process_mean`] for `θ ∈ (0, π)`.
pub fn limit_process_mean_fourier(theta: f64, terms: usize) -> f64 {
    let s: f64 = (1..=terms)
        .map(|j| {
            let m = (2 * j + 1) as f64;
            (m * theta).sin() / m
        })
        .sum();
    2.0 / std::f64::consts::PI * s
}

/// Limiting mean of `Σ_k/n^{k/2}` under the Gelfand measure.
pub fn gelfand_limit_mean(k: usize) -> f64 {
    if k % 2 == 1 {
        1.0
    } else {
        0.0
    }
}

/// Gaussian limit `N(mean, variance)` of one named observable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CltTarget {
    pub observable: String,
    pub measure: Measure,
    pub mean: f64,
    pub variance: f64,
}

/// Limit of `X_k = Σ_k/n^{k/2}`: `N(e_k, 2k)` for Gelfand, `N(0, k)` for Plancherel.
pub fn sigma_target(measure: Measure, k: usize) -> CltTarget {
    let (mean, variance) = match measure {
        Measure::Gelfand => (gelfand_limit_mean(k), 2.0 * k as f64),
        Measure::Plancherel => (0.0, k as f64),
    };
    CltTarget { observable: format!("X{k}"), measure, mean, variance }
}

/// Limit of `Υ_k`: `N(e_{k+1}/(k+1), 2/(k+1))` for Gelfand. For Plancherel,
/// `Υ_k` tracks `X_{k+1}/(k+1)` and the limit is `N(0, 1/(k+1))`.
pub fn upsilon_target(measure: Measure, k: usize) -> CltTarget {
    let kk = (k + 1) as f64;
    let (mean, variance) = match measure {
        Measure::Gelfand => (gelfand_limit_mean(k + 1) / kk, 2.0 / kk),
        Measure::Plancherel => (0.0, 1.0 / kk),
    };
    CltTarget { observable: format!("upsilon_{k}"), measure, mean, variance }
}
