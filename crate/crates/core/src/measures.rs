//! Exact Gelfand and Plancherel measures and expectations of central characters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::CharacterEvaluator;
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::square_roots::{f_factor, involution_count};
use crate::util::{big_rat, factorial, falling_factorial};

/// Largest `n` for which exact measure tables are built.
pub const EXACT_MEASURE_MAX_N: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// `dim λ / I_n`.
    Gelfand,
    /// `(dim λ)² / n!`.
    Plancherel,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Gelfand => "gelfand",
            Measure::Plancherel => "plancherel",
        })
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gelfand" => Ok(Measure::Gelfand),
            "plancherel" => Ok(Measure::Plancherel),
            other => Err(Error::Parse(format!("unknown measure {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureTable {
    pub n: usize,
    pub measure: Measure,
    pub entries: Vec<(Partition, BigRational)>,
}

/// Exact probabilities of every `λ ⊢ n`.
pub fn measure_table(n: usize, measure: Measure) -> Result<MeasureTable> {
    if n > EXACT_MEASURE_MAX_N {
        return Err(Error::ResourceGuard(format!(
            "exact {measure} table refused for n = {n} > {EXACT_MEASURE_MAX_N}; use the sampling module"
        )));
    }
    let denom: BigUint = match measure {
        Measure::Gelfand => involution_count(n),
        Measure::Plancherel => factorial(n),
    };
    let entries = partitions_of(n)
        .into_iter()
        .map(|l| {
            let d = l.dim_exact();
            let num = match measure {
                Measure::Gelfand => d,
                Measure::Plancherel => &d * &d,
            };
            (l, BigRational::new(num.into(), denom.clone().into()))
        })
        .collect();
    Ok(MeasureTable { n, measure, entries })
}

impl MeasureTable {
    pub fn total(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, (_, p)| acc + p)
    }

    pub fn probability(&self, shape: &Partition) -> BigRational {
        self.entries
            .iter()
            .find(|(l, _)| l == shape)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Exact expectation of an observable.
    pub fn expectation(&self, mut f: impl FnMut(&Partition) -> BigRational) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |acc, (l, p)| acc + p * f(l))
    }

    /// Rows `partition,numerator,denominator` with the partition written `2 1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,numerator,denominator\n");
        for (l, p) in &self.entries {
            let parts: Vec<String> = l.parts().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", parts.join(" "), p.numer(), p.denom()));
        }
        out
    }
}

/// `𝔾_n[Σ_μ] = n^{↓|μ|} · I_{n−|μ|+m₁}/I_n · ∏_{i≥2} f(i, m_i)`.
pub fn gelfand_expectation_sigma(n: usize, mu: &Partition) -> BigRational {
    let k = mu.size();
    if n < k {
        return BigRational::zero();
    }
    let mults = mu.multiplicities();
    let m1 = mults.first().copied().unwrap_or(0);
    let prod: BigUint = mults
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| f_factor(i + 1, m))
        .product();
    if prod.is_zero() {
        return BigRational::zero();
    }
    big_rat(&(falling_factorial(n, k) * involution_count(n - k + m1) * prod))
        / big_rat(&involution_count(n))
}

/// `𝔾_n[Σ_μ]` by summing `𝔾_n[λ]·Σ_μ(λ)` over all `λ ⊢ n`.
pub fn gelfand_expectation_sigma_direct(
    n: usize,
    mu: &Partition,
    ev: &mut CharacterEvaluator,
) -> Result<BigRational> {
    let table = measure_table(n, Measure::Gelfand)?;
    Ok(table.expectation(|l| ev.central_character(l, mu)))
}

/// `ℙ_n[Σ_μ]`: `n^{↓k}` when `μ = 1^k`, zero otherwise.
pub fn plancherel_expectation_sigma(n: usize, mu: &Partition) -> BigRational {
    if mu.parts().iter().all(|&p| p == 1) {
        big_rat(&falling_factorial(n, mu.size()))
    } else {
        BigRational::zero()
    }
}

/// Leading behaviour `𝔾_n[Σ_μ] ≃ coefficient · n^{exponent}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticExpectation {
    pub coefficient: BigUint,
    /// Twice the exponent, `|μ| + m₁(μ)`, kept integral.
    pub twice_exponent: usize,
}

impl AsymptoticExpectation {
    pub fn exponent(&self) -> f64 {
        self.twice_exponent as f64 / 2.0
    }
}

pub fn asymptotic_expectation_sigma(mu: &Partition) -> AsymptoticExpectation {
    let mults = mu.multiplicities();
    let coefficient = mults
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| f_factor(i + 1, m))
        .product::<BigUint>();
    let coefficient = if mults.len() <= 1 { BigUint::one() } else { coefficient };
    AsymptoticExpectation {
        coefficient,
        twice_exponent: mu.size() + mults.first().copied().unwrap_or(0),
    }
}
