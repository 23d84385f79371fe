//! Exact and statistical verification checks shared by the command line and
//! the test suites.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::{mobius_identity_check, power_top_formula, sigma_power};
use crate::characters::CharacterEvaluator;
use crate::error::{Error, Result};
use crate::measures::{
    gelfand_expectation_sigma, measure_table, Measure, EXACT_MEASURE_MAX_N,
};
use crate::partition::{partitions_of, Partition};
use crate::sampling::{random_involution, sample_shape, RngConfig};
use crate::square_roots::{
    for_each_permutation, involution_count, square_root_count, square_root_table,
    InvolutionCounter,
};
use crate::stats::{chi_square_gof, ChiSquareTest};
use crate::transition::{free_cumulants, transition_measure};
use crate::util::{factorial, rat_frac};

/// Brute-force square-root and trace checks stop here.
pub const BRUTE_FORCE_CHECK_MAX_N: usize = 8;
/// Exact measure and expectation checks stop here.
pub const EXACT_CHECK_MAX_N: usize = 12;
/// Sampler checks enumerate all involutions; refused beyond this size.
pub const SAMPLER_CHECK_MAX_N: usize = 8;
/// `(k, m)` pairs for the top-degree power check.
pub const POWER_LEMMA_PAIRS: [(usize, usize); 7] =
    [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (4, 4)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Statistical,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn exact(name: &str, passed: bool, detail: String) -> Self {
        Check { name: name.into(), kind: CheckKind::Exact, passed, detail }
    }

    fn statistical(name: &str, passed: bool, detail: String) -> Self {
        Check { name: name.into(), kind: CheckKind::Statistical, passed, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}: {}", self.name, self.detail)
    }
}

fn guard(nmax: usize, limit: usize, what: &str) -> Result<()> {
    if nmax > limit {
        return Err(Error::ResourceGuard(format!("{what} is limited to n ≤ {limit}, got {nmax}")));
    }
    Ok(())
}

/// Product formula against exhaustive search for every cycle type with `n ≤ nmax`,
/// plus the count 8 for cycle type `3·2²·1³`.
pub fn check_square_roots(nmax: usize) -> Result<Check> {
    guard(nmax, BRUTE_FORCE_CHECK_MAX_N, "brute-force square roots")?;
    let mut types = 0;
    let mut mismatches = Vec::new();
    for n in 0..=nmax {
        for (t, formula, brute) in square_root_table(n)? {
            types += 1;
            if formula != BigUint::from(brute) {
                mismatches.push(format!("{t}: formula {formula}, brute force {brute}"));
            }
        }
    }
    let worked = square_root_count(&Partition::new(vec![3, 2, 2, 1, 1, 1])?);
    let passed = mismatches.is_empty() && worked == BigUint::from(8u32);
    Ok(Check::exact(
        "square roots",
        passed,
        format!(
            "{types} cycle types up to n = {nmax}, {} mismatches; type (3,2,2,1,1,1) has {worked} roots",
            mismatches.len()
        ),
    ))
}

/// `Σ_λ ς^λ(σ)` equals the number of square roots of `σ`, and
/// `𝔾_n[χ^λ(σ)] = #roots(σ)/I_n`, for every class with `n ≤ nmax`.
pub fn check_trace_identity(nmax: usize, ev: &mut CharacterEvaluator) -> Result<Check> {
    guard(nmax, BRUTE_FORCE_CHECK_MAX_N, "the trace identity")?;
    let mut classes = 0;
    let mut bad = Vec::new();
    for n in 1..=nmax {
        let shapes = partitions_of(n);
        let table = measure_table(n, Measure::Gelfand)?;
        let i_n = BigRational::from_integer(involution_count(n).into());
        for t in partitions_of(n) {
            classes += 1;
            let trace = shapes.iter().try_fold(BigInt::zero(), |acc, l| {
                ev.character(l, &t).map(|c| acc + c)
            })?;
            let roots = BigInt::from(square_root_count(&t));
            let expected_chi = BigRational::from_integer(roots.clone()) / &i_n;
            let mean_chi = table.expectation(|l| ev.normalized(l, &t).expect("sizes agree"));
            if trace != roots || mean_chi != expected_chi {
                bad.push(t.to_string());
            }
        }
    }
    Ok(Check::exact(
        "gelfand trace identity",
        bad.is_empty(),
        format!("{classes} classes up to n = {nmax}, failures: {bad:?}"),
    ))
}

/// `Σ dim λ = I_n` and `Σ (dim λ)² = n!` for `n ≤ nmax`.
pub fn check_dimension_sums(nmax: usize) -> Result<Check> {
    guard(nmax, EXACT_MEASURE_MAX_N, "dimension sums")?;
    let bad: Vec<usize> = (0..=nmax)
        .filter(|&n| {
            let (s1, s2) = partitions_of(n).iter().fold(
                (BigUint::zero(), BigUint::zero()),
                |(a, b), l| {
                    let d = l.dim_exact();
                    (a + &d, b + &d * &d)
                },
            );
            s1 != involution_count(n) || s2 != factorial(n)
        })
        .collect();
    Ok(Check::exact(
        "dimension sums",
        bad.is_empty(),
        format!("n = 0..={nmax}, failures at {bad:?}"),
    ))
}

/// Closed form of `𝔾_n[Σ_μ]` against summation over all `λ ⊢ n`, for
/// `|μ| ≤ max_mu` and `1 ≤ n ≤ nmax`.
pub fn check_expectation_formula(
    nmax: usize,
    max_mu: usize,
    ev: &mut CharacterEvaluator,
) -> Result<Check> {
    guard(nmax, EXACT_MEASURE_MAX_N, "direct expectations")?;
    let mus: Vec<Partition> = (1..=max_mu).flat_map(partitions_of).collect();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for n in 1..=nmax {
        let table = measure_table(n, Measure::Gelfand)?;
        for mu in &mus {
            pairs += 1;
            let direct = table.expectation(|l| ev.central_character(l, mu));
            if direct != gelfand_expectation_sigma(n, mu) {
                bad.push(format!("n={n}, μ={mu}"));
            }
        }
    }
    Ok(Check::exact(
        "gelfand expectation formula",
        bad.is_empty(),
        format!("{pairs} pairs (n ≤ {nmax}, |μ| ≤ {max_mu}), failures: {bad:?}"),
    ))
}

/// Top Kerov component of `(Σ_k)^m` computed in the algebra against the closed
/// formula, for each pair.
pub fn check_power_lemma(pairs: &[(usize, usize)]) -> Result<Check> {
    let mut bad = Vec::new();
    for &(k, m) in pairs {
        let computed = sigma_power(k, m)?.top_kerov_part(k * m);
        if computed != power_top_formula(k, m)? {
            bad.push(format!("({k},{m}): computed {computed}"));
        }
    }
    let top44 = sigma_power(4, 4)?.top_kerov_part(16);
    let coeffs: Vec<String> = ["4,4,4,4", "4,4,1,1,1,1", "1,1,1,1,1,1,1,1"]
        .iter()
        .map(|s| top44.coefficient(&s.parse().expect("literal partition")).to_string())
        .collect();
    let passed = bad.is_empty() && coeffs == ["1", "24", "48"];
    Ok(Check::exact(
        "top-degree power lemma",
        passed,
        format!("{} pairs, (Σ4)^4 top coefficients {}, failures: {bad:?}", pairs.len(), coeffs.join("/")),
    ))
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.random_range(-30..=30);
    let den: i64 = rng.random_range(1..=12);
    rat_frac(num, den)
}

/// The Möbius identity on `instances` random rational tables `F(i, r)` with
/// random multiplicities (`s ≥ 2` labels, at most 8 points), plus the
/// `(1,1,2,2)` instance.
pub fn check_mobius_lemma(instances: usize, seed: u64) -> Result<Check> {
    let mut rng = RngConfig::new(seed).trial_rng(0);
    let mut nonzero = Vec::new();
    let mut run = |mults: &[usize], rng: &mut rand_chacha::ChaCha8Rng| -> Result<()> {
        let total: usize = mults.iter().sum();
        let table: HashMap<(usize, usize), BigRational> = (1..=mults.len())
            .flat_map(|i| (1..=total).map(move |r| (i, r)))
            .map(|key| (key, random_rational(rng)))
            .collect();
        let f = |i: usize, r: usize| table[&(i, r)].clone();
        let v = mobius_identity_check(f, mults)?;
        if !v.is_zero() {
            nonzero.push(format!("{mults:?} -> {v}"));
        }
        Ok(())
    };
    run(&[2, 2], &mut rng)?;
    for _ in 0..instances {
        let s = rng.random_range(2..=4usize);
        let mut mults = vec![1usize; s];
        let budget = rng.random_range(s..=8usize);
        for _ in s..budget {
            let i = rng.random_range(0..s);
            mults[i] += 1;
        }
        run(&mults, &mut rng)?;
    }
    Ok(Check::exact(
        "möbius lemma",
        nonzero.is_empty(),
        format!("{} instances plus (1,1,2,2), nonzero: {nonzero:?}", instances),
    ))
}

/// Free cumulants from the generating function against those of the
/// transition measure (moment recursion), and unit total mass, for all `λ`
/// with `|λ| ≤ nmax`.
pub fn check_transition_consistency(nmax: usize, kmax: usize) -> Result<Check> {
    guard(nmax, EXACT_MEASURE_MAX_N, "transition measures")?;
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 0..=nmax {
        for l in partitions_of(n) {
            count += 1;
            let mu = transition_measure(&l);
            let ok = mu.total_mass().is_one()
                && mu.free_cumulants(kmax)? == free_cumulants(&l, kmax)?;
            if !ok {
                bad.push(l.to_string());
            }
        }
    }
    Ok(Check::exact(
        "free cumulants vs transition measure",
        bad.is_empty(),
        format!("{count} partitions up to n = {nmax}, k ≤ {kmax}, failures: {bad:?}"),
    ))
}

/// χ² test of the involution sampler against the uniform law on all `I_n`
/// involutions.
pub fn involution_uniformity(n: usize, samples: usize, seed: u64) -> Result<ChiSquareTest> {
    guard(n, SAMPLER_CHECK_MAX_N, "sampler uniformity")?;
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for_each_permutation(n, |w| {
        if w.iter().enumerate().all(|(i, &j)| w[j] == i) {
            let next = index.len();
            index.insert(w.to_vec(), next);
        }
    });
    let counter = InvolutionCounter::new(n);
    let mut rng = RngConfig::new(seed).trial_rng(0);
    let mut counts = vec![0u64; index.len()];
    for _ in 0..samples {
        let w = random_involution(n, &counter, &mut rng);
        counts[index[&w]] += 1;
    }
    let p = 1.0 / index.len() as f64;
    chi_square_gof(&counts, &vec![p; index.len()])
}

/// χ² test of RSK shapes of sampled words against the exact measure table.
pub fn rsk_pushforward(measure: Measure, n: usize, samples: usize, seed: u64) -> Result<ChiSquareTest> {
    guard(n, SAMPLER_CHECK_MAX_N, "pushforward check")?;
    let table = measure_table(n, measure)?;
    let index: HashMap<Partition, usize> =
        table.entries.iter().enumerate().map(|(i, (l, _))| (l.clone(), i)).collect();
    let probs: Vec<f64> =
        table.entries.iter().map(|(_, p)| crate::util::rat_to_f64(p)).collect();
    let counter = InvolutionCounter::new(n);
    let mut rng = RngConfig::new(seed).trial_rng(1);
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..samples {
        counts[index[&sample_shape(measure, n, &counter, &mut rng)]] += 1;
    }
    chi_square_gof(&counts, &probs)
}

/// Significance level of the sampler χ² checks.
pub const SAMPLER_SIGNIFICANCE: f64 = 1e-3;
/// Draws per sampler χ² check.
pub const SAMPLER_DRAWS: usize = 100_000;

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Square roots, trace identity, dimension sums, expectation formula,
    /// free-cumulant consistency.
    Exact,
    /// Power lemma and Möbius lemma.
    Algebra,
    /// Sampler uniformity and RSK pushforward.
    Oracle,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Suite::Exact),
            "algebra" => Ok(Suite::Algebra),
            "oracle" => Ok(Suite::Oracle),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Exact => "exact",
            Suite::Algebra => "algebra",
            Suite::Oracle => "oracle",
        })
    }
}

/// Runs a suite. `nmax` bounds the exact enumerations; sizes above a check's
/// own limit are clipped to that limit, except that an `nmax` above
/// [`EXACT_CHECK_MAX_N`] is refused.
pub fn run_suite(suite: Suite, nmax: usize, seed: u64) -> Result<Vec<Check>> {
    guard(nmax, EXACT_CHECK_MAX_N, "verification")?;
    let small = nmax.min(BRUTE_FORCE_CHECK_MAX_N);
    match suite {
        Suite::Exact => {
            let mut ev = CharacterEvaluator::new();
            Ok(vec![
                check_square_roots(small)?,
                check_trace_identity(small, &mut ev)?,
                check_dimension_sums(nmax)?,
                check_expectation_formula(nmax, 6, &mut ev)?,
                check_transition_consistency(nmax, 8)?,
            ])
        }
        Suite::Algebra => Ok(vec![check_power_lemma(&POWER_LEMMA_PAIRS)?, check_mobius_lemma(100, seed)?]),
        Suite::Oracle => {
            let mut checks = Vec::new();
            for n in 2..=small.min(6) {
                let inv = involution_uniformity(n, SAMPLER_DRAWS, seed)?;
                checks.push(chi_square_check(&format!("involution uniformity n={n}"), &inv));
                for m in [Measure::Gelfand, Measure::Plancherel] {
                    let t = rsk_pushforward(m, n, SAMPLER_DRAWS, seed)?;
                    checks.push(chi_square_check(&format!("rsk pushforward {m} n={n}"), &t));
                }
            }
            Ok(checks)
        }
    }
}

fn chi_square_check(name: &str, t: &ChiSquareTest) -> Check {
    Check::statistical(
        name,
        t.p_value > SAMPLER_SIGNIFICANCE,
        format!("chi2 = {:.3}, dof {}, p = {:.4}", t.statistic, t.dof, t.p_value),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        assert!(check_square_roots(5).unwrap().passed);
        let mut ev = CharacterEvaluator::new();
        assert!(check_trace_identity(5, &mut ev).unwrap().passed);
        assert!(check_dimension_sums(8).unwrap().passed);
        assert!(check_expectation_formula(6, 4, &mut ev).unwrap().passed);
        assert!(check_mobius_lemma(5, 3).unwrap().passed);
        assert!(check_square_roots(9).is_err());
    }
}
