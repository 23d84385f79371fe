//! Seeded sampling of involutions and permutations, RSK shapes, and the Monte
//! Carlo engine for scaled observables of random partitions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{chebyshev_functional_from_moments, deviation_moments};
use crate::characters::central_character_cyclic_large;
use crate::diagram::{rescale_to_unit, sup_distance, ContinuousDiagram};
use crate::error::{invalid, Error, Result};
use crate::measures::Measure;
use crate::partition::Partition;
use crate::square_roots::{is_permutation, InvolutionCounter};
use crate::stats::SampleStats;

/// Largest partition size accepted by [`run_experiment`].
pub const EXPERIMENT_MAX_N: usize = 10_000;

/// Deviation moments `Θ_1..Θ_4` are recorded per trial.
pub const THETA_RECORDED: std::ops::RangeInclusive<usize> = 1..=4;

/// Chebyshev functionals `Υ_2..Υ_5` are recorded per trial.
pub const UPSILON_RECORDED: std::ops::RangeInclusive<usize> = 2..=5;

/// A seed from which every trial derives its own ChaCha stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RngConfig {
    pub seed: u64,
}

impl RngConfig {
    pub fn new(seed: u64) -> Self {
        RngConfig { seed }
    }

    /// Generator for trial `trial`; identical `(seed, trial)` give identical draws.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

/// Uniform involution of `0..n`.
///
/// Points are processed from the largest down: with `n'` points still
/// unmatched, the largest is fixed with probability `I_{n'−1}/I_{n'}` and
/// otherwise paired with one of the other `n'−1` uniformly.
pub fn random_involution<R: Rng + ?Sized>(
    n: usize,
    counter: &InvolutionCounter,
    rng: &mut R,
) -> Vec<usize> {
    assert!(counter.max_n() >= n, "involution counter too small for n = {n}");
    let mut w: Vec<usize> = (0..n).collect();
    let mut free: Vec<usize> = (0..n).collect();
    while let Some(top) = free.pop() {
        let remaining = free.len() + 1;
        if free.is_empty() || rng.random::<f64>() < counter.ratio(remaining) {
            continue;
        }
        let idx = rng.random_range(0..free.len());
        let partner = free.swap_remove(idx);
        w[top] = partner;
        w[partner] = top;
    }
    w
}

/// Uniform permutation of `0..n` by Fisher–Yates.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut w: Vec<usize> = (0..n).collect();
    w.shuffle(rng);
    w
}

/// Shape of the RSK insertion tableau of a permutation word.
pub fn rsk_shape(w: &[usize]) -> Result<Partition> {
    if !is_permutation(w) {
        return invalid("RSK input must be a permutation of 0..n");
    }
    Ok(rsk_shape_unchecked(w))
}

fn rsk_shape_unchecked(w: &[usize]) -> Partition {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in w {
        let mut x = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            let pos = row.partition_point(|&y| y < x);
            if pos == row.len() {
                row.push(x);
                placed = true;
                break;
            }
            std::mem::swap(&mut row[pos], &mut x);
        }
        if !placed {
            rows.push(vec![x]);
        }
    }
    Partition::new(rows.iter().map(Vec::len).collect()).expect("RSK rows are weakly decreasing")
}

/// A random partition of `n` under `measure`.
pub fn sample_shape<R: Rng + ?Sized>(
    measure: Measure,
    n: usize,
    counter: &InvolutionCounter,
    rng: &mut R,
) -> Partition {
    let w = match measure {
        Measure::Gelfand => random_involution(n, counter, rng),
        Measure::Plancherel => random_permutation(n, rng),
    };
    rsk_shape_unchecked(&w)
}

/// Parameters of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub measure: Measure,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Cycle lengths `k` for which `X_k = Σ_k/n^{k/2}` is recorded.
    pub cycle_lengths: Vec<usize>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(measure: Measure, n: usize, trials: usize, seed: u64) -> Self {
        ExperimentConfig { measure, n, trials, seed, cycle_lengths: vec![2, 3, 4, 5], threads: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > EXPERIMENT_MAX_N {
            return Err(Error::ResourceGuard(format!(
                "n must lie in 1..={EXPERIMENT_MAX_N}, got {}",
                self.n
            )));
        }
        if self.trials == 0 {
            return invalid("at least one trial is required");
        }
        if self.cycle_lengths.iter().any(|&k| !(2..=10).contains(&k)) {
            return invalid("cycle lengths must lie in 2..=10");
        }
        if self.threads == Some(0) {
            return invalid("thread count must be positive");
        }
        Ok(())
    }

    /// Names of the per-trial observables, in recording order.
    pub fn observable_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.cycle_lengths.iter().map(|k| format!("X{k}")).collect();
        names.push("supdist".into());
        names.extend(THETA_RECORDED.map(|k| format!("theta_{k}")));
        names.extend(UPSILON_RECORDED.map(|k| format!("upsilon_{k}")));
        names
    }
}

/// Observables of one sampled partition, aligned with
/// [`ExperimentConfig::observable_names`].
pub fn trial_observables(shape: &Partition, cycle_lengths: &[usize]) -> Result<Vec<f64>> {
    let n = shape.size();
    let nf = n as f64;
    let mut out: Vec<f64> = cycle_lengths
        .iter()
        .map(|&k| central_character_cyclic_large(shape, k) / nf.powf(k as f64 / 2.0))
        .collect();
    let profile = rescale_to_unit(shape)?;
    out.push(sup_distance(&profile, &ContinuousDiagram::lskv()).value);
    let theta = deviation_moments(shape, *UPSILON_RECORDED.end());
    out.extend(THETA_RECORDED.map(|k| theta[k]));
    out.extend(UPSILON_RECORDED.map(|k| chebyshev_functional_from_moments(&theta, k)));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub trial: usize,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub names: Vec<String>,
    pub records: Vec<TrialRecord>,
    pub stats: SampleStats,
    /// Shape drawn in the final trial.
    pub last_shape: Partition,
}

impl ExperimentResult {
    /// Raw per-trial CSV: `trial,n,measure,<observables>`.
    pub fn raw_csv(&self) -> String {
        let mut out = format!("trial,n,measure,{}\n", self.names.join(","));
        for r in &self.records {
            let vals: Vec<String> = r.values.iter().map(|v| format!("{v:.17e}")).collect();
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.trial,
                self.config.n,
                self.config.measure,
                vals.join(",")
            ));
        }
        out
    }

    /// Per-trial values of one observable.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.names.iter().position(|n| n == name)?;
        Some(self.records.iter().map(|r| r.values[i]).collect())
    }
}

/// Samples `trials` partitions and accumulates their observables.
///
/// Trials run in parallel, each on its own stream; statistics are then
/// accumulated in trial order, so output does not depend on the thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let counter = InvolutionCounter::new(config.n);
    let rngs = RngConfig::new(config.seed);
    let work = || -> Result<Vec<(TrialRecord, Partition)>> {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = rngs.trial_rng(trial as u64);
                let shape = sample_shape(config.measure, config.n, &counter, &mut rng);
                let values = trial_observables(&shape, &config.cycle_lengths)?;
                Ok((TrialRecord { trial, values }, shape))
            })
            .collect()
    };
    let mut out = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let names = config.observable_names();
    let mut stats = SampleStats::new(names.clone());
    for (r, _) in &out {
        stats.push(&r.values);
    }
    let last_shape = out.last().map(|(_, s)| s.clone()).unwrap_or_else(Partition::empty);
    let records = out.drain(..).map(|(r, _)| r).collect();
    Ok(ExperimentResult { config: config.clone(), names, records, stats, last_shape })
}
