//! Streaming sample statistics, goodness-of-fit tests and gaussian-limit verdicts.

use serde::Serialize;
use serde_json::json;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::asymptotics::CltTarget;
use crate::error::{invalid, Result};

/// Number of standard errors allowed by every statistical gate.
pub const GATE_STANDARD_ERRORS: f64 = 4.0;

/// Minimum trial count accepted by [`clt_report`].
pub const MIN_REPORT_TRIALS: u64 = 100;

/// Running means and centred co-moments of a vector of named observables.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleStats {
    names: Vec<String>,
    count: u64,
    mean: Vec<f64>,
    /// Row-major `d × d` sums of centred cross-products.
    comoment: Vec<f64>,
}

impl SampleStats {
    pub fn new(names: Vec<String>) -> Self {
        let d = names.len();
        SampleStats { names, count: 0, mean: vec![0.0; d], comoment: vec![0.0; d * d] }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Adds one trial.
    pub fn push(&mut self, values: &[f64]) {
        let d = self.dim();
        assert_eq!(values.len(), d, "observation has the wrong dimension");
        self.count += 1;
        let c = self.count as f64;
        let before: Vec<f64> = values.iter().zip(&self.mean).map(|(x, m)| x - m).collect();
        for (m, delta) in self.mean.iter_mut().zip(&before) {
            *m += delta / c;
        }
        for (i, (x, m)) in values.iter().zip(&self.mean).enumerate() {
            let after_i = x - m;
            for (c, b) in self.comoment[i * d..(i + 1) * d].iter_mut().zip(&before) {
                *c += after_i * b;
            }
        }
    }

    /// Pairwise combination of two accumulators over the same observables.
    pub fn merge(&self, other: &SampleStats) -> Result<SampleStats> {
        if self.names != other.names {
            return invalid("cannot merge statistics over different observables");
        }
        if other.count == 0 {
            return Ok(self.clone());
        }
        if self.count == 0 {
            return Ok(other.clone());
        }
        let d = self.dim();
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta: Vec<f64> = other.mean.iter().zip(&self.mean).map(|(b, a)| b - a).collect();
        let mean = self.mean.iter().zip(&delta).map(|(a, dl)| a + dl * nb / n).collect();
        let mut comoment = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                comoment[i * d + j] = self.comoment[i * d + j]
                    + other.comoment[i * d + j]
                    + delta[i] * delta[j] * na * nb / n;
            }
        }
        Ok(SampleStats { names: self.names.clone(), count: self.count + other.count, mean, comoment })
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.mean[i]
    }

    /// Unbiased covariance (divisor `T − 1`).
    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        self.comoment[i * self.dim() + j] / (self.count - 1) as f64
    }

    pub fn variance(&self, i: usize) -> f64 {
        self.covariance(i, i)
    }

    /// `√(var/T)`.
    pub fn se_mean(&self, i: usize) -> f64 {
        (self.variance(i) / self.count as f64).sqrt()
    }

    /// Standard error of the covariance of two uncorrelated observables.
    pub fn se_covariance_null(&self, i: usize, j: usize) -> f64 {
        (self.variance(i) * self.variance(j) / self.count as f64).sqrt()
    }

    /// Means, variances, covariances and standard errors as JSON.
    pub fn summary_json(&self) -> serde_json::Value {
        let d = self.dim();
        let per: serde_json::Map<String, serde_json::Value> = (0..d)
            .map(|i| {
                (
                    self.names[i].clone(),
                    json!({
                        "mean": self.mean(i),
                        "variance": self.variance(i),
                        "se_mean": self.se_mean(i),
                    }),
                )
            })
            .collect();
        let cov: Vec<Vec<f64>> =
            (0..d).map(|i| (0..d).map(|j| self.covariance(i, j)).collect()).collect();
        json!({ "trials": self.count, "observables": per, "covariance": cov, "order": self.names })
    }
}

/// Pearson χ² goodness of fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Compares observed counts with expected probabilities (which must sum to 1).
pub fn chi_square_gof(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != probabilities.len() || observed.len() < 2 {
        return invalid("need matching observed/expected vectors with at least two cells");
    }
    if probabilities.iter().any(|&p| p <= 0.0) {
        return invalid("expected probabilities must be positive");
    }
    let total: u64 = observed.iter().sum();
    let t = total as f64;
    let statistic = observed
        .iter()
        .zip(probabilities)
        .map(|(&o, &p)| {
            let e = p * t;
            (o as f64 - e).powi(2) / e
        })
        .sum::<f64>();
    let dof = observed.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| crate::error::Error::InvalidArgument(e.to_string()))?;
    Ok(ChiSquareTest { statistic, dof, p_value: dist.sf(statistic) })
}

/// One row of a verdict table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CltEntry {
    pub observable: String,
    /// `mean`, `variance` or `variance_ratio`.
    pub statistic: String,
    pub empirical: f64,
    pub target: f64,
    pub standard_error: f64,
    pub z: f64,
    pub pass: bool,
}

impl CltEntry {
    fn new(observable: &str, statistic: &str, empirical: f64, target: f64, se: f64) -> Self {
        let z = (empirical - target) / se;
        CltEntry {
            observable: observable.to_string(),
            statistic: statistic.to_string(),
            empirical,
            target,
            standard_error: se,
            z,
            pass: z.abs() <= GATE_STANDARD_ERRORS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CltReport {
    pub trials: u64,
    pub gate_standard_errors: f64,
    pub entries: Vec<CltEntry>,
}

impl CltReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn entry(&self, observable: &str, statistic: &str) -> Option<&CltEntry> {
        self.entries.iter().find(|e| e.observable == observable && e.statistic == statistic)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<14} {:<15} {:>12} {:>12} {:>10} {:>8}  verdict\n",
            "observable", "statistic", "empirical", "target", "se", "z"
        );
        for e in &self.entries {
            out.push_str(&format!(
                "{:<14} {:<15} {:>12.6} {:>12.6} {:>10.6} {:>8.3}  {}\n",
                e.observable,
                e.statistic,
                e.empirical,
                e.target,
                e.standard_error,
                e.z,
                if e.pass { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

/// Means and variances against their gaussian limits at 4 standard errors.
///
/// The standard error of a sample variance is taken under the limit law,
/// `σ²·√(2/(T−1))`.
pub fn clt_report(stats: &SampleStats, targets: &[CltTarget]) -> Result<CltReport> {
    if stats.count() < MIN_REPORT_TRIALS {
        return invalid(format!(
            "verdicts need at least {MIN_REPORT_TRIALS} trials, got {}",
            stats.count()
        ));
    }
    let t = stats.count() as f64;
    let mut entries = Vec::with_capacity(2 * targets.len());
    for target in targets {
        let Some(i) = stats.index_of(&target.observable) else {
            return invalid(format!("observable {:?} was not recorded", target.observable));
        };
        entries.push(CltEntry::new(
            &target.observable,
            "mean",
            stats.mean(i),
            target.mean,
            (target.variance / t).sqrt(),
        ));
        entries.push(CltEntry::new(
            &target.observable,
            "variance",
            stats.variance(i),
            target.variance,
            target.variance * (2.0 / (t - 1.0)).sqrt(),
        ));
    }
    Ok(CltReport { trials: stats.count(), gate_standard_errors: GATE_STANDARD_ERRORS, entries })
}

/// `var_a / var_b` of one observable against `target`, with the delta-method
/// standard error `r·√(2/(T_a−1) + 2/(T_b−1))`.
pub fn variance_ratio_entry(
    a: &SampleStats,
    b: &SampleStats,
    observable: &str,
    target: f64,
) -> Result<CltEntry> {
    let (Some(i), Some(j)) = (a.index_of(observable), b.index_of(observable)) else {
        return invalid(format!("observable {observable:?} missing from one of the runs"));
    };
    if a.count() < 2 || b.count() < 2 {
        return invalid("variance ratio needs at least two trials per run");
    }
    let r = a.variance(i) / b.variance(j);
    let se = r * (2.0 / (a.count() - 1) as f64 + 2.0 / (b.count() - 1) as f64).sqrt();
    Ok(CltEntry::new(observable, "variance_ratio", r, target, se))
}
