use std::collections::HashMap;

use gelfand_core::characters::CharacterEvaluator;
use gelfand_core::measures::gelfand_expectation_sigma;
use gelfand_core::partition::partitions_of;
use gelfand_core::sampling::{
    random_involution, random_permutation, rsk_shape, run_experiment, sample_shape,
    ExperimentConfig, RngConfig,
};
use gelfand_core::square_roots::{for_each_permutation, InvolutionCounter};
use gelfand_core::stats::{chi_square_gof, SampleStats};
use gelfand_core::util::rat_to_f64;
use gelfand_core::verify::{involution_uniformity, rsk_pushforward};
use gelfand_core::{Measure, Partition};
use proptest::prelude::*;

const MIN_P: f64 = 1e-3;

#[test]
fn involution_sampler_is_uniform() {
    for n in [4, 5, 6] {
        let t = involution_uniformity(n, 100_000, 17).unwrap();
        assert!(t.p_value > MIN_P, "n={n}: {t:?}");
    }
}

#[test]
fn involution_frequencies_at_four() {
    let counter = InvolutionCounter::new(4);
    let mut rng = RngConfig::new(5).trial_rng(0);
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    let draws = 100_000;
    for _ in 0..draws {
        *counts.entry(random_involution(4, &counter, &mut rng)).or_default() += 1;
    }
    assert_eq!(counts.len(), 10);
    for (w, c) in counts {
        let f = c as f64 / draws as f64;
        assert!((f - 0.1).abs() < 0.005, "{w:?}: {f}");
    }
}

#[test]
fn tiny_involutions() {
    let counter = InvolutionCounter::new(1);
    let mut rng = RngConfig::new(0).trial_rng(0);
    assert!(random_involution(0, &counter, &mut rng).is_empty());
    assert_eq!(random_involution(1, &counter, &mut rng), vec![0]);
}

#[test]
fn permutation_sampler_is_uniform() {
    let mut index = HashMap::new();
    for_each_permutation(3, |w| {
        let k = index.len();
        index.insert(w.to_vec(), k);
    });
    let mut rng = RngConfig::new(9).trial_rng(0);
    let mut counts = vec![0u64; 6];
    let mut non_involution = false;
    for _ in 0..60_000 {
        let w = random_permutation(3, &mut rng);
        non_involution |= w.iter().enumerate().any(|(i, &j)| w[j] != i);
        counts[index[&w]] += 1;
    }
    for &c in &counts {
        assert!((c as f64 - 10_000.0).abs() < 300.0, "{counts:?}");
    }
    assert!(chi_square_gof(&counts, &[1.0 / 6.0; 6]).unwrap().p_value > MIN_P);
    assert!(non_involution);
}

#[test]
fn rsk_shapes_by_brute_force() {
    // RSK is a bijection onto pairs of tableaux: shape counts are (dim λ)²
    for n in 1..=7 {
        let mut counts: HashMap<Partition, u64> = HashMap::new();
        let mut inv_counts: HashMap<Partition, u64> = HashMap::new();
        for_each_permutation(n, |w| {
            let shape = rsk_shape(w).unwrap();
            if w.iter().enumerate().all(|(i, &j)| w[j] == i) {
                *inv_counts.entry(shape.clone()).or_default() += 1;
            }
            *counts.entry(shape).or_default() += 1;
        });
        for l in partitions_of(n) {
            let d: u64 = l.dim_exact().try_into().unwrap();
            assert_eq!(counts[&l], d * d, "{l}");
            assert_eq!(inv_counts[&l], d, "{l}");
        }
    }
}

#[test]
fn rsk_pushforward_matches_exact_measures() {
    for n in [4, 5, 6] {
        for m in [Measure::Gelfand, Measure::Plancherel] {
            let t = rsk_pushforward(m, n, 100_000, 23).unwrap();
            assert!(t.p_value > MIN_P, "{m} n={n}: {t:?}");
        }
    }
}

#[test]
fn monte_carlo_means_match_exact_expectations() {
    let n = 10;
    let trials = 20_000;
    let counter = InvolutionCounter::new(n);
    let rngs = RngConfig::new(77);
    let mus: Vec<Partition> = ["2", "3", "1,1", "2,2", "3,1", "4"].iter().map(|s| s.parse().unwrap()).collect();
    let mut ev = CharacterEvaluator::new();
    let mut stats = SampleStats::new(mus.iter().map(|m| m.to_string()).collect());
    for t in 0..trials {
        let l = sample_shape(Measure::Gelfand, n, &counter, &mut rngs.trial_rng(t));
        let v: Vec<f64> = mus.iter().map(|m| rat_to_f64(&ev.central_character(&l, m))).collect();
        stats.push(&v);
    }
    for (i, mu) in mus.iter().enumerate() {
        let exact = rat_to_f64(&gelfand_expectation_sigma(n, mu));
        let z = (stats.mean(i) - exact) / stats.se_mean(i).max(1e-12);
        assert!(z.abs() < 4.0, "μ={mu}: mean {} vs {exact}", stats.mean(i));
    }
}

#[test]
fn experiments_are_deterministic_across_thread_counts() {
    let mut cfg = ExperimentConfig::new(Measure::Gelfand, 200, 24, 99);
    cfg.threads = Some(1);
    let a = run_experiment(&cfg).unwrap();
    cfg.threads = Some(4);
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(a.raw_csv(), b.raw_csv());
    assert_eq!(a.stats, b.stats);
    cfg.seed = 100;
    assert_ne!(run_experiment(&cfg).unwrap().raw_csv(), a.raw_csv());
}

#[test]
fn experiment_guards() {
    let cfg = ExperimentConfig::new(Measure::Plancherel, 10_001, 1, 0);
    assert!(run_experiment(&cfg).is_err());
    let cfg = ExperimentConfig::new(Measure::Plancherel, 10, 0, 0);
    assert!(run_experiment(&cfg).is_err());
    let mut cfg = ExperimentConfig::new(Measure::Plancherel, 10, 1, 0);
    cfg.cycle_lengths = vec![1];
    assert!(run_experiment(&cfg).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn merge_is_associative(
        data in proptest::collection::vec(proptest::collection::vec(-100.0f64..100.0, 3), 3..60),
        cut1 in 0usize..60,
        cut2 in 0usize..60,
    ) {
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let (c1, c2) = (cut1.min(data.len()), cut2.min(data.len()));
        let (lo, hi) = (c1.min(c2), c1.max(c2));
        let acc = |rows: &[Vec<f64>]| {
            let mut s = SampleStats::new(names.clone());
            rows.iter().for_each(|r| s.push(r));
            s
        };
        let (x, y, z) = (acc(&data[..lo]), acc(&data[lo..hi]), acc(&data[hi..]));
        let left = x.merge(&y).unwrap().merge(&z).unwrap();
        let right = x.merge(&y.merge(&z).unwrap()).unwrap();
        let whole = acc(&data);
        for i in 0..3 {
            for j in 0..3 {
                let scale = whole.covariance(i, j).abs().max(1.0);
                prop_assert!((left.covariance(i, j) - right.covariance(i, j)).abs() <= 1e-10 * scale);
                prop_assert!((left.covariance(i, j) - whole.covariance(i, j)).abs() <= 1e-10 * scale);
            }
            prop_assert!((left.mean(i) - whole.mean(i)).abs() <= 1e-10 * whole.mean(i).abs().max(1.0));
        }
    }
}
