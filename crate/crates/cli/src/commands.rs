//! Subcommand bodies.

use std::fs;
use std::path::{Path, PathBuf};

use gelfand_core::asymptotics::{sigma_target, upsilon_target};
use gelfand_core::measures::{gelfand_expectation_sigma, measure_table, plancherel_expectation_sigma};
use gelfand_core::sampling::{run_experiment, ExperimentConfig, ExperimentResult, UPSILON_RECORDED};
use gelfand_core::square_roots::InvolutionCounter;
use gelfand_core::stats::{clt_report, variance_ratio_entry, CltEntry, CltReport, MIN_REPORT_TRIALS};
use gelfand_core::svg::overlay_svg;
use gelfand_core::util::rat_to_f64;
use gelfand_core::verify::{run_suite, CheckKind, Suite};
use gelfand_core::{Error, Measure, Partition};
use serde_json::json;

use crate::provenance::{RunConfig, VERSION};
use crate::{CliError, Format, SampleArgs, Status};

/// Largest `nmax` for the involution table.
pub const INVOLUTION_TABLE_MAX_N: usize = 2000;

/// Largest `nmax` for the expectation table.
pub const EXPECTATION_TABLE_MAX_N: usize = 500;

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn guard(value: usize, limit: usize, what: &str) -> Result<(), CliError> {
    if value > limit {
        return Err(Error::ResourceGuard(format!("{what} is limited to {limit}, got {value}")).into());
    }
    Ok(())
}

pub fn verify(suite: Suite, nmax: usize, seed: u64) -> Result<Status, CliError> {
    let mut config = RunConfig::new("verify");
    config.suite = Some(suite.to_string());
    config.nmax = Some(nmax);
    config.seed = Some(seed);
    let checks = run_suite(suite, nmax, seed)?;
    print!("{}", config.header());
    for c in &checks {
        println!("{c}");
    }
    let failed = |kind| checks.iter().any(|c| c.kind == kind && !c.passed);
    let status = if failed(CheckKind::Exact) {
        Status::ExactFailure
    } else if failed(CheckKind::Statistical) {
        Status::StatisticalFailure
    } else {
        Status::Pass
    };
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", checks.len());
    Ok(status)
}

fn targets(measure: Measure, cycle_lengths: &[usize]) -> Vec<gelfand_core::asymptotics::CltTarget> {
    cycle_lengths
        .iter()
        .map(|&k| sigma_target(measure, k))
        .chain(UPSILON_RECORDED.map(|k| upsilon_target(measure, k)))
        .collect()
}

struct Run {
    result: ExperimentResult,
    report: Option<CltReport>,
}

fn output_path(out: &Path, measure: Measure, n: usize, ext: &str) -> PathBuf {
    out.join(format!("{measure}_n{n}.{ext}"))
}

pub fn sample(args: &SampleArgs) -> Result<Status, CliError> {
    let mut measures: Vec<Measure> = Vec::new();
    for m in &args.measure {
        let m = Measure::from(*m);
        if !measures.contains(&m) {
            measures.push(m);
        }
    }
    let mut formats = args.format.clone();
    formats.dedup();
    let mut config = RunConfig::new("sample");
    config.n = Some(args.n);
    config.trials = Some(args.trials);
    config.measure = measures.clone();
    config.seed = Some(args.seed);
    config.k = args.k.clone();
    config.out = Some(args.out.clone());
    config.format = formats.clone();
    let header = config.header();

    let experiments: Vec<ExperimentConfig> = measures
        .iter()
        .map(|&m| {
            let mut e = ExperimentConfig::new(m, args.n, args.trials, args.seed);
            e.cycle_lengths = args.k.clone();
            e.threads = args.threads;
            e
        })
        .collect();
    for e in &experiments {
        e.validate()?;
    }
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io { path: args.out.clone(), source })?;

    let mut runs = Vec::new();
    for e in &experiments {
        let result = run_experiment(e)?;
        let report = if args.trials as u64 >= MIN_REPORT_TRIALS {
            Some(clt_report(&result.stats, &targets(e.measure, &e.cycle_lengths))?)
        } else {
            None
        };
        if formats.contains(&Format::Csv) {
            let path = output_path(&args.out, e.measure, e.n, "csv");
            write_file(&path, &format!("{header}{}", result.raw_csv()))?;
            println!("wrote {}", path.display());
        }
        if formats.contains(&Format::Svg) {
            let path = output_path(&args.out, e.measure, e.n, "svg");
            write_file(&path, &overlay_svg(&result.last_shape, header.trim_end())?)?;
            println!("wrote {}", path.display());
        }
        runs.push(Run { result, report });
    }

    let ratios: Vec<CltEntry> = match runs.as_slice() {
        [a, b] if a.result.stats.count() >= 2 => {
            let (g, p) = if a.result.config.measure == Measure::Gelfand { (a, b) } else { (b, a) };
            args.k
                .iter()
                .map(|k| variance_ratio_entry(&g.result.stats, &p.result.stats, &format!("X{k}"), 2.0))
                .collect::<Result<_, _>>()?
        }
        _ => Vec::new(),
    };

    for run in &runs {
        println!("{} n={} trials={}", run.result.config.measure, args.n, run.result.stats.count());
        match &run.report {
            Some(r) => print!("{}", r.to_text()),
            None => println!("fewer than {MIN_REPORT_TRIALS} trials, no verdicts"),
        }
    }
    if !ratios.is_empty() {
        println!("variance ratios gelfand/plancherel");
        for e in &ratios {
            let verdict = if e.pass { "pass" } else { "FAIL" };
            println!("{:<14} {:>12.6} {:>12.6} {:>10.6} {:>8.3}  {verdict}", e.observable, e.empirical, e.target, e.standard_error, e.z);
        }
    }

    if formats.contains(&Format::Json) {
        let summary = json!({
            "version": VERSION,
            "config": config.to_json(),
            "runs": runs.iter().map(|r| json!({
                "measure": r.result.config.measure,
                "statistics": r.result.stats.summary_json(),
                "clt": r.report,
                "last_shape": r.result.last_shape.parts(),
            })).collect::<Vec<_>>(),
            "variance_ratio": ratios,
        });
        let path = args.out.join("summary.json");
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
        write_file(&path, &format!("{text}\n"))?;
        println!("wrote {}", path.display());
    }

    let all_pass = runs.iter().all(|r| r.report.as_ref().is_none_or(CltReport::all_pass))
        && ratios.iter().all(|e| e.pass);
    Ok(if all_pass { Status::Pass } else { Status::StatisticalFailure })
}

pub fn table_involutions(nmax: usize) -> Result<Status, CliError> {
    guard(nmax, INVOLUTION_TABLE_MAX_N, "involution table nmax")?;
    let mut config = RunConfig::new("table involutions");
    config.nmax = Some(nmax);
    let counter = InvolutionCounter::new(nmax);
    print!("{}", config.header());
    println!("n,involutions");
    for n in 0..=nmax {
        println!("{n},{}", counter.count(n).expect("within counter range"));
    }
    Ok(Status::Pass)
}

pub fn table_measure(measure: Measure, n: usize) -> Result<Status, CliError> {
    let mut config = RunConfig::new("table measure");
    config.measure = vec![measure];
    config.n = Some(n);
    let table = measure_table(n, measure)?;
    print!("{}{}", config.header(), table.to_csv());
    Ok(Status::Pass)
}

pub fn table_expectation(mu: &str, nmax: usize, measure: Measure) -> Result<Status, CliError> {
    guard(nmax, EXPECTATION_TABLE_MAX_N, "expectation table nmax")?;
    let shape: Partition = mu.parse()?;
    let mut config = RunConfig::new("table expectation");
    config.mu = Some(mu.to_string());
    config.nmax = Some(nmax);
    config.measure = vec![measure];
    print!("{}", config.header());
    println!("n,numerator,denominator,value");
    for n in 0..=nmax {
        let e = match measure {
            Measure::Gelfand => gelfand_expectation_sigma(n, &shape),
            Measure::Plancherel => plancherel_expectation_sigma(n, &shape),
        };
        println!("{n},{},{},{:.17e}", e.numer(), e.denom(), rat_to_f64(&e));
    }
    Ok(Status::Pass)
}
