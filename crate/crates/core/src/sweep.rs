//! Deterministic τ sweeps written as CSV plus a JSON manifest.
//!
//! Every sweep samples `steps` points uniformly on `[0, tau_max]`, both ends
//! included. Cells are computed in parallel and assembled in
//! `(sample_id, tau)` order, so output bytes do not depend on thread count.
//!
//! CSV columns: `sample_id,tau,negativity,min_pt_eigenvalue,bell_expectation,is_npt`.
//! Bell sweeps append `bell_numeric,violates_bound`. Floats use 17
//! significant digits; a missing value is an empty field.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::channel::{apply_channel, ChannelMode, Tau};
use crate::entanglement::{invariant_eigenvalue_check, pt_report_with_tolerance};
use crate::nonlocality::{
    analytic_bell_expectation, death_time_by_bisection, dfs_bell_operator, nonlocality_verdict, CLASSICAL_BOUND,
};
use crate::states::{evolved_rho_alpha_beta, haar_random_pure, FamilyParams, RandomEnsembleSpec};
use crate::{Error, Result};

/// Default parameters and tolerances; every entry has a matching CLI flag.
///
/// | name            | value   | flag           |
/// |-----------------|---------|----------------|
/// | `ALPHA`, `BETA` | 0.999   | `--alpha`, `--beta` |
/// | `TAU_MAX`       | 10      | `--tau-max`    |
/// | `STEPS`         | 200     | `--steps`      |
/// | `SAMPLES`       | 100     | `--samples`    |
/// | `SEED`          | 42      | `--seed`       |
/// | `NPT_TOLERANCE` | 1e-10   | `--npt-tol`    |
pub mod defaults {
    pub const ALPHA: f64 = 0.999;
    pub const BETA: f64 = 0.999;
    pub const TAU_MAX: f64 = 10.0;
    pub const STEPS: usize = 200;
    pub const SAMPLES: usize = 100;
    pub const SEED: u64 = 42;
    pub const NPT_TOLERANCE: f64 = crate::entanglement::NPT_TOLERANCE;
    /// Upper end of the bisection bracket for the Bell death time.
    pub const DEATH_TIME_BRACKET: f64 = 100.0;
    pub const DEATH_TIME_TOL: f64 = 1e-10;
}

pub const CSV_HEADER: &str = "sample_id,tau,negativity,min_pt_eigenvalue,bell_expectation,is_npt";
pub const BELL_CSV_HEADER: &str =
    "sample_id,tau,negativity,min_pt_eigenvalue,bell_expectation,is_npt,bell_numeric,violates_bound";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    Family,
    Random,
    Bell,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub alpha: f64,
    pub beta: f64,
    pub tau_max: f64,
    pub steps: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub npt_tolerance: f64,
    pub out_path: PathBuf,
}

impl SweepConfig {
    pub fn new(family: SweepFamily, out_path: impl Into<PathBuf>) -> Self {
        SweepConfig {
            family,
            alpha: defaults::ALPHA,
            beta: defaults::BETA,
            tau_max: defaults::TAU_MAX,
            steps: defaults::STEPS,
            n_samples: defaults::SAMPLES,
            seed: defaults::SEED,
            npt_tolerance: defaults::NPT_TOLERANCE,
            out_path: out_path.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::param("steps", self.steps as f64, "must be at least 2"));
        }
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return Err(Error::param("tau_max", self.tau_max, "must be finite and positive"));
        }
        if self.n_samples == 0 {
            return Err(Error::param("samples", 0.0, "must be at least 1"));
        }
        if !(self.npt_tolerance.is_finite() && self.npt_tolerance >= 0.0) {
            return Err(Error::param("npt_tolerance", self.npt_tolerance, "must be finite and non-negative"));
        }
        if self.family != SweepFamily::Random {
            FamilyParams::new(self.alpha, self.beta)?;
        }
        Ok(())
    }

    fn params(&self) -> Result<FamilyParams> {
        FamilyParams::new(self.alpha, self.beta)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub sample_id: usize,
    pub tau: f64,
    pub negativity: f64,
    pub min_pt_eigenvalue: f64,
    pub bell_expectation: Option<f64>,
    pub is_npt: bool,
    /// Bell sweeps only.
    pub bell_numeric: Option<f64>,
    /// Bell sweeps only.
    pub violates_bound: Option<bool>,
}

/// `steps` points on `[0, tau_max]`, endpoints exact.
pub fn tau_grid(tau_max: f64, steps: usize) -> Result<Vec<Tau>> {
    if steps < 2 {
        return Err(Error::param("steps", steps as f64, "must be at least 2"));
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            let t = if k == steps - 1 { tau_max } else { tau_max * k as f64 / last };
            Tau::new(t)
        })
        .collect()
}

pub fn family_records(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let params = config.params()?;
    let grid = tau_grid(config.tau_max, config.steps)?;
    Ok(grid
        .par_iter()
        .map(|&t| {
            let report = pt_report_with_tolerance(&evolved_rho_alpha_beta(params, t), config.npt_tolerance);
            SweepRecord {
                sample_id: 0,
                tau: t.value(),
                negativity: report.negativity,
                min_pt_eigenvalue: report.min_eigenvalue,
                bell_expectation: Some(analytic_bell_expectation(params, t)),
                is_npt: report.is_npt,
                bell_numeric: None,
                violates_bound: None,
            }
        })
        .collect())
}

pub fn random_records(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let grid = tau_grid(config.tau_max, config.steps)?;
    let states = haar_random_pure(&RandomEnsembleSpec {
        n_samples: config.n_samples,
        seed: config.seed,
    })?;
    let cells: Vec<(usize, Tau)> = (0..states.len())
        .flat_map(|s| grid.iter().map(move |&t| (s, t)))
        .collect();
    Ok(cells
        .par_iter()
        .map(|&(s, t)| {
            let rho = apply_channel(&states[s].projector(), t, ChannelMode::Analytic);
            let report = pt_report_with_tolerance(&rho, config.npt_tolerance);
            SweepRecord {
                sample_id: s,
                tau: t.value(),
                negativity: report.negativity,
                min_pt_eigenvalue: report.min_eigenvalue,
                bell_expectation: None,
                is_npt: report.is_npt,
                bell_numeric: None,
                violates_bound: None,
            }
        })
        .collect())
}

pub fn bell_records(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let params = config.params()?;
    let grid = tau_grid(config.tau_max, config.steps)?;
    let op = dfs_bell_operator();
    Ok(grid
        .par_iter()
        .map(|&t| {
            let rho = evolved_rho_alpha_beta(params, t);
            let report = pt_report_with_tolerance(&rho, config.npt_tolerance);
            let analytic = analytic_bell_expectation(params, t);
            SweepRecord {
                sample_id: 0,
                tau: t.value(),
                negativity: report.negativity,
                min_pt_eigenvalue: report.min_eigenvalue,
                bell_expectation: Some(analytic),
                is_npt: report.is_npt,
                bell_numeric: Some(op.expectation(&rho)),
                violates_bound: Some(analytic > CLASSICAL_BOUND),
            }
        })
        .collect())
}

fn fmt_float(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").expect("writing to a String");
}

fn fmt_opt_float(out: &mut String, v: Option<f64>) {
    if let Some(v) = v {
        fmt_float(out, v);
    }
}

/// Renders records as CSV. The Bell layout is used when any record carries
/// a numeric Bell value.
pub fn render_csv(records: &[SweepRecord]) -> String {
    let bell_layout = records.iter().any(|r| r.bell_numeric.is_some());
    let mut out = String::with_capacity(128 * (records.len() + 1));
    out.push_str(if bell_layout { BELL_CSV_HEADER } else { CSV_HEADER });
    out.push('\n');
    for r in records {
        write!(out, "{},", r.sample_id).expect("writing to a String");
        fmt_float(&mut out, r.tau);
        out.push(',');
        fmt_float(&mut out, r.negativity);
        out.push(',');
        fmt_float(&mut out, r.min_pt_eigenvalue);
        out.push(',');
        fmt_opt_float(&mut out, r.bell_expectation);
        write!(out, ",{}", r.is_npt).expect("writing to a String");
        if bell_layout {
            out.push(',');
            fmt_opt_float(&mut out, r.bell_numeric);
            out.push(',');
            if let Some(v) = r.violates_bound {
                write!(out, "{v}").expect("writing to a String");
            }
        }
        out.push('\n');
    }
    out
}

/// `data.csv` → `data.manifest.json`.
pub fn manifest_path(out_path: &Path) -> PathBuf {
    out_path.with_extension("manifest.json")
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub artifact: &'static str,
    pub version: &'static str,
    pub config: SweepConfig,
    pub seed: u64,
    pub rows: usize,
    pub wall_clock_seconds: f64,
    pub summary: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub csv_path: PathBuf,
    pub manifest_path: PathBuf,
    pub manifest: Manifest,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn finish(config: &SweepConfig, records: Vec<SweepRecord>, summary: serde_json::Value, started: Instant) -> Result<SweepOutput> {
    let csv_path = config.out_path.clone();
    write_file(&csv_path, &render_csv(&records))?;
    let manifest = Manifest {
        artifact: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        seed: config.seed,
        rows: records.len(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        summary,
    };
    let manifest_path = manifest_path(&csv_path);
    write_file(&manifest_path, &serde_json::to_string_pretty(&manifest)?)?;
    Ok(SweepOutput {
        records,
        csv_path,
        manifest_path,
        manifest,
    })
}

pub fn run_family_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    let started = Instant::now();
    let records = family_records(config)?;
    let params = config.params()?;
    let grid = tau_grid(config.tau_max, config.steps)?;
    let invariant = invariant_eigenvalue_check(params, &grid)?;
    let summary = json!({
        "invariant_eigenvalue": invariant,
        "negativity_start": records.first().map(|r| r.negativity),
        "negativity_end": records.last().map(|r| r.negativity),
    });
    finish(config, records, summary, started)
}

pub fn run_random_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    let started = Instant::now();
    let records = random_records(config)?;
    let per_sample: Vec<&[SweepRecord]> = records.chunks(config.steps).collect();
    let all_npt = per_sample.iter().filter(|s| s.iter().all(|r| r.is_npt)).count();
    let monotone = per_sample
        .iter()
        .filter(|s| s.windows(2).all(|w| w[1].negativity <= w[0].negativity + 1e-10))
        .count();
    let summary = json!({
        "samples": per_sample.len(),
        "samples_npt_at_all_times": all_npt,
        "samples_with_monotone_negativity": monotone,
    });
    finish(config, records, summary, started)
}

pub fn run_bell_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    let started = Instant::now();
    let records = bell_records(config)?;
    let params = config.params()?;
    let verdict = nonlocality_verdict(params);
    let bisected = death_time_by_bisection(params, defaults::DEATH_TIME_BRACKET, defaults::DEATH_TIME_TOL);
    let summary = json!({
        "verdict": verdict,
        "death_time_bisection": bisected,
        "classical_bound": CLASSICAL_BOUND,
    });
    finish(config, records, summary, started)
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    match config.family {
        SweepFamily::Family => run_family_sweep(config),
        SweepFamily::Random => run_random_sweep(config),
        SweepFamily::Bell => run_bell_sweep(config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: SweepFamily) -> SweepConfig {
        SweepConfig::new(family, "unused.csv")
    }

    #[test]
    fn grid_contract() {
        let g = tau_grid(1.0, 2).unwrap();
        assert_eq!(g.iter().map(|t| t.value()).collect::<Vec<_>>(), vec![0.0, 1.0]);
        let g = tau_grid(10.0, 200).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[199].value(), 10.0);
        assert!(g.windows(2).all(|w| w[0].value() < w[1].value()));
        assert!(tau_grid(1.0, 1).is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = config(SweepFamily::Family);
        assert!(c.validate().is_ok());
        c.steps = 1;
        assert!(c.validate().is_err());
        let mut c = config(SweepFamily::Family);
        c.tau_max = 0.0;
        assert!(c.validate().is_err());
        let mut c = config(SweepFamily::Bell);
        c.beta = 1.2;
        assert!(c.validate().is_err());
        let mut c = config(SweepFamily::Random);
        c.beta = 1.2; // ignored by random sweeps
        assert!(c.validate().is_ok());
        c.n_samples = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn family_sweep_reproduces_plateau() {
        let records = family_records(&config(SweepFamily::Family)).unwrap();
        assert_eq!(records.len(), 200);
        assert!((records[0].negativity - 0.998501).abs() <= 1e-6);
        assert!(records.windows(2).all(|w| w[1].negativity <= w[0].negativity + 1e-12));
        assert!(records[199].negativity >= 0.9975);
        assert!(records.iter().all(|r| r.is_npt && r.sample_id == 0));
    }

    #[test]
    fn dfs_only_family_is_static() {
        let mut c = config(SweepFamily::Family);
        c.beta = 1.0;
        c.steps = 11;
        for r in family_records(&c).unwrap() {
            assert!((r.negativity - 1.0).abs() <= 1e-11);
            assert!((r.bell_expectation.unwrap() - 2.8729).abs() <= 1e-4);
        }
    }

    #[test]
    fn bell_sweep_columns() {
        let mut c = config(SweepFamily::Bell);
        c.alpha = 0.999;
        c.beta = 0.65;
        c.tau_max = 1.0;
        c.steps = 101;
        let records = bell_records(&c).unwrap();
        for r in &records {
            assert!((r.bell_expectation.unwrap() - r.bell_numeric.unwrap()).abs() <= 1e-12);
        }
        let crossings = records
            .windows(2)
            .filter(|w| w[0].violates_bound != w[1].violates_bound)
            .collect::<Vec<_>>();
        assert_eq!(crossings.len(), 1);
        assert!(crossings[0][0].tau < 0.354 && crossings[0][1].tau > 0.354);

        c.beta = 0.7;
        c.tau_max = 10.0;
        let min = bell_records(&c).unwrap().iter().map(|r| r.bell_expectation.unwrap()).fold(f64::INFINITY, f64::min);
        assert!(min > 2.0);
    }

    #[test]
    fn random_sweep_rows_are_ordered() {
        let mut c = config(SweepFamily::Random);
        c.n_samples = 3;
        c.steps = 5;
        let records = random_records(&c).unwrap();
        assert_eq!(records.len(), 15);
        for (i, r) in records.iter().enumerate() {
            assert_eq!(r.sample_id, i / 5);
            assert!(r.bell_expectation.is_none());
        }
    }

    #[test]
    fn csv_layout() {
        let mut c = config(SweepFamily::Random);
        c.n_samples = 1;
        c.steps = 2;
        let text = render_csv(&random_records(&c).unwrap());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 6);
        assert_eq!(row[0], "0");
        assert_eq!(row[1], "0.0000000000000000e0");
        assert_eq!(row[4], "");
        assert_eq!(row[5], "true");
        let neg: f64 = row[2].parse().unwrap();
        assert!(neg > 0.0);
    }

    #[test]
    fn manifest_path_suffix() {
        assert_eq!(manifest_path(Path::new("out/data.csv")), PathBuf::from("out/data.manifest.json"));
    }
}
