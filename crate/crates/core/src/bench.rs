//! Repeated-trial experiment harness.
//!
//! Each trial draws a seeded per-class split (seed `base_seed + t`), fits the
//! method on the training partition and classifies every test sample.
//! Accuracies are aggregated as mean ± sample standard deviation. Methods
//! compared in one table see identical splits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{self, Dataset, SynthSpec};
use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::model::{Classifier, Method, MethodParams, TrainingSet};

/// Default number of trials.
pub const DEFAULT_TRIALS: usize = 10;
/// Mixed into `base_seed` to seed the experiment-wide random projection, so it
/// does not share a stream with any split.
const PROJECTION_SEED_SALT: u64 = 0x5052_4f4a_4543_5431;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DatasetSource {
    /// A CSV or RCLS file.
    Path(PathBuf),
    Synth(SynthSpec),
}

impl DatasetSource {
    pub fn load(&self) -> Result<Dataset> {
        match self {
            DatasetSource::Path(p) => data::load_any(p),
            DatasetSource::Synth(spec) => data::synth(spec),
        }
    }
}

/// One experiment: a dataset, a method and the trial protocol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub dataset: DatasetSource,
    pub method: Method,
    pub params: MethodParams,
    pub per_class_train: usize,
    pub trials: usize,
    pub base_seed: u64,
    pub projection_dim: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSource, method: Method, per_class_train: usize) -> Self {
        Self {
            dataset,
            method,
            params: MethodParams::default(),
            per_class_train,
            trials: DEFAULT_TRIALS,
            base_seed: 0,
            projection_dim: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.per_class_train == 0 {
            return Err(Error::Config("per_class_train must be at least 1".into()));
        }
        if self.projection_dim == Some(0) {
            return Err(Error::Config("projection_dim must be positive".into()));
        }
        let p = &self.params;
        if self.method.uses_lambda() && !(p.lambda > 0.0 && p.lambda.is_finite()) {
            return Err(Error::Config(format!("lambda must be positive, got {}", p.lambda)));
        }
        if self.method.uses_gamma() && !(p.gamma >= 0.0 && p.gamma.is_finite()) {
            return Err(Error::Config(format!("gamma must be non-negative, got {}", p.gamma)));
        }
        if self.method.uses_omp() && p.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.method.uses_l1() && !(p.epsilon > 0.0 && p.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be positive, got {}", p.epsilon)));
        }
        Ok(())
    }

    /// Loads the dataset, applies the optional random projection and
    /// normalizes every sample to unit norm.
    pub fn prepare_dataset(&self) -> Result<Dataset> {
        let ds = self.dataset.load()?;
        let ds = match self.projection_dim {
            Some(d) => data::random_project(&ds, d, self.base_seed ^ PROJECTION_SEED_SALT)?,
            None => ds,
        };
        data::normalize_columns(&ds)
    }

    fn shares_protocol_with(&self, other: &ExperimentConfig) -> bool {
        self.dataset == other.dataset
            && self.per_class_train == other.per_class_train
            && self.trials == other.trials
            && self.base_seed == other.base_seed
            && self.projection_dim == other.projection_dim
    }
}

/// Per-method overrides in a config file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub method: Method,
    pub lambda: Option<f64>,
    pub gamma: Option<f64>,
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    pub residual_tol: Option<f64>,
    pub l1_max_iter: Option<usize>,
    pub dense_fallback: Option<bool>,
}

/// Experiment config file (TOML):
///
/// ```toml
/// per_class_train = 20
/// trials = 10
/// base_seed = 1
/// # projection_dim = 504
///
/// [dataset.synth]
/// classes = 10
/// ambient_dim = 50
/// subspace_dim = 5
/// per_class = 40
/// noise_sigma = 0.1
/// seed = 7
///
/// [[run]]
/// method = "sa_procrc"
/// lambda = 0.001
/// gamma = 0.5
/// k = 50
/// ```
///
/// A `dataset.path` relative path is resolved against the config file's
/// directory. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dataset: DatasetSource,
    pub per_class_train: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub base_seed: u64,
    pub projection_dim: Option<usize>,
    pub run: Vec<RunSpec>,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().replace('\n', " ")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::parse(&text)?;
        if let DatasetSource::Path(p) = &mut cfg.dataset {
            if p.is_relative() {
                if let Some(dir) = path.parent() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    /// Expands the file into one validated config per `[[run]]`.
    pub fn experiments(&self) -> Result<Vec<ExperimentConfig>> {
        if self.run.is_empty() {
            return Err(Error::Config("no [[run]] entries".into()));
        }
        self.run
            .iter()
            .map(|r| {
                let m = r.method;
                let misplaced = [
                    ("lambda", r.lambda.is_some() && !m.uses_lambda()),
                    ("gamma", r.gamma.is_some() && !m.uses_gamma()),
                    ("k", r.k.is_some() && !m.uses_omp()),
                    ("residual_tol", r.residual_tol.is_some() && !m.uses_omp()),
                    ("dense_fallback", r.dense_fallback.is_some() && !m.uses_omp()),
                    ("epsilon", r.epsilon.is_some() && !m.uses_l1()),
                    ("l1_max_iter", r.l1_max_iter.is_some() && !m.uses_l1()),
                ];
                if let Some((key, _)) = misplaced.iter().find(|(_, bad)| *bad) {
                    return Err(Error::Config(format!("method {m} does not take `{key}`")));
                }
                let d = MethodParams::default();
                let cfg = ExperimentConfig {
                    dataset: self.dataset.clone(),
                    method: m,
                    params: MethodParams {
                        lambda: r.lambda.unwrap_or(d.lambda),
                        gamma: r.gamma.unwrap_or(d.gamma),
                        k: r.k.unwrap_or(d.k),
                        epsilon: r.epsilon.unwrap_or(d.epsilon),
                        residual_tol: r.residual_tol.unwrap_or(d.residual_tol),
                        l1_max_iter: r.l1_max_iter.unwrap_or(d.l1_max_iter),
                        dense_fallback: r.dense_fallback.unwrap_or(d.dense_fallback),
                    },
                    per_class_train: self.per_class_train,
                    trials: self.trials,
                    base_seed: self.base_seed,
                    projection_dim: self.projection_dim,
                };
                cfg.validate()?;
                Ok(cfg)
            })
            .collect()
    }
}

/// Wall-clock time per stage, summed over trials. Informational only.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StageTimings {
    pub prepare: Duration,
    pub fit: Duration,
    pub classify: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    /// Percent correct on the test partition.
    pub accuracy: f64,
    pub test_indices: Vec<usize>,
    /// 1-based predicted and true classes, aligned with `test_indices`.
    pub predicted: Vec<usize>,
    pub truth: Vec<usize>,
    pub fit_time: Duration,
    pub classify_time: Duration,
}

impl TrialOutcome {
    fn results_eq(&self, other: &TrialOutcome) -> bool {
        self.trial == other.trial
            && self.seed == other.seed
            && self.accuracy.to_bits() == other.accuracy.to_bits()
            && self.test_indices == other.test_indices
            && self.predicted == other.predicted
            && self.truth == other.truth
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialOutcome>,
    pub mean: f64,
    pub std: f64,
    pub timings: StageTimings,
}

impl ExperimentReport {
    pub fn accuracies(&self) -> Vec<f64> {
        self.trials.iter().map(|t| t.accuracy).collect()
    }

    pub fn seeds(&self) -> Vec<u64> {
        self.trials.iter().map(|t| t.seed).collect()
    }

    /// Equality of everything except wall-clock timings, with floats compared
    /// bit for bit.
    pub fn results_eq(&self, other: &ExperimentReport) -> bool {
        self.config == other.config
            && self.mean.to_bits() == other.mean.to_bits()
            && self.std.to_bits() == other.std.to_bits()
            && self.trials.len() == other.trials.len()
            && self
                .trials
                .iter()
                .zip(&other.trials)
                .all(|(a, b)| a.results_eq(b))
    }
}

/// Mean and sample standard deviation (`n − 1` denominator; 0 for a single
/// value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

/// Relative reduction of the error rate going from accuracy `base` to `new`
/// (both in percent). `None` when the baseline makes no errors.
pub fn error_rate_reduction(base: f64, new: f64) -> Option<f64> {
    let base_err = 100.0 - base;
    if base_err <= 0.0 {
        return None;
    }
    Some((base_err - (100.0 - new)) / base_err)
}

fn run_trial(cfg: &ExperimentConfig, ds: &Dataset, trial: usize) -> Result<TrialOutcome> {
    let seed = cfg.base_seed.wrapping_add(trial as u64);
    let split = data::split(ds, cfg.per_class_train, seed)?;
    let start = Instant::now();
    let train = TrainingSet::from_dataset(ds, &split.train_indices)?;
    let model = Classifier::fit(cfg.method, cfg.params, train)?;
    let fit_time = start.elapsed();

    let start = Instant::now();
    let mut predicted = Vec::with_capacity(split.test_indices.len());
    let mut truth = Vec::with_capacity(split.test_indices.len());
    for &j in &split.test_indices {
        let y = ds.x().column(j);
        predicted.push(model.classify(&y)?.predicted_class);
        truth.push(ds.labels()[j]);
    }
    let classify_time = start.elapsed();
    let correct = predicted.iter().zip(&truth).filter(|(p, t)| p == t).count();
    let accuracy = correct as f64 / truth.len() as f64 * 100.0;
    Ok(TrialOutcome {
        trial,
        seed,
        accuracy,
        test_indices: split.test_indices,
        predicted,
        truth,
        fit_time,
        classify_time,
    })
}

/// Runs all trials of `cfg` on an already prepared dataset.
pub fn run_on_dataset(cfg: &ExperimentConfig, ds: &Dataset) -> Result<ExperimentReport> {
    cfg.validate()?;
    let outcomes: Vec<Result<TrialOutcome>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            run_trial(cfg, ds, t).map_err(|e| Error::Trial {
                trial: t,
                source: Box::new(e),
            })
        })
        .collect();
    let trials = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let accs: Vec<f64> = trials.iter().map(|t| t.accuracy).collect();
    let (mean, std) = mean_std(&accs);
    let timings = StageTimings {
        prepare: Duration::ZERO,
        fit: trials.iter().map(|t| t.fit_time).sum(),
        classify: trials.iter().map(|t| t.classify_time).sum(),
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        trials,
        mean,
        std,
        timings,
    })
}

/// Loads the dataset and runs every trial.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let ds = cfg.prepare_dataset()?;
    let prepare = start.elapsed();
    let mut report = run_on_dataset(cfg, &ds)?;
    report.timings.prepare = prepare;
    Ok(report)
}

/// One report per method, all on the same dataset and splits.
#[derive(Debug, Clone)]
pub struct ComparisonTable {
    pub rows: Vec<ExperimentReport>,
}

/// Runs several methods under one protocol. All configs must share the
/// dataset source, split parameters, trial count, seed and projection.
pub fn compare_methods(cfgs: &[ExperimentConfig]) -> Result<ComparisonTable> {
    let Some(first) = cfgs.first() else {
        return Err(Error::Config("no methods to compare".into()));
    };
    if let Some(bad) = cfgs.iter().position(|c| !c.shares_protocol_with(first)) {
        return Err(Error::Config(format!(
            "run {} uses a different dataset or protocol than run 0",
            bad
        )));
    }
    for c in cfgs {
        c.validate()?;
    }
    let start = Instant::now();
    let ds = first.prepare_dataset()?;
    let prepare = start.elapsed();
    let rows = cfgs
        .iter()
        .map(|c| {
            let mut r = run_on_dataset(c, &ds)?;
            r.timings.prepare = prepare;
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonTable { rows })
}

/// Test samples (as `(trial, dataset index)`) that `baseline` misclassifies
/// and `candidate` gets right. Both reports must come from the same splits.
pub fn corrections(baseline: &ExperimentReport, candidate: &ExperimentReport) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (b, c) in baseline.trials.iter().zip(&candidate.trials) {
        debug_assert_eq!(b.test_indices, c.test_indices);
        for (i, &j) in b.test_indices.iter().enumerate() {
            if b.predicted[i] != b.truth[i] && c.predicted[i] == c.truth[i] {
                out.push((b.trial, j));
            }
        }
    }
    out
}

impl ComparisonTable {
    /// `method,mean,std,trials,seed`, one row per method.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("method,mean,std,trials,seed\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.config.method, r.mean, r.std, r.config.trials, r.config.base_seed
            );
        }
        s
    }

    /// Human-readable table; the last column is the error-rate reduction
    /// relative to the first row.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let base = self.rows.first();
        let base_name = base.map_or("", |b| b.config.method.name());
        let _ = writeln!(
            s,
            "{:<10} {:>16} {:>7} {:>18}",
            "method",
            "accuracy (%)",
            "trials",
            format!("err.red. vs {base_name}")
        );
        for r in &self.rows {
            let red = base
                .and_then(|b| error_rate_reduction(b.mean, r.mean))
                .map_or_else(|| "-".to_string(), |v| format!("{:.1}%", v * 100.0));
            let _ = writeln!(
                s,
                "{:<10} {:>16} {:>7} {:>18}",
                r.config.method.name(),
                format!("{:.2} ± {:.2}", r.mean, r.std),
                r.config.trials,
                red
            );
        }
        s
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let csv = self.to_csv();
        write_atomic(path.as_ref(), |w| w.write_all(csv.as_bytes()))
    }
}

impl From<ExperimentReport> for ComparisonTable {
    fn from(r: ExperimentReport) -> Self {
        Self { rows: vec![r] }
    }
}

/// Predictions for a labelled test set, reported with the training set's
/// original label values.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub predicted: Vec<i64>,
    pub truth: Vec<i64>,
    /// Percent of test samples whose predicted label equals their own label.
    pub accuracy: f64,
}

/// Classifies every column of `test` with `model`. `train_label_names` maps
/// the model's dense classes back to original label values; test labels are
/// compared by original value, so the two files may number classes
/// differently.
pub fn evaluate(model: &Classifier, train_label_names: &[i64], test: &Dataset) -> Result<Evaluation> {
    if test.dim() != model.training_set().x().rows() {
        return Err(Error::Dimension(format!(
            "test samples have {} features, training samples {}",
            test.dim(),
            model.training_set().x().rows()
        )));
    }
    let predicted = (0..test.n_samples())
        .into_par_iter()
        .map(|j| {
            let d = model.classify(&test.x().column(j))?;
            Ok(train_label_names[d.predicted_class - 1])
        })
        .collect::<Result<Vec<i64>>>()?;
    let truth: Vec<i64> = test
        .labels()
        .iter()
        .map(|&c| test.label_names()[c - 1])
        .collect();
    let correct = predicted.iter().zip(&truth).filter(|(p, t)| p == t).count();
    Ok(Evaluation {
        accuracy: correct as f64 / truth.len() as f64 * 100.0,
        predicted,
        truth,
    })
}

/// Paths written by [`dump_diagnostics`].
#[derive(Debug, Clone)]
pub struct DiagnosticFiles {
    pub coefficients: PathBuf,
    pub residuals: PathBuf,
    pub scores: PathBuf,
}

/// Writes the per-sample breakdown of `model` on `y` as three CSV files
/// (`index,class,value`) in `out_dir`, prefixed by the method name:
/// coefficients per atom, residual `‖y − Xᵢαᵢ‖₂` per class, and class score
/// `L·α` per class. For the sparsity-augmented methods `α` is the fused code.
pub fn dump_diagnostics(
    model: &Classifier,
    y: &crate::linalg::Vector,
    out_dir: impl AsRef<Path>,
) -> Result<DiagnosticFiles> {
    let out_dir = out_dir.as_ref();
    let e = model.explain(y)?;
    fs::create_dir_all(out_dir).map_err(|err| Error::io(out_dir, err))?;
    let name = model.method().name();
    let files = DiagnosticFiles {
        coefficients: out_dir.join(format!("{name}_coefficients.csv")),
        residuals: out_dir.join(format!("{name}_residuals.csv")),
        scores: out_dir.join(format!("{name}_scores.csv")),
    };
    let labels = model.training_set().labels();
    write_atomic(&files.coefficients, |w| {
        writeln!(w, "index,class,value")?;
        for (j, v) in e.coefficients.iter().enumerate() {
            writeln!(w, "{},{},{v}", j + 1, labels[j])?;
        }
        Ok(())
    })?;
    let per_class = |path: &Path, values: &[f64]| {
        write_atomic(path, |w| {
            writeln!(w, "index,class,value")?;
            for (i, v) in values.iter().enumerate() {
                writeln!(w, "{},{},{v}", i + 1, i + 1)?;
            }
            Ok(())
        })
    };
    per_class(&files.residuals, &e.residuals)?;
    per_class(&files.scores, &e.class_sums)?;
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synth_source(noise: f64) -> DatasetSource {
        DatasetSource::Synth(SynthSpec {
            classes: 4,
            ambient_dim: 20,
            subspace_dim: 3,
            per_class: 12,
            noise_sigma: noise,
            seed: 5,
        })
    }

    #[test]
    fn mean_std_sample_denominator() {
        let (m, s) = mean_std(&[90.0, 92.0, 94.0]);
        assert_eq!(m, 92.0);
        assert_eq!(s, 2.0);
        assert_eq!(mean_std(&[50.0]), (50.0, 0.0));
    }

    #[test]
    fn error_rate_reduction_examples() {
        let r = error_rate_reduction(90.0, 95.0).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
        assert_eq!(error_rate_reduction(100.0, 100.0), None);
    }

    #[test]
    fn config_file_parses_and_expands() {
        let text = r#"
            per_class_train = 6
            trials = 3
            base_seed = 9

            [dataset.synth]
            classes = 3
            ambient_dim = 10
            subspace_dim = 2
            per_class = 10
            noise_sigma = 0.05
            seed = 1

            [[run]]
            method = "crc"
            lambda = 0.01

            [[run]]
            method = "sa_procrc"
            gamma = 0.2
            k = 5
        "#;
        let cfg = ConfigFile::parse(text).unwrap();
        let exps = cfg.experiments().unwrap();
        assert_eq!(exps.len(), 2);
        assert_eq!(exps[0].params.lambda, 0.01);
        assert_eq!(exps[1].params.gamma, 0.2);
        assert_eq!(exps[1].params.k, 5);
        assert_eq!(exps[1].trials, 3);
    }

    #[test]
    fn config_rejects_unknown_and_misplaced_keys() {
        let base = "per_class_train = 2\n[dataset]\npath = \"x.rcls\"\n";
        let unknown = format!("{base}colour = 1\n[[run]]\nmethod = \"crc\"\n");
        assert!(matches!(ConfigFile::parse(&unknown), Err(Error::Config(_))));
        let unknown_run = format!("{base}[[run]]\nmethod = \"crc\"\nlamda = 0.1\n");
        assert!(matches!(ConfigFile::parse(&unknown_run), Err(Error::Config(_))));
        let misplaced = format!("{base}[[run]]\nmethod = \"crc\"\ngamma = 0.1\n");
        let cfg = ConfigFile::parse(&misplaced).unwrap();
        assert!(matches!(cfg.experiments(), Err(Error::Config(_))));
        let zero_trials = format!("trials = 0\n{base}[[run]]\nmethod = \"crc\"\n");
        let cfg = ConfigFile::parse(&zero_trials).unwrap();
        assert!(matches!(cfg.experiments(), Err(Error::Config(_))));
    }

    #[test]
    fn split_precondition_surfaces_with_trial_index() {
        let mut cfg = ExperimentConfig::new(synth_source(0.0), Method::Crc, 12);
        cfg.trials = 1;
        match run_experiment(&cfg) {
            Err(Error::Trial { trial: 0, source }) => {
                assert!(matches!(*source, Error::Dataset(_)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let mut cfg = ExperimentConfig::new(synth_source(0.2), Method::SaProcrc, 6);
        cfg.trials = 3;
        cfg.params.k = 8;
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert!(a.results_eq(&b));
        assert_eq!(a.seeds(), vec![0, 1, 2]);
        let (m, s) = mean_std(&a.accuracies());
        assert_eq!(m, a.mean);
        assert_eq!(s, a.std);
        assert!(a.accuracies().iter().all(|&x| (0.0..=100.0).contains(&x)));
    }

    #[test]
    fn compare_rejects_mismatched_protocols() {
        let a = ExperimentConfig::new(synth_source(0.1), Method::Crc, 6);
        let mut b = ExperimentConfig::new(synth_source(0.1), Method::Procrc, 6);
        b.base_seed = 3;
        assert!(matches!(compare_methods(&[a.clone(), b]), Err(Error::Config(_))));
        let c = ExperimentConfig::new(synth_source(0.3), Method::Procrc, 6);
        assert!(matches!(compare_methods(&[a, c]), Err(Error::Config(_))));
        assert!(matches!(compare_methods(&[]), Err(Error::Config(_))));
    }

    #[test]
    fn table_shapes() {
        let mut a = ExperimentConfig::new(synth_source(0.1), Method::Crc, 6);
        a.trials = 2;
        let table = compare_methods(&[a.clone()]).unwrap();
        assert_eq!(table.to_csv().lines().count(), 2);
        let twice = compare_methods(&[a.clone(), a]).unwrap();
        let csv = twice.to_csv();
        let lines: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(lines[0], lines[1]);
        assert!(twice.to_text().contains("crc"));
    }
}
