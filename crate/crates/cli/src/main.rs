//! `procrc` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/parse/config/I/O error,
//! 3 numerical failure. Errors print one `error[<kind>]: <message>` line to
//! stderr.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use procrc_core::bench::{self, ComparisonTable, ConfigFile};
use procrc_core::data::{self, SynthSpec};
use procrc_core::model::{Classifier, Method, MethodParams, TrainingSet};
use procrc_core::{Error, ErrorKind};

#[derive(Parser)]
#[command(name = "procrc", version, about = "Sparsity-augmented collaborative representation classifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a union-of-subspaces dataset and write it (RCLS or CSV by extension).
    Synth(SynthArgs),
    /// Fit on a training file and classify every sample of a test file.
    Classify(ClassifyArgs),
    /// Run one repeated-trial experiment from a config file.
    Bench(BenchArgs),
    /// Run every method in a config file on shared splits.
    Compare(BenchArgs),
    /// Dump per-atom coefficients and per-class residuals/scores for one sample.
    Diag(DiagArgs),
    /// Convert between CSV and RCLS (format chosen by file extension).
    Convert(ConvertArgs),
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    classes: usize,
    #[arg(long)]
    ambient_dim: usize,
    #[arg(long)]
    subspace_dim: usize,
    #[arg(long)]
    per_class: usize,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MethodArgs {
    #[arg(long, default_value_t = 0.001)]
    lambda: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 50)]
    k: usize,
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    /// Fall back to the dense code when the fused code is degenerate.
    #[arg(long)]
    dense_fallback: bool,
}

impl MethodArgs {
    fn params(&self) -> MethodParams {
        MethodParams {
            lambda: self.lambda,
            gamma: self.gamma,
            k: self.k,
            epsilon: self.epsilon,
            dense_fallback: self.dense_fallback,
            ..MethodParams::default()
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    test: PathBuf,
    #[arg(long, default_value = "sa_procrc")]
    method: String,
    #[command(flatten)]
    params: MethodArgs,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    /// Also write the report as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print per-stage wall-clock times to stderr.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct DiagArgs {
    #[arg(long)]
    train: PathBuf,
    /// Take the sample from this file; otherwise it is held out of `--train`.
    #[arg(long)]
    test: Option<PathBuf>,
    /// 0-based sample index.
    #[arg(long)]
    sample_index: usize,
    /// Comma-separated methods.
    #[arg(long, default_value = "src,procrc,sa_procrc")]
    method: String,
    #[arg(long)]
    out_dir: PathBuf,
    #[command(flatten)]
    params: MethodArgs,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

type CliResult = Result<(), Error>;

fn synth(a: &SynthArgs) -> CliResult {
    let spec = SynthSpec {
        classes: a.classes,
        ambient_dim: a.ambient_dim,
        subspace_dim: a.subspace_dim,
        per_class: a.per_class,
        noise_sigma: a.noise,
        seed: a.seed,
    };
    let ds = data::synth(&spec)?;
    data::save_any(&ds, &a.out)?;
    println!(
        "wrote {} samples ({} classes, dim {}) to {}",
        ds.n_samples(),
        ds.num_classes(),
        ds.dim(),
        a.out.display()
    );
    Ok(())
}

fn classify(a: &ClassifyArgs) -> CliResult {
    let method: Method = a.method.parse()?;
    let train = data::normalize_columns(&data::load_any(&a.train)?)?;
    let test = data::normalize_columns(&data::load_any(&a.test)?)?;
    let all: Vec<usize> = (0..train.n_samples()).collect();
    let model = Classifier::fit(method, a.params.params(), TrainingSet::from_dataset(&train, &all)?)?;
    let eval = bench::evaluate(&model, train.label_names(), &test)?;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "sample,predicted,label");
    for (j, (p, t)) in eval.predicted.iter().zip(&eval.truth).enumerate() {
        let _ = writeln!(out, "{j},{p},{t}");
    }
    let _ = writeln!(out, "accuracy: {:.2}%", eval.accuracy);
    Ok(())
}

fn write_table(table: &ComparisonTable, a: &BenchArgs) -> CliResult {
    if let Some(path) = &a.csv {
        table.write_csv(path)?;
    }
    print!("{}", table.to_text());
    if a.timings {
        for r in &table.rows {
            eprintln!(
                "{}: prepare {:?}, fit {:?}, classify {:?}",
                r.config.method, r.timings.prepare, r.timings.fit, r.timings.classify
            );
        }
    }
    Ok(())
}

fn bench_cmd(a: &BenchArgs) -> CliResult {
    let exps = ConfigFile::load(&a.config)?.experiments()?;
    if exps.len() != 1 {
        return Err(Error::Config(format!(
            "bench takes exactly one [[run]], found {}; use compare",
            exps.len()
        )));
    }
    let report = bench::run_experiment(&exps[0])?;
    write_table(&report.into(), a)
}

fn compare_cmd(a: &BenchArgs) -> CliResult {
    let exps = ConfigFile::load(&a.config)?.experiments()?;
    let table = bench::compare_methods(&exps)?;
    write_table(&table, a)
}

fn diag(a: &DiagArgs) -> CliResult {
    let methods = a
        .method
        .split(',')
        .map(|m| m.trim().parse::<Method>())
        .collect::<Result<Vec<_>, _>>()?;
    let train = data::normalize_columns(&data::load_any(&a.train)?)?;
    let (train_idx, y, truth): (Vec<usize>, _, _) = match &a.test {
        Some(p) => {
            let test = data::normalize_columns(&data::load_any(p)?)?;
            check_index(a.sample_index, test.n_samples())?;
            let c = test.labels()[a.sample_index];
            (
                (0..train.n_samples()).collect(),
                test.x().column(a.sample_index),
                test.label_names()[c - 1],
            )
        }
        None => {
            check_index(a.sample_index, train.n_samples())?;
            let c = train.labels()[a.sample_index];
            (
                (0..train.n_samples()).filter(|&j| j != a.sample_index).collect(),
                train.x().column(a.sample_index),
                train.label_names()[c - 1],
            )
        }
    };
    let set = TrainingSet::from_dataset(&train, &train_idx)?;
    println!("method,predicted,label");
    for m in methods {
        let model = Classifier::fit(m, a.params.params(), set.clone())?;
        bench::dump_diagnostics(&model, &y, &a.out_dir)?;
        let d = model.classify(&y)?;
        println!("{m},{},{truth}", train.label_names()[d.predicted_class - 1]);
    }
    Ok(())
}

fn check_index(i: usize, n: usize) -> CliResult {
    if i >= n {
        return Err(Error::Input(format!("sample index {i} out of range for {n} samples")));
    }
    Ok(())
}

fn convert(a: &ConvertArgs) -> CliResult {
    let ds = data::load_any(&a.input)?;
    data::save_any(&ds, &a.out)?;
    println!("converted {} -> {}", a.input.display(), a.out.display());
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Data => 2,
        ErrorKind::Numerical => 3,
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            eprintln!("error[usage]: {}", one_line(&e.kind().to_string()));
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::Synth(a) => synth(a),
        Command::Classify(a) => classify(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Diag(a) => diag(a),
        Command::Convert(a) => convert(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.tag(), one_line(&e.to_string()));
            ExitCode::from(exit_code(&e))
        }
    }
}
