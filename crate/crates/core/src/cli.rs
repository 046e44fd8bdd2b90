//! Command-line dispatch. The binary is a thin wrapper around [`dispatch`].
//!
//! Every command writes a JSON document `{"report": …, "result": …}` to
//! `--out` or stdout (CSV tables and JSON-lines batches are written bare,
//! with the report on stderr). Exit codes: 0 all checks pass, 1 a check
//! failed, 2 invalid input.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::configspace::{enumerate_configurations, Caps};
use crate::correlation::{
    characteristic_fn, characteristic_of_distribution, correlation_from_kernel, count_pushforward,
    distribution_from_kernel,
};
use crate::error::{Error, Result};
use crate::fock::{build_rep, joint_spectral_measure, DensityFamily, Layout, DEFAULT_BOSON_CUTOFF};
use crate::ground::{KernelModel, Statistics, Window, DEFAULT_TOLERANCE};
use crate::io::{function_csv, read_kernel, CheckResult, Format, KernelFile, RunReport};
use crate::kernels;
use crate::sampler::{self, SampleBatch};
use crate::verify::{self, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Default degree cap for boson and α tables.
pub const DEFAULT_CAP: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "quasifree", version, about = "Quasi-free particle densities and the point processes they induce")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a kernel file.
    GenKernel(GenKernelArgs),
    /// Correlation table ρ̈(η) = det_α(M_η)/Π b_x! on a window.
    Correlations(TableArgs),
    /// Exact configuration distribution on a window.
    Distribution(TableArgs),
    /// Characteristic functional of window counts.
    Characteristic(CharacteristicArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Draw samples as JSON lines.
    Sample(SampleArgs),
    /// Empirical correlations against the exact table.
    Estimate(EstimateArgs),
    /// Joint spectral measure of window densities in the vacuum.
    Spectral(SpectralArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Generator {
    RandomPsd,
    GaussianGrid,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Fermion,
    Boson,
    #[value(alias = "fermion_like")]
    FermionLike,
    #[value(alias = "boson_like")]
    BosonLike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance for checks and kernel validation.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct KernelInput {
    /// Kernel file.
    #[arg(long)]
    kernel: PathBuf,
    /// Override the statistics stored in the kernel file.
    #[arg(long, alias = "family")]
    statistics: Option<FamilyName>,
    /// Number of copies for the *_like families.
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Args, Debug)]
struct GenKernelArgs {
    /// Generator: random-psd, gaussian-grid or diagonal.
    #[arg(long, value_enum, default_value = "random-psd")]
    family: Generator,
    /// Number of sites (grid points for gaussian-grid).
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest eigenvalue for random-psd.
    #[arg(long)]
    top: Option<f64>,
    /// Length scale for gaussian-grid.
    #[arg(long, default_value_t = 1.0)]
    lengthscale: f64,
    /// Comma-separated diagonal entries for diagonal.
    #[arg(long)]
    values: Option<String>,
    #[arg(long, value_enum, default_value = "fermion")]
    statistics: FamilyName,
    #[arg(long)]
    l: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    kernel: KernelInput,
    /// Comma-separated site indices (all sites when absent).
    #[arg(long)]
    window: Option<String>,
    /// Maximal number of points.
    #[arg(long)]
    cap: Option<usize>,
    /// Maximal multiplicity per site.
    #[arg(long)]
    mult_cap: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CharacteristicArgs {
    #[command(flatten)]
    kernel: KernelInput,
    /// Disjoint windows separated by ';', e.g. `0,1;2`.
    #[arg(long)]
    window: String,
    /// One real argument per window, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    mult_cap: Option<u32>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random instances per suite.
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Samples for the sampler suite.
    #[arg(long, default_value_t = 100_000)]
    count: usize,
    /// Use this kernel instead of random ones.
    #[arg(long)]
    kernel: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    kernel: KernelInput,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[command(flatten)]
    kernel: KernelInput,
    #[arg(long, default_value_t = 100_000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    window: Option<String>,
    /// Largest |η| estimated.
    #[arg(long, default_value_t = 2)]
    cap: usize,
    #[arg(long)]
    mult_cap: Option<u32>,
    /// Read the batch from a JSON-lines file instead of sampling.
    #[arg(long)]
    samples: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SpectralArgs {
    #[command(flatten)]
    kernel: KernelInput,
    /// Windows separated by ';'.
    #[arg(long)]
    window: String,
    /// Boson occupation cutoff.
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

/// What a command produced: the body for `--out`, the checks, and the raw
/// input bytes that enter the config hash.
struct Outcome {
    result: Body,
    checks: Vec<CheckResult>,
    inputs: Vec<u8>,
    seed: Option<u64>,
}

enum Body {
    Json(Value),
    Text(String),
}

/// Parse `argv` (including the program name), run the command and return
/// the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let out = output_path(&cli.command);
    match run(cli.command) {
        Ok(outcome) => {
            let report = RunReport::new(echo, &outcome.inputs, outcome.seed, outcome.checks, start.elapsed().as_secs_f64());
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {}: measured {:e}, tolerance {:e}", c.name, c.measured, c.tolerance);
            }
            let code = if report.passed { EXIT_PASS } else { EXIT_CHECK_FAILED };
            match emit(out.as_deref(), report, outcome.result) {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_INVALID
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn output_path(command: &Command) -> Option<PathBuf> {
    match command {
        Command::GenKernel(a) => a.common.out.clone(),
        Command::Correlations(a) | Command::Distribution(a) => a.common.out.clone(),
        Command::Characteristic(a) => a.common.out.clone(),
        Command::Verify(a) => a.common.out.clone(),
        Command::Sample(a) => a.common.out.clone(),
        Command::Estimate(a) => a.common.out.clone(),
        Command::Spectral(a) => a.common.out.clone(),
    }
}

fn emit(out: Option<&Path>, report: RunReport, body: Body) -> Result<()> {
    let text = match body {
        Body::Json(result) => serde_json::to_string_pretty(&json!({ "report": report, "result": result }))? + "\n",
        Body::Text(text) => {
            eprintln!("{}", serde_json::to_string(&report)?);
            text
        }
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::GenKernel(a) => gen_kernel(a),
        Command::Correlations(a) => correlations(a),
        Command::Distribution(a) => distribution(a),
        Command::Characteristic(a) => characteristic(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Sample(a) => sample(a),
        Command::Estimate(a) => estimate(a),
        Command::Spectral(a) => spectral(a),
    }
}

fn statistics_of(name: FamilyName, l: Option<u32>) -> Result<Statistics> {
    let need = |l: Option<u32>| match l {
        Some(l) if l >= 1 => Ok(l),
        _ => Err(Error::Invalid("the *_like families need --l >= 1".into())),
    };
    Ok(match name {
        FamilyName::Fermion => Statistics::Fermion,
        FamilyName::Boson => Statistics::Boson,
        FamilyName::FermionLike => Statistics::FermionLike(need(l)?),
        FamilyName::BosonLike => Statistics::BosonLike(need(l)?),
    })
}

fn load(input: &KernelInput, tol: Option<f64>) -> Result<(KernelModel, Vec<u8>)> {
    let bytes = std::fs::read(&input.kernel)?;
    let mut model = read_kernel(&input.kernel, tol)?;
    match (input.statistics, input.l) {
        (Some(name), l) => model = model.with_statistics(statistics_of(name, l)?)?,
        (None, Some(l)) => {
            let s = match model.statistics() {
                Statistics::Fermion | Statistics::FermionLike(_) => Statistics::FermionLike(l),
                Statistics::Boson | Statistics::BosonLike(_) => Statistics::BosonLike(l),
            };
            model = model.with_statistics(s)?;
        }
        (None, None) => {}
    }
    Ok((model, bytes))
}

fn window_arg(text: Option<&str>, model: &KernelModel) -> Result<Window> {
    let w = match text {
        Some(t) => Window::parse(t)?,
        None => Window::full(model.size()),
    };
    w.check(model.size())?;
    Ok(w)
}

fn windows_arg(text: &str, model: &KernelModel) -> Result<Vec<Window>> {
    text.split(';').map(|t| window_arg(Some(t), model)).collect()
}

/// Caps implied by the flags: the whole window for fermions, `DEFAULT_CAP`
/// otherwise, with multiplicity `l` for fermion_like.
fn caps_arg(model: &KernelModel, window: &Window, cap: Option<usize>, mult: Option<u32>) -> Caps {
    let s = model.statistics();
    let degree = cap.unwrap_or(match s {
        Statistics::Fermion => window.len(),
        Statistics::FermionLike(l) => window.len() * l as usize,
        _ => DEFAULT_CAP,
    });
    let natural = match s {
        Statistics::Fermion => 1,
        Statistics::FermionLike(l) => l,
        _ => degree as u32,
    };
    Caps::new(degree, mult.unwrap_or(natural).min(natural.max(1)))
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn gen_kernel(a: GenKernelArgs) -> Result<Outcome> {
    let statistics = statistics_of(a.statistics, a.l)?;
    let matrix = match a.family {
        Generator::RandomPsd => {
            let top = a.top.unwrap_or(if statistics.is_fermionic() { 1.0 } else { 0.8 });
            if !(top >= 0.0) {
                return Err(Error::Invalid(format!("--top must be non-negative, got {top}")));
            }
            kernels::random_psd(a.sites, top, a.seed)
        }
        Generator::GaussianGrid => kernels::gaussian_grid(a.sites, a.lengthscale)?,
        Generator::Diagonal => {
            let text = a.values.ok_or_else(|| Error::Invalid("diagonal needs --values".into()))?;
            let values = text
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("bad value {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            kernels::diagonal(&values)
        }
    };
    let model = KernelModel::from_matrix(matrix, statistics)?;
    let text = KernelFile::from_model(&model).to_json()? + "\n";
    Ok(Outcome { result: Body::Text(text), checks: Vec::new(), inputs: Vec::new(), seed: Some(a.seed) })
}

fn correlations(a: TableArgs) -> Result<Outcome> {
    let (model, inputs) = load(&a.kernel, a.common.tol)?;
    let window = window_arg(a.window.as_deref(), &model)?;
    let caps = caps_arg(&model, &window, a.cap, a.mult_cap);
    let table = correlation_from_kernel(&model, &window, caps)?;
    let result = match Format::from(a.format) {
        Format::Json => Body::Json(to_value(&table)?),
        Format::Csv => Body::Text(function_csv(table.function(), "correlation")),
    };
    Ok(Outcome { result, checks: Vec::new(), inputs, seed: None })
}

fn distribution(a: TableArgs) -> Result<Outcome> {
    let (model, inputs) = load(&a.kernel, a.common.tol)?;
    let tol = a.common.tol.unwrap_or(DEFAULT_TOLERANCE);
    let window = window_arg(a.window.as_deref(), &model)?;
    let caps = caps_arg(&model, &window, a.cap, a.mult_cap);
    let mu = distribution_from_kernel(&model, &window, caps)?;
    let checks = vec![
        CheckResult::at_least_minus("distribution/min-probability", mu.min_probability(), tol),
        CheckResult::at_most("distribution/normalization", (mu.total_mass() + mu.tail_mass - 1.0).abs(), tol),
    ];
    let result = match Format::from(a.format) {
        Format::Json => Body::Json(to_value(&mu)?),
        Format::Csv => Body::Text(function_csv(mu.function(), "probability")),
    };
    Ok(Outcome { result, checks, inputs, seed: None })
}

fn characteristic(a: CharacteristicArgs) -> Result<Outcome> {
    let (model, inputs) = load(&a.kernel, a.common.tol)?;
    let tol = a.common.tol.unwrap_or(DEFAULT_TOLERANCE);
    let windows = windows_arg(&a.window, &model)?;
    let y = a
        .y
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("bad argument {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let union = windows.iter().fold(Window::empty(), |acc, w| acc.union(w));
    let caps = caps_arg(&model, &union, a.cap, a.mult_cap);
    let rho = correlation_from_kernel(&model, &union, caps)?;
    let value = characteristic_fn(&rho, &windows, &y)?;
    let mut checks = Vec::new();
    let mut direct = Value::Null;
    // the series is exact for fermion tables; otherwise compare when the
    // truncated distribution carries negligible tail
    let mu = distribution_from_kernel(&model, &union, caps)?;
    if mu.tail_mass <= tol {
        let d = characteristic_of_distribution(&mu, &windows, &y);
        checks.push(CheckResult::at_most("characteristic/direct-expectation", (d - value).norm(), tol));
        direct = json!({ "re": d.re, "im": d.im });
    }
    let result = json!({ "re": value.re, "im": value.im, "direct": direct });
    Ok(Outcome { result: Body::Json(result), checks, inputs, seed: None })
}

fn verify_cmd(a: VerifyArgs) -> Result<Outcome> {
    let mut inputs = Vec::new();
    let kernel = match &a.kernel {
        Some(path) => {
            inputs = std::fs::read(path)?;
            Some(read_kernel(path, a.common.tol)?)
        }
        None => None,
    };
    let opts = VerifyOptions { sites: a.sites, seed: a.seed, trials: a.trials.max(1), samples: a.count.max(1), kernel };
    let checks = verify::run_suite(&a.suite, &opts)?;
    Ok(Outcome { result: Body::Json(json!({ "suite": a.suite })), checks, inputs, seed: Some(a.seed) })
}

fn sample(a: SampleArgs) -> Result<Outcome> {
    let (model, inputs) = load(&a.kernel, a.common.tol)?;
    let batch = sampler::sample(&model, a.count, a.seed)?;
    Ok(Outcome { result: Body::Text(batch.to_json_lines()?), checks: Vec::new(), inputs, seed: Some(a.seed) })
}

fn read_batch(path: &Path, sites: usize) -> Result<SampleBatch> {
    let text = std::fs::read_to_string(path)?;
    let configurations = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch { sites, seed: 0, generator: "file".into(), configurations })
}

fn estimate(a: EstimateArgs) -> Result<Outcome> {
    let (model, mut inputs) = load(&a.kernel, a.common.tol)?;
    let window = window_arg(a.window.as_deref(), &model)?;
    let caps = caps_arg(&model, &window, Some(a.cap), a.mult_cap);
    let batch = match &a.samples {
        Some(path) => {
            inputs.extend(std::fs::read(path)?);
            read_batch(path, model.size())?
        }
        None => sampler::sample(&model, a.count, a.seed)?,
    };
    let table = correlation_from_kernel(&model, &window, caps)?;
    let mut rows = Vec::new();
    let mut flagged = 0usize;
    for eta in enumerate_configurations(&window, caps) {
        let (est, se) = sampler::estimate_correlation(&batch, &eta)?;
        let exact = table.get(&eta);
        let z = if se > 0.0 { (est - exact) / se } else { 0.0 };
        let flag = z.abs() > 4.0 || (se == 0.0 && (est - exact).abs() > 1e-12);
        flagged += usize::from(flag);
        rows.push(json!({
            "configuration": eta, "estimate": est, "stderr": se, "exact": exact, "z": z, "flagged": flag,
        }));
    }
    let result = json!({ "samples": batch.len(), "flagged": flagged, "estimates": rows });
    Ok(Outcome { result: Body::Json(result), checks: Vec::new(), inputs, seed: Some(a.seed) })
}

fn spectral(a: SpectralArgs) -> Result<Outcome> {
    let (model, inputs) = load(&a.kernel, a.common.tol)?;
    let tol = a.common.tol.unwrap_or(1e-8);
    let windows = windows_arg(&a.window, &model)?;
    let layout = match model.statistics() {
        Statistics::Fermion | Statistics::Boson => Layout::Standard,
        Statistics::FermionLike(l) | Statistics::BosonLike(l) => Layout::Copies(l),
    };
    let cutoff = if model.statistics().is_fermionic() { None } else { Some(a.cutoff.unwrap_or(DEFAULT_BOSON_CUTOFF)) };
    let rep = build_rep(&model, layout, cutoff)?;
    let mut family = DensityFamily::density(&rep);
    let mats = windows.iter().map(|w| family.matrix(w).cloned()).collect::<Result<Vec<_>>>()?;
    let atoms = joint_spectral_measure(&mats, &rep.vacuum(), a.seed)?;
    let mut checks = Vec::new();
    if model.statistics().is_fermionic() {
        let full = Window::full(model.size());
        let caps = caps_arg(&model, &full, None, None);
        let mu = distribution_from_kernel(&model, &full, caps)?;
        let law = count_pushforward(&mu, &windows);
        checks.push(CheckResult::at_most("spectral/total-variation", verify::total_variation(&atoms, &law), tol));
        let off = atoms
            .iter()
            .flat_map(|a| a.point.iter().map(|c| (c - c.round()).abs()))
            .fold(0.0, f64::max);
        checks.push(CheckResult::at_most("spectral/integer-atoms", off, 1e-6));
    }
    let result = json!({ "windows": windows, "atoms": atoms });
    Ok(Outcome { result: Body::Json(result), checks, inputs, seed: Some(a.seed) })
}
