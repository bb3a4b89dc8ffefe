//! Command-line surface. [`run`] parses arguments and executes one command
//! in-process; [`execute`] additionally applies `CQSEQDEC_MAX_DIM` and
//! writes the record, and is all the binary does.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 a checked
//! bound was violated beyond tolerance (the record is still written).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use crate::decoder::{
    capacity_lower_bound, coherent_decode, decoding_stats, random_coding_experiment, simplex_grid,
    success_prob_dilated, DecoderSpec, SequentialDecoder,
};
use crate::dilation::{dilate_binary, dilate_general, BinaryPovm, DilatedMeasurement, Povm, ACCEPT};
use crate::error::{Error, Result};
use crate::gentle::{dilated_gentle, forward_backward, gentle_gap, polar_reversal, ReversalReport};
use crate::hypothesis::neyman_pearson;
use crate::io::{self, matrix_value, real, reals, ResultRecord};
use crate::linalg::{c, set_max_total_dim, tol, unitarity_defect, ComplexVector, DensityOperator, Sampler, Seed};
use crate::sweep::{run_sweep, Suite, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BOUND_VIOLATED: i32 = 3;

/// Environment variable overriding the dimension cap.
pub const MAX_DIM_ENV: &str = "CQSEQDEC_MAX_DIM";

/// Duality gap above which `hypotest --dual-check` reports a violation.
pub const DUAL_GAP_TOL: f64 = 1e-7;

#[derive(Debug, Parser)]
#[command(name = "cqseqdec", version, about = "Sequential decoding of classical-quantum channels")]
pub struct Cli {
    /// Write the result record here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized commands (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Require an explicit --seed for randomized commands.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal test between two states at type-I error eps.
    Hypotest(HypotestArgs),
    /// Unitary dilation of a POVM.
    Dilate(DilateArgs),
    /// Sequential decoding of a codebook over a channel.
    Decode(DecodeArgs),
    /// Randomized sweep of one family of inequalities.
    BoundsCheck(BoundsCheckArgs),
    /// One-shot capacity lower bound over prior and eps' grids.
    Capacity(CapacityArgs),
    /// Gentle-measurement disturbance of a state under a list of operators.
    Gentle(GentleArgs),
    /// Random-coding experiment for the sequential decoder.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct HypotestArgs {
    #[arg(long)]
    pub rho: PathBuf,
    #[arg(long)]
    pub sigma: PathBuf,
    #[arg(long)]
    pub eps: f64,
    /// Exit 3 when the duality gap exceeds 1e-7 or the test is infeasible.
    #[arg(long)]
    pub dual_check: bool,
}

#[derive(Debug, Args)]
pub struct DilateArgs {
    #[arg(long)]
    pub povm: PathBuf,
    /// Two-outcome POVM {I − Λ, Λ}; element 1 is the accept effect Λ.
    #[arg(long)]
    pub binary: bool,
    /// Also compare dilated and Born statistics on this state (exit 3 above 1e-9).
    #[arg(long)]
    pub rho: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecodeMode {
    Exact,
    Dilated,
    Trajectory,
    Coherent,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long)]
    pub codebook: PathBuf,
    #[arg(long)]
    pub eps_prime: f64,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: DecodeMode,
    /// Sampled runs per message in trajectory mode.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Sen,
    Lemma31,
    Gentle,
    Polar,
    ForwardBackward,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Sen => Suite::Sen,
            SuiteArg::Lemma31 => Suite::Lemma31,
            SuiteArg::Gentle => Suite::Gentle,
            SuiteArg::Polar => Suite::Polar,
            SuiteArg::ForwardBackward => Suite::ForwardBackward,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsCheckArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1000)]
    pub instances: usize,
    /// Largest instance dimension.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Largest measurement sequence length.
    #[arg(long, default_value_t = 4)]
    pub seq_len: usize,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long)]
    pub eps: f64,
    /// `a:b:step` (inclusive) or a single value.
    #[arg(long)]
    pub eps_prime_grid: String,
    /// `file` (the channel file's prior), `simplex:N`, or explicit
    /// distributions `p1,p2,…;q1,q2,…`.
    #[arg(long, default_value = "file")]
    pub prior_grid: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GentleScheme {
    /// `‖ρ − √Λρ√Λ‖₁` for each operator separately.
    Gentle,
    /// The same on system ⊗ probe through the square-root dilation.
    Dilated,
    /// Polar-decomposition reversal of the projector sequence.
    Polar,
    /// Forward-backward reversal of the projector sequence.
    ForwardBackward,
}

#[derive(Debug, Args)]
pub struct GentleArgs {
    #[arg(long)]
    pub rho: PathBuf,
    /// Operator list file `{"elements": [...]}`: effects, or projectors for
    /// the reversal schemes.
    #[arg(long)]
    pub ops: PathBuf,
    #[arg(long, value_enum, default_value = "gentle")]
    pub scheme: GentleScheme,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub channel: PathBuf,
    #[arg(long)]
    pub messages: usize,
    #[arg(long)]
    pub eps_prime: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub record: Option<ResultRecord>,
    /// Text for stderr (errors, or clap's help and version output).
    pub message: Option<String>,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn failure(exit_code: i32, message: String, out: Option<PathBuf>) -> Self {
        Outcome {
            exit_code,
            record: None,
            message: Some(message),
            out,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    if e.is_validation() || matches!(e, Error::Io(_)) {
        EXIT_INVALID
    } else {
        EXIT_INTERNAL
    }
}

fn path_value(p: &Path) -> Value {
    Value::from(p.display().to_string())
}

/// Parses and executes one command without touching the process
/// environment, stdout or the filesystem beyond the command's inputs.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return Outcome::failure(code, e.render().to_string(), None);
        }
    };
    let out = cli.out.clone();
    let started = Instant::now();
    match dispatch(&cli) {
        Ok((mut record, violated)) => {
            record.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
            Outcome {
                exit_code: if violated { EXIT_BOUND_VIOLATED } else { EXIT_OK },
                record: Some(record),
                message: violated.then(|| "bound violated beyond tolerance".to_string()),
                out,
            }
        }
        Err(e) => Outcome::failure(exit_code_for(&e), format!("error: {e}"), out),
    }
}

/// Entry point of the binary: applies `CQSEQDEC_MAX_DIM`, runs the command,
/// prints or writes the record and returns the exit code.
pub fn execute<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    if let Ok(value) = std::env::var(MAX_DIM_ENV) {
        match value.trim().parse::<usize>() {
            Ok(dim) if dim > 0 => set_max_total_dim(dim),
            _ => {
                eprintln!("error: {MAX_DIM_ENV} must be a positive integer, got {value:?}");
                return EXIT_INVALID;
            }
        }
    }
    let outcome = run(args);
    if let Some(record) = &outcome.record {
        match &outcome.out {
            Some(path) => {
                if let Err(e) = record.save(path) {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_INVALID;
                }
            }
            None => print!("{}", record.to_json()),
        }
    }
    if let Some(message) = &outcome.message {
        if outcome.exit_code == EXIT_OK {
            print!("{message}");
        } else {
            eprintln!("{}", message.trim_end());
        }
    }
    outcome.exit_code
}

fn is_randomized(command: &Command) -> bool {
    match command {
        Command::Decode(a) => a.mode == DecodeMode::Trajectory,
        Command::BoundsCheck(_) | Command::Experiment(_) => true,
        _ => false,
    }
}

type Dispatched = (ResultRecord, bool);

fn dispatch(cli: &Cli) -> Result<Dispatched> {
    if cli.strict && cli.seed.is_none() && is_randomized(&cli.command) {
        return Err(Error::Validation("--strict requires --seed for randomized commands".into()));
    }
    let seed = Seed(cli.seed.unwrap_or(0));
    let (mut record, violated) = match &cli.command {
        Command::Hypotest(a) => hypotest(a, seed),
        Command::Dilate(a) => dilate(a, seed),
        Command::Decode(a) => decode(a, seed),
        Command::BoundsCheck(a) => bounds_check(a, seed),
        Command::Capacity(a) => capacity(a, seed),
        Command::Gentle(a) => gentle(a, seed),
        Command::Experiment(a) => experiment(a, seed),
    }?;
    record.param("strict", cli.strict);
    Ok((record, violated))
}

fn hypotest(a: &HypotestArgs, seed: Seed) -> Result<Dispatched> {
    let rho = io::load_state(&a.rho)?;
    let sigma = io::load_state(&a.sigma)?;
    let test = neyman_pearson(&rho, &sigma, a.eps)?;
    let mut r = ResultRecord::new("hypotest", seed);
    r.param("rho", path_value(&a.rho))
        .param("sigma", path_value(&a.sigma))
        .param("eps", real(a.eps))
        .param("dual_check", a.dual_check);
    let gap = test.duality_gap();
    let feasible = test.type1_error <= a.eps + tol::CONSTRUCTION;
    r.output_real("beta", test.beta())
        .output_real("d_h_bits", test.bits())
        .output_real("duality_gap", gap)
        .output_real("type1_error", test.type1_error)
        .output_real("threshold", test.threshold)
        .output_real("boundary_fraction", test.boundary_fraction)
        .output_real("dual_value", test.dual_value)
        .output("feasible", feasible);
    let violated = a.dual_check && (gap.abs() > DUAL_GAP_TOL || !feasible);
    Ok((r, violated))
}

fn dilation_for(a: &DilateArgs) -> Result<(DilatedMeasurement, Povm)> {
    if a.binary {
        let elements = io::load_operators(&a.povm)?;
        if elements.len() != 2 {
            return Err(Error::Validation(format!(
                "{}: --binary needs exactly 2 elements, found {}",
                a.povm.display(),
                elements.len()
            )));
        }
        let povm = Povm::new(elements.clone())?;
        let binary = BinaryPovm::new(elements[ACCEPT].clone())?;
        Ok((dilate_binary(&binary)?, povm))
    } else {
        let povm = io::load_povm(&a.povm)?;
        Ok((dilate_general(&povm)?, povm))
    }
}

fn dilate(a: &DilateArgs, seed: Seed) -> Result<Dispatched> {
    let (dilation, povm) = dilation_for(a)?;
    let mut r = ResultRecord::new("dilate", seed);
    r.param("povm", path_value(&a.povm)).param("binary", a.binary);
    r.output("unitary", matrix_value(dilation.unitary()))
        .output("system_dim", dilation.system_dim())
        .output("probe_dim", dilation.probe_dim())
        .output_real("unitarity_defect", unitarity_defect(dilation.unitary()));
    let mut violated = false;
    if let Some(path) = &a.rho {
        let rho = io::load_state(path)?;
        let born = povm.probabilities(rho.matrix());
        let dilated = dilation.outcome_probabilities(rho.matrix())?;
        let deviation = born
            .iter()
            .zip(&dilated)
            .map(|(b, d)| (b - d).abs())
            .fold(0.0, f64::max);
        r.param("rho", path_value(path));
        r.output("born_probabilities", reals(&born))
            .output("dilated_probabilities", reals(&dilated))
            .output_real("max_deviation", deviation);
        violated = deviation > tol::CONSTRUCTION;
    }
    Ok((r, violated))
}

/// The unit vector of a rank-one density operator.
fn pure_vector(rho: &DensityOperator, symbol: &str) -> Result<ComplexVector> {
    let e = rho.hermitian().eig()?;
    if (e.max() - 1.0).abs() > tol::CONSTRUCTION {
        return Err(Error::Validation(format!(
            "coherent mode needs pure channel outputs; output {symbol:?} has largest eigenvalue {}",
            e.max()
        )));
    }
    let v = e.vectors.column(0).into_owned();
    Ok(v.unscale(v.norm()) * c(1.0))
}

fn decode(a: &DecodeArgs, seed: Seed) -> Result<Dispatched> {
    let (channel, prior) = io::load_channel(&a.channel)?;
    let codebook = io::load_codebook(&a.codebook, &channel)?;
    let spec = DecoderSpec::new(&channel, &prior, &codebook, a.eps_prime)?;
    let ops = spec.position_ops();
    let mut r = ResultRecord::new("decode", seed);
    r.param("channel", path_value(&a.channel))
        .param("codebook", path_value(&a.codebook))
        .param("eps_prime", real(a.eps_prime))
        .param("mode", format!("{:?}", a.mode).to_lowercase());
    let stats = decoding_stats(&channel, &codebook, &spec)?;
    let success: Vec<f64> = match a.mode {
        DecodeMode::Exact => stats.per_message_success.clone(),
        DecodeMode::Dilated => codebook
            .codewords()
            .iter()
            .enumerate()
            .map(|(m, &x)| success_prob_dilated(channel.output(x), ops, m))
            .collect::<Result<_>>()?,
        DecodeMode::Trajectory => {
            if a.trials == 0 {
                return Err(Error::Parameter("--trials must be at least 1".into()));
            }
            r.param("trials", a.trials);
            let decoder = SequentialDecoder::new(ops)?;
            codebook
                .codewords()
                .par_iter()
                .enumerate()
                .map(|(m, &x)| {
                    let mut sampler = Sampler::for_stream(seed, m as u64);
                    let mut hits = 0usize;
                    for _ in 0..a.trials {
                        if decoder.sample_trajectory(channel.output(x), &mut sampler)?.decoded == Some(m) {
                            hits += 1;
                        }
                    }
                    Ok(hits as f64 / a.trials as f64)
                })
                .collect::<Result<_>>()?
        }
        DecodeMode::Coherent => codebook
            .codewords()
            .iter()
            .enumerate()
            .map(|(m, &x)| {
                let psi = pure_vector(channel.output(x), &channel.symbols()[x])?;
                coherent_decode(&psi, ops)?.first_accept_probability(m)
            })
            .collect::<Result<_>>()?,
    };
    let average_error = 1.0 - success.iter().sum::<f64>() / success.len() as f64;
    r.output("per_message_success", reals(&success))
        .output_real("average_error", average_error)
        .output_real("exact_average_error", stats.average_error)
        .output_real("maximal_error", stats.maximal_error)
        .output_real("sen_rhs", stats.sen_rhs)
        .output_real("min_union_slack", stats.min_union_slack)
        .output_real("bound_value", stats.bound_value)
        .output_real("beta", spec.test().beta)
        .output_real("type1_error", spec.test().type1_error);
    Ok((r, stats.min_union_slack < -tol::SLACK))
}

fn bounds_check(a: &BoundsCheckArgs, seed: Seed) -> Result<Dispatched> {
    let report = run_sweep(SweepConfig {
        suite: a.suite.into(),
        instances: a.instances,
        max_dim: a.dim,
        max_len: a.seq_len,
        seed,
    })?;
    let mut r = ResultRecord::new("bounds-check", seed);
    r.param("suite", Suite::from(a.suite).as_str())
        .param("instances", a.instances)
        .param("dim", a.dim)
        .param("seq_len", a.seq_len);
    r.output_real("min_slack", report.min_slack)
        .output("worst_instance", report.worst_instance)
        .output("violations", report.violations);
    if let Some(x) = report.max_dilation_deviation {
        r.output_real("max_dilation_deviation", x);
    }
    if let Some(x) = report.max_polar_residual {
        r.output_real("max_polar_residual", x);
    }
    Ok((r, !report.holds()))
}

/// Parses `a:b:step` (inclusive of `b` up to round-off) or a single value.
pub fn parse_range_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parameter(format!("grid {spec:?} is not `a:b:step` or a number"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match parts[..] {
        [x] => Ok(vec![x]),
        [lo, hi, step] if step > 0.0 && lo <= hi && (lo + hi + step).is_finite() => {
            let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|k| lo + k as f64 * step).collect())
        }
        _ => Err(bad()),
    }
}

/// Parses a prior grid: `file`, `simplex:N`, or `p1,p2,…;q1,q2,…`.
pub fn parse_prior_grid(spec: &str, file_prior: &[f64]) -> Result<Vec<Vec<f64>>> {
    let k = file_prior.len();
    let spec = spec.trim();
    if spec == "file" {
        return Ok(vec![file_prior.to_vec()]);
    }
    if let Some(n) = spec.strip_prefix("simplex:") {
        let n: usize = n
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parameter(format!("bad simplex resolution in {spec:?}")))?;
        return Ok(simplex_grid(k, n));
    }
    spec.split(';')
        .map(|dist| {
            let p: Vec<f64> = dist
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parameter(format!("bad probability {x:?} in prior grid")))
                })
                .collect::<Result<_>>()?;
            if p.len() != k {
                return Err(Error::Parameter(format!(
                    "prior {dist:?} has {} entries, the channel has {k} symbols",
                    p.len()
                )));
            }
            Ok(p)
        })
        .collect()
}

fn capacity(a: &CapacityArgs, seed: Seed) -> Result<Dispatched> {
    let (channel, prior) = io::load_channel(&a.channel)?;
    let eps_grid = parse_range_grid(&a.eps_prime_grid)?;
    let prior_grid = parse_prior_grid(&a.prior_grid, &prior)?;
    let bound = capacity_lower_bound(&channel, a.eps, &prior_grid, &eps_grid)?;
    let mut r = ResultRecord::new("capacity", seed);
    r.param("channel", path_value(&a.channel))
        .param("eps", real(a.eps))
        .param("eps_prime_grid", a.eps_prime_grid.as_str())
        .param("prior_grid", a.prior_grid.as_str());
    r.output_real("bits", bound.bits)
        .output("argmax_prior", reals(&bound.prior))
        .output_real("argmax_eps_prime", bound.eps_prime)
        .output_real("d_h_bits", bound.d_h_bits)
        .output("grid_points", prior_grid.len() * eps_grid.len());
    Ok((r, false))
}

fn reversal_outputs(r: &mut ResultRecord, report: &ReversalReport) {
    r.output("scheme", report.scheme.as_str())
        .output_real("disturbance", report.disturbance)
        .output_real("bound", report.bound)
        .output_real("slack", report.slack)
        .output_real("success_gap", report.success_gap)
        .output_real("gap_bound", report.gap_bound)
        .output_real("gap_slack", report.gap_slack)
        .output_real("forward_gap", report.forward_gap)
        .output_real("deficit", report.deficit)
        .output("post_state", matrix_value(report.post_state.matrix()));
    if let Some(x) = report.polar_residual {
        r.output_real("polar_residual", x);
    }
}

fn gentle(a: &GentleArgs, seed: Seed) -> Result<Dispatched> {
    let rho = io::load_state(&a.rho)?;
    let ops = io::load_operators(&a.ops)?;
    let mut r = ResultRecord::new("gentle", seed);
    r.param("rho", path_value(&a.rho))
        .param("ops", path_value(&a.ops))
        .param("scheme", format!("{:?}", a.scheme).to_lowercase());
    let violated = match a.scheme {
        GentleScheme::Gentle | GentleScheme::Dilated => {
            let checks = ops
                .iter()
                .map(|op| match a.scheme {
                    GentleScheme::Gentle => gentle_gap(&rho, op),
                    _ => dilated_gentle(&rho, &BinaryPovm::new(op.clone())?),
                })
                .collect::<Result<Vec<_>>>()?;
            let pick = |f: fn(&crate::gentle::GentleCheck) -> f64| checks.iter().map(f).collect::<Vec<_>>();
            let slacks = pick(|g| g.slack);
            r.output("disturbance", reals(&pick(|g| g.disturbance)))
                .output("bound", reals(&pick(|g| g.bound)))
                .output("slack", reals(&slacks))
                .output_real("min_slack", slacks.iter().copied().fold(f64::INFINITY, f64::min));
            checks.iter().any(|g| !g.holds())
        }
        GentleScheme::Polar | GentleScheme::ForwardBackward => {
            let report = if a.scheme == GentleScheme::Polar {
                polar_reversal(&rho, &ops)?
            } else {
                forward_backward(&rho, &ops)?
            };
            reversal_outputs(&mut r, &report);
            !report.holds()
        }
    };
    Ok((r, violated))
}

fn experiment(a: &ExperimentArgs, seed: Seed) -> Result<Dispatched> {
    let (channel, prior) = io::load_channel(&a.channel)?;
    let report = random_coding_experiment(&channel, &prior, a.messages, a.eps_prime, a.trials, seed)?;
    let mut r = ResultRecord::new("experiment", seed);
    r.param("channel", path_value(&a.channel))
        .param("messages", a.messages)
        .param("eps_prime", real(a.eps_prime))
        .param("trials", a.trials);
    r.output_real("empirical_error", report.mean_error)
        .output_real("stderr", report.stderr)
        .output_real("analytic_bound", report.analytic_bound)
        .output_real("beta", report.beta)
        .output_real("type1_error", report.type1_error)
        .output_real("mean_sen_rhs", report.mean_sen_rhs)
        .output_real("min_union_slack", report.min_union_slack)
        .output("bound_holds", report.bound_holds);
    Ok((r, !report.bound_holds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_grid() {
        assert_eq!(parse_range_grid("0.01").unwrap(), vec![0.01]);
        let g = parse_range_grid("0.01:0.03:0.01").unwrap();
        assert_eq!(g.len(), 3);
        assert!((g[2] - 0.03).abs() < 1e-15);
        assert!(parse_range_grid("0.03:0.01:0.01").is_err());
        assert!(parse_range_grid("a:b").is_err());
        assert!(parse_range_grid("0:1:0").is_err());
    }

    #[test]
    fn prior_grid_forms() {
        let file = [0.25, 0.75];
        assert_eq!(parse_prior_grid("file", &file).unwrap(), vec![file.to_vec()]);
        assert_eq!(parse_prior_grid("simplex:4", &file).unwrap().len(), 5);
        let explicit = parse_prior_grid("0.5,0.5; 0.1,0.9", &file).unwrap();
        assert_eq!(explicit[1], vec![0.1, 0.9]);
        assert!(parse_prior_grid("0.5,0.2,0.3", &file).is_err());
        assert!(parse_prior_grid("simplex:0", &file).is_err());
    }

    #[test]
    fn strict_needs_seed() {
        let o = run(["cqseqdec", "--strict", "bounds-check", "--suite", "sen", "--instances", "2"]);
        assert_eq!(o.exit_code, EXIT_INVALID);
        let o = run(["cqseqdec", "--strict", "--seed", "3", "bounds-check", "--suite", "sen", "--instances", "2"]);
        assert_eq!(o.exit_code, EXIT_OK, "{:?}", o.message);
        assert_eq!(o.record.unwrap().seed, Seed(3));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["cqseqdec", "frobnicate"]).exit_code, EXIT_INVALID);
        assert_eq!(run(["cqseqdec", "--help"]).exit_code, EXIT_OK);
        let o = run(["cqseqdec", "hypotest", "--rho", "/nonexistent/r.json", "--sigma", "s", "--eps", "0.1"]);
        assert_eq!(o.exit_code, EXIT_INVALID);
        assert!(o.message.unwrap().contains("/nonexistent/r.json"));
    }
}
