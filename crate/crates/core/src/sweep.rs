//! Seeded randomized sweeps of the inequalities checked by this crate.
//!
//! Instance `i` of a sweep draws everything from stream `i` of the seed, so a
//! sweep gives the same report however its instances are scheduled.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::decoder::{sen_bound_check, union_bound_check, union_bound_lhs_dilated};
use crate::dilation::BinaryPovm;
use crate::error::{Error, Result};
use crate::gentle::{dilated_gentle, forward_backward, gentle_gap, polar_reversal};
use crate::linalg::{max_total_dim, tol, HermitianOperator, Sampler, Seed, SubnormalizedState};

/// Largest sequence length for which the effect sweep also evaluates the
/// explicit probe register.
pub const DILATED_MAX_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Union bound for projectors.
    Sen,
    /// Union bound for general effects through their square-root dilations.
    Lemma31,
    /// Single-effect gentle bound, plain and dilated.
    Gentle,
    Polar,
    ForwardBackward,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Sen,
        Suite::Lemma31,
        Suite::Gentle,
        Suite::Polar,
        Suite::ForwardBackward,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Sen => "sen",
            Suite::Lemma31 => "lemma31",
            Suite::Gentle => "gentle",
            Suite::Polar => "polar",
            Suite::ForwardBackward => "forward-backward",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown suite {s:?}")))
    }
}

/// Sweep dimensions: instance dimension in `1..=max_dim` (from 2 for the
/// projector suites when possible) and sequence length in `1..=max_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub suite: Suite,
    pub instances: usize,
    pub max_dim: usize,
    pub max_len: usize,
    pub seed: Seed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub slacks: Vec<f64>,
    pub min_slack: f64,
    pub worst_instance: usize,
    /// Instances with slack below `-tol::SLACK`.
    pub violations: usize,
    /// Largest `|lhs_compressed − lhs_dilated|` (effect suite only).
    pub max_dilation_deviation: Option<f64>,
    /// Largest `|VM − |M||` (polar suite only).
    pub max_polar_residual: Option<f64>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

struct InstanceResult {
    slack: f64,
    dilation_deviation: Option<f64>,
    polar_residual: Option<f64>,
}

impl InstanceResult {
    fn slack(slack: f64) -> Self {
        InstanceResult {
            slack,
            dilation_deviation: None,
            polar_residual: None,
        }
    }
}

fn projectors(s: &mut Sampler, d: usize, n: usize) -> Result<Vec<HermitianOperator>> {
    (0..n)
        .map(|_| {
            let rank = s.range(1, d);
            s.projector(d, rank)
        })
        .collect()
}

fn state_for(s: &mut Sampler, d: usize, i: usize) -> Result<SubnormalizedState> {
    if i.is_multiple_of(2) {
        Ok(s.state(d)?.into())
    } else {
        s.subnormalized(d)
    }
}

fn run_instance(config: &SweepConfig, i: usize) -> Result<InstanceResult> {
    let mut s = Sampler::for_stream(config.seed, i as u64);
    let projector_suite = matches!(config.suite, Suite::Sen | Suite::Polar | Suite::ForwardBackward);
    let lo = if projector_suite { 2.min(config.max_dim) } else { 1 };
    let d = s.range(lo, config.max_dim);
    let n = s.range(1, config.max_len);
    match config.suite {
        Suite::Sen => {
            let sigma = state_for(&mut s, d, i)?;
            let ps = projectors(&mut s, d, n)?;
            Ok(InstanceResult::slack(sen_bound_check(&sigma, &ps)?.slack))
        }
        Suite::Lemma31 => {
            let sigma = state_for(&mut s, d, i)?;
            let effects = (0..n).map(|_| s.effect(d)).collect::<Result<Vec<_>>>()?;
            let ub = union_bound_check(&sigma, &effects)?;
            let mut slack = ub.slack;
            let mut deviation = None;
            if n <= DILATED_MAX_STEPS && d << n <= max_total_dim() {
                let lhs = union_bound_lhs_dilated(&sigma, &effects)?;
                slack = slack.min(ub.rhs - lhs);
                deviation = Some((lhs - ub.lhs).abs());
            }
            Ok(InstanceResult {
                slack,
                dilation_deviation: deviation,
                polar_residual: None,
            })
        }
        Suite::Gentle => {
            let rho = state_for(&mut s, d, i)?;
            let effect = s.effect(d)?;
            let plain = gentle_gap(&rho, &effect)?;
            let dilated = dilated_gentle(&rho, &BinaryPovm::new(effect)?)?;
            Ok(InstanceResult::slack(plain.slack.min(dilated.slack)))
        }
        Suite::Polar => {
            let rho = state_for(&mut s, d, i)?;
            let ps = projectors(&mut s, d, n)?;
            let r = polar_reversal(&rho, &ps)?;
            Ok(InstanceResult {
                slack: r.slack.min(r.gap_slack),
                dilation_deviation: None,
                polar_residual: r.polar_residual,
            })
        }
        Suite::ForwardBackward => {
            let rho = state_for(&mut s, d, i)?;
            let ps = projectors(&mut s, d, n)?;
            let r = forward_backward(&rho, &ps)?;
            Ok(InstanceResult::slack(r.slack.min(r.gap_slack)))
        }
    }
}

fn max_of(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    values.flatten().reduce(f64::max)
}

/// Runs `config.instances` seeded instances in parallel.
pub fn run_sweep(config: SweepConfig) -> Result<SweepReport> {
    if config.instances == 0 || config.max_dim == 0 || config.max_len == 0 {
        return Err(Error::Parameter(
            "instances, dimension and sequence length must all be at least 1".into(),
        ));
    }
    let results = (0..config.instances)
        .into_par_iter()
        .map(|i| run_instance(&config, i))
        .collect::<Result<Vec<_>>>()?;
    let slacks: Vec<f64> = results.iter().map(|r| r.slack).collect();
    let (worst_instance, min_slack) = slacks
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, x)| if x < best.1 { (i, x) } else { best });
    Ok(SweepReport {
        config,
        violations: slacks.iter().filter(|&&x| x < -tol::SLACK).count(),
        min_slack,
        worst_instance,
        max_dilation_deviation: max_of(results.iter().map(|r| r.dilation_deviation)),
        max_polar_residual: max_of(results.iter().map(|r| r.polar_residual)),
        slacks,
    })
}
