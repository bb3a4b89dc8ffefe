use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypothesis::{d_h_cq, CqHypothesisTest, CqJointState};
use crate::linalg::{tol, HermitianOperator, Sampler, Seed};

use super::channel::{Codebook, CqChannel};
use super::simulate::{union_bound_check, SequentialDecoder};

/// Block `x` of `Q_XB`, clipped into `[0, I]`.
pub fn position_operator(q_xb: &HermitianOperator, s: &CqJointState, symbol: &str) -> Result<HermitianOperator> {
    let x = s.symbol_index(symbol)?;
    let d = s.dim_b();
    if q_xb.dim() != d * s.alphabet_size() {
        return Err(Error::shape(format!(
            "Q_XB has dimension {}, expected {} × {d}",
            q_xb.dim(),
            s.alphabet_size()
        )));
    }
    let block = q_xb.matrix().view((x * d, x * d), (d, d)).into_owned();
    HermitianOperator::new(block)?.into_effect()
}

/// The decoder built from an optimal test for `ρ_XB` against `ρ_X ⊗ ρ_B`.
#[derive(Debug, Clone)]
pub struct DecoderSpec {
    test: CqHypothesisTest,
    position_ops: Vec<HermitianOperator>,
    eps_prime: f64,
}

impl DecoderSpec {
    /// Solves the test at `ε′` for `(channel, prior)` and lays the position
    /// operators out along `codebook`.
    pub fn new(channel: &CqChannel, prior: &[f64], codebook: &Codebook, eps_prime: f64) -> Result<Self> {
        let test = d_h_cq(&channel.joint_state(prior)?, eps_prime)?;
        Self::from_test(test, codebook, eps_prime)
    }

    pub fn from_test(test: CqHypothesisTest, codebook: &Codebook, eps_prime: f64) -> Result<Self> {
        let effects = test
            .blocks()
            .iter()
            .map(|b| b.clone().into_effect())
            .collect::<Result<Vec<_>>>()?;
        let position_ops = codebook
            .codewords()
            .iter()
            .map(|&x| {
                effects.get(x).cloned().ok_or(Error::Range {
                    index: x,
                    len: effects.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DecoderSpec {
            test,
            position_ops,
            eps_prime,
        })
    }

    pub fn q_xb(&self) -> HermitianOperator {
        self.test.q_xb()
    }

    pub fn test(&self) -> &CqHypothesisTest {
        &self.test
    }

    pub fn position_ops(&self) -> &[HermitianOperator] {
        &self.position_ops
    }

    pub fn eps_prime(&self) -> f64 {
        self.eps_prime
    }

    /// `2 √(ε′ + M · Tr{Q_XB (ρ_X ⊗ ρ_B)})`.
    pub fn analytic_bound(&self) -> f64 {
        random_coding_bound(self.eps_prime, self.position_ops.len(), self.test.beta)
    }
}

/// `2 √(ε′ + M β)`.
pub fn random_coding_bound(eps_prime: f64, messages: usize, beta: f64) -> f64 {
    2.0 * (eps_prime + messages as f64 * beta).sqrt()
}

/// Exact performance of one codebook under the sequential decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodingStats {
    pub per_message_success: Vec<f64>,
    pub average_error: f64,
    pub maximal_error: f64,
    /// Mean over messages of the per-message union bound
    /// `2 √(Tr{(I−A_m)ρ_m} + Σ_{j<m} Tr{A_j ρ_m})`.
    pub sen_rhs: f64,
    /// Smallest per-message slack of that union bound.
    pub min_union_slack: f64,
    /// Codebook-averaged bound `2 √(ε′ + M β)`.
    pub bound_value: f64,
}

/// Evaluates `spec` on `codebook` with every success probability computed exactly.
pub fn decoding_stats(channel: &CqChannel, codebook: &Codebook, spec: &DecoderSpec) -> Result<DecodingStats> {
    let ops = spec.position_ops();
    if ops.len() != codebook.message_count() {
        return Err(Error::shape(format!(
            "{} position operators for {} codewords",
            ops.len(),
            codebook.message_count()
        )));
    }
    let decoder = SequentialDecoder::new(ops)?;
    let mut per_message_success = Vec::with_capacity(ops.len());
    let mut sen_sum = 0.0;
    let mut min_union_slack = f64::INFINITY;
    for (m, &x) in codebook.codewords().iter().enumerate() {
        let rho = channel.output(x);
        let success = decoder.success_probability(rho, m)?;
        // Rejecting 1 … m−1 then accepting m is the all-accept event of the
        // sequence I − A_1, …, I − A_{m−1}, A_m.
        let mut lambdas: Vec<HermitianOperator> = ops[..m].iter().map(|a| a.complement()).collect();
        lambdas.push(ops[m].clone());
        let ub = union_bound_check(rho, &lambdas)?;
        sen_sum += ub.rhs;
        min_union_slack = min_union_slack.min(ub.rhs - (1.0 - success));
        per_message_success.push(success);
    }
    let n = per_message_success.len() as f64;
    let average_error = 1.0 - per_message_success.iter().sum::<f64>() / n;
    let maximal_error = per_message_success
        .iter()
        .map(|s| 1.0 - s)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(DecodingStats {
        per_message_success,
        average_error,
        maximal_error,
        sen_rhs: sen_sum / n,
        min_union_slack,
        bound_value: spec.analytic_bound(),
    })
}

/// Random-coding estimate of the average error of the sequential decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub messages: usize,
    pub trials: usize,
    pub eps_prime: f64,
    /// `Tr{Q_XB (ρ_X ⊗ ρ_B)}`.
    pub beta: f64,
    /// `1 − Tr{Q_XB ρ_XB}`.
    pub type1_error: f64,
    pub trial_errors: Vec<f64>,
    pub mean_error: f64,
    pub stderr: f64,
    pub analytic_bound: f64,
    /// Mean over trials of the per-codebook union-bound average.
    pub mean_sen_rhs: f64,
    pub min_union_slack: f64,
    /// `mean_error ≤ analytic_bound + 3 · stderr`.
    pub bound_holds: bool,
}

/// Samples `trials` codebooks of `messages` codewords i.i.d. from `prior`
/// and evaluates each exactly. Trial `t` draws from stream `t` of `seed`, so
/// the report does not depend on how the trials are scheduled.
pub fn random_coding_experiment(
    channel: &CqChannel,
    prior: &[f64],
    messages: usize,
    eps_prime: f64,
    trials: usize,
    seed: Seed,
) -> Result<ExperimentReport> {
    if messages == 0 || trials == 0 {
        return Err(Error::Parameter(
            "messages and trials must both be at least 1".into(),
        ));
    }
    let test = d_h_cq(&channel.joint_state(prior)?, eps_prime)?;
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut sampler = Sampler::for_stream(seed, t as u64);
            let codebook = Codebook::sample(prior, messages, &mut sampler)?;
            let spec = DecoderSpec::from_test(test.clone(), &codebook, eps_prime)?;
            decoding_stats(channel, &codebook, &spec)
        })
        .collect::<Result<Vec<_>>>()?;

    let n = trials as f64;
    let trial_errors: Vec<f64> = per_trial.iter().map(|s| s.average_error).collect();
    let mean_error = trial_errors.iter().sum::<f64>() / n;
    let stderr = if trials > 1 {
        let var = trial_errors.iter().map(|e| (e - mean_error).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    let analytic_bound = random_coding_bound(eps_prime, messages, test.beta);
    Ok(ExperimentReport {
        messages,
        trials,
        eps_prime,
        beta: test.beta,
        type1_error: test.type1_error,
        mean_error,
        stderr,
        analytic_bound,
        mean_sen_rhs: per_trial.iter().map(|s| s.sen_rhs).sum::<f64>() / n,
        min_union_slack: per_trial
            .iter()
            .map(|s| s.min_union_slack)
            .fold(f64::INFINITY, f64::min),
        bound_holds: mean_error <= analytic_bound + 3.0 * stderr + tol::SLACK,
        trial_errors,
    })
}

/// `D_H^{ε′} − log₂(1/(ε²/4 − ε′))`, defined for `0 ≤ ε′ < ε²/4`.
pub fn one_shot_rate(d_h_bits: f64, eps: f64, eps_prime: f64) -> Result<f64> {
    let margin = eps * eps / 4.0 - eps_prime;
    if !(0.0..=1.0).contains(&eps) || eps_prime < 0.0 || margin <= 0.0 {
        return Err(Error::Parameter(format!(
            "need 0 ≤ ε′ < ε²/4, got ε = {eps}, ε′ = {eps_prime}"
        )));
    }
    Ok(d_h_bits + margin.log2())
}

/// Best one-shot rate over the supplied grids.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityBound {
    pub bits: f64,
    pub prior: Vec<f64>,
    pub eps_prime: f64,
    pub d_h_bits: f64,
}

/// Maximizes the one-shot rate over `prior_grid × eps_prime_grid`. The true
/// maximum over all priors and `ε′` is at least the returned value.
pub fn capacity_lower_bound(
    channel: &CqChannel,
    eps: f64,
    prior_grid: &[Vec<f64>],
    eps_prime_grid: &[f64],
) -> Result<CapacityBound> {
    if prior_grid.is_empty() || eps_prime_grid.is_empty() {
        return Err(Error::Parameter("prior and ε′ grids must be non-empty".into()));
    }
    for &ep in eps_prime_grid {
        one_shot_rate(0.0, eps, ep)?;
    }
    let mut best: Option<CapacityBound> = None;
    for prior in prior_grid {
        let joint = channel.joint_state(prior)?;
        for &ep in eps_prime_grid {
            let d_h_bits = d_h_cq(&joint, ep)?.value;
            let bits = one_shot_rate(d_h_bits, eps, ep)?;
            if best.as_ref().is_none_or(|b| bits > b.bits) {
                best = Some(CapacityBound {
                    bits,
                    prior: prior.clone(),
                    eps_prime: ep,
                    d_h_bits,
                });
            }
        }
    }
    Ok(best.expect("grids are non-empty"))
}

/// Every distribution on `k` symbols whose probabilities are multiples of `1/n`.
pub fn simplex_grid(k: usize, n: usize) -> Vec<Vec<f64>> {
    fn fill(k: usize, left: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() + 1 == k {
            prefix.push(left);
            out.push(prefix.iter().map(|&c| c as f64 / n as f64).collect());
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            fill(k, left - c, n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 && n > 0 {
        fill(k, n, n, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::cq_state;
    use crate::linalg::{basis_projector, diag, identity, tensor, DensityOperator};

    #[test]
    fn identity_blocks() {
        let s = cq_state(vec![0.5, 0.5], vec![DensityOperator::maximally_mixed(2); 2]).unwrap();
        let q = HermitianOperator::identity(4);
        for x in ["0", "1"] {
            let a = position_operator(&q, &s, x).unwrap();
            assert_eq!(a.matrix(), &identity(2));
        }
        assert!(matches!(position_operator(&q, &s, "7"), Err(Error::Key(_))));
    }

    #[test]
    fn single_block_support() {
        let s = cq_state(vec![0.5, 0.5], vec![DensityOperator::maximally_mixed(2); 2]).unwrap();
        let gamma = diag(&[0.3, 0.8]);
        let q = HermitianOperator::new(tensor(&basis_projector(2, 1), &gamma).unwrap()).unwrap();
        let a1 = position_operator(&q, &s, "1").unwrap();
        assert!(crate::linalg::max_abs(&(a1.matrix() - &gamma)) < 1e-15);
        let a0 = position_operator(&q, &s, "0").unwrap();
        assert!(crate::linalg::max_abs(a0.matrix()) < 1e-15);
    }

    #[test]
    fn rate_requires_feasible_eps_prime() {
        assert!(one_shot_rate(1.0, 0.4, 0.0401).is_err());
        assert!(one_shot_rate(1.0, 0.4, 0.05).is_err());
        let r = one_shot_rate(1.0, 0.4, 0.02).unwrap();
        assert!((r - (1.0 + 0.02f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn grid_shape() {
        let g = simplex_grid(3, 4);
        assert_eq!(g.len(), 15);
        assert!(g.iter().all(|p| (p.iter().sum::<f64>() - 1.0).abs() < 1e-12));
        assert!(simplex_grid(0, 3).is_empty());
    }

    #[test]
    fn empty_grids_rejected() {
        let ch = CqChannel::from_outputs(vec![DensityOperator::maximally_mixed(2); 2]).unwrap();
        assert!(capacity_lower_bound(&ch, 0.4, &[], &[0.01]).is_err());
        assert!(capacity_lower_bound(&ch, 0.4, &[vec![0.5, 0.5]], &[]).is_err());
    }
}
