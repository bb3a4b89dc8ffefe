use crate::dilation::{dilate_binary, BinaryPovm, ACCEPT};
use crate::error::{Error, Result};
use crate::linalg::{
    check_dim, tensor, tol, trace, ComplexMatrix, DensityOperator, HermitianOperator, Sampler,
    Seed, State,
};

use super::maps::BinaryStep;

/// The sequential measurement `{I − Λ_j, Λ_j}`, `j = 1 … M`, with every
/// step's branch maps precomputed.
#[derive(Debug, Clone)]
pub struct SequentialDecoder {
    steps: Vec<BinaryStep>,
    dim: usize,
}

impl SequentialDecoder {
    pub fn new(ops: &[HermitianOperator]) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::Parameter("the decoder needs at least one operator".into()))?;
        let dim = first.dim();
        let steps = ops
            .iter()
            .map(|op| {
                if op.dim() != dim {
                    return Err(Error::shape(format!(
                        "decoder operators mix dimensions {dim} and {}",
                        op.dim()
                    )));
                }
                BinaryStep::new(op)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SequentialDecoder { steps, dim })
    }

    pub fn steps(&self) -> &[BinaryStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_state(&self, rho: &ComplexMatrix) -> Result<()> {
        if rho.nrows() != self.dim {
            return Err(Error::shape(format!(
                "state dimension {} does not match decoder dimension {}",
                rho.nrows(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Probability that step `target` (0-based) is the first to accept.
    pub fn success_probability(&self, rho: &impl State, target: usize) -> Result<f64> {
        if target >= self.steps.len() {
            return Err(Error::Range {
                index: target,
                len: self.steps.len(),
            });
        }
        let rho = rho.state_matrix();
        self.check_state(rho)?;
        let mut tau = rho.clone();
        for step in &self.steps[..target] {
            tau = step.reject().apply(&tau);
        }
        Ok(self.steps[target].accept_probability(&tau))
    }

    /// First-accept probabilities for every step plus the probability that
    /// all steps reject, in one pass.
    pub fn outcome_distribution(&self, rho: &impl State) -> Result<(Vec<f64>, f64)> {
        let rho = rho.state_matrix();
        self.check_state(rho)?;
        let mut tau = rho.clone();
        let mut accepts = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            accepts.push(step.accept_probability(&tau));
            tau = step.reject().apply(&tau);
        }
        Ok((accepts, trace(&tau).re))
    }

    /// Probability of surviving every step with acceptance, `Tr{A_M(⋯A_1(σ)⋯)}`.
    pub fn all_accept_weight(&self, sigma: &impl State) -> Result<f64> {
        let sigma = sigma.state_matrix();
        self.check_state(sigma)?;
        let tau = self
            .steps
            .iter()
            .fold(sigma.clone(), |tau, step| step.accept().apply(&tau));
        Ok(trace(&tau).re)
    }

    /// One sampled run of the decoder.
    pub fn sample_trajectory(&self, rho: &DensityOperator, sampler: &mut Sampler) -> Result<Trajectory> {
        self.check_state(rho.matrix())?;
        let mut tau = rho.matrix().clone();
        let mut path = Vec::with_capacity(self.steps.len());
        for (j, step) in self.steps.iter().enumerate() {
            let p_accept = step.accept_probability(&tau).clamp(0.0, 1.0);
            let p_reject = 1.0 - p_accept;
            if sampler.uniform() < p_accept || p_reject < DEGENERATE_REJECT {
                path.push(true);
                return Ok(Trajectory {
                    decoded: Some(j),
                    path,
                });
            }
            path.push(false);
            let next = step.reject().apply(&tau);
            let norm = trace(&next).re;
            tau = next.unscale(norm);
        }
        Ok(Trajectory {
            decoded: None,
            path,
        })
    }
}

/// Reject probabilities below this are treated as certain acceptance.
pub const DEGENERATE_REJECT: f64 = 1e-14;

/// Outcome of one sampled decoder run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// Index of the accepting step, or `None` when every step rejected.
    pub decoded: Option<usize>,
    /// Outcome of each step that ran, `true` for accept.
    pub path: Vec<bool>,
}

/// `Tr{Λ_m R_{m−1}(⋯R_1(ρ)⋯)}` with 0-based `target = m − 1`.
pub fn success_prob_exact(rho: &DensityOperator, ops: &[HermitianOperator], target: usize) -> Result<f64> {
    SequentialDecoder::new(ops)?.success_probability(rho, target)
}

/// Seeded single run of the sequential decoder.
pub fn decode_trajectory(rho: &DensityOperator, ops: &[HermitianOperator], seed: Seed) -> Result<Trajectory> {
    SequentialDecoder::new(ops)?.sample_trajectory(rho, &mut Sampler::new(seed))
}

/// The per-step projectors `Π_j` of the square-root dilation, each acting on
/// system ⊗ one qubit probe.
pub fn probe_projectors(ops: &[HermitianOperator]) -> Result<Vec<HermitianOperator>> {
    ops.iter()
        .map(|op| dilate_binary(&BinaryPovm::new(op.clone())?)?.accept_projector(ACCEPT))
        .collect()
}

/// `Π` on `S ⊗ P_j` lifted to `S ⊗ P_1 ⊗ ⋯ ⊗ P_M` (probe `P_1` most significant).
fn embed_probe_operator(local: &ComplexMatrix, d: usize, probes: usize, j: usize) -> ComplexMatrix {
    let n = d << probes;
    let shift = probes - 1 - j;
    let mask = 1usize << shift;
    let mut full = ComplexMatrix::zeros(n, n);
    for row in 0..n {
        let (s, bits) = (row >> probes, row & ((1 << probes) - 1));
        let rest = bits & !mask;
        let b = (bits >> shift) & 1;
        for s2 in 0..d {
            for b2 in 0..2 {
                let col = (s2 << probes) | rest | (b2 << shift);
                full[(row, col)] = local[(2 * s + b, 2 * s2 + b2)];
            }
        }
    }
    full
}

/// Full-dilation products for `ops`, or a size error when `d · 2^M` exceeds
/// the dimension cap.
struct ProbeRegister {
    projectors: Vec<ComplexMatrix>,
    dim: usize,
    d: usize,
    probes: usize,
}

impl ProbeRegister {
    fn new(ops: &[HermitianOperator], d: usize) -> Result<Self> {
        let probes = ops.len();
        let dim = probes
            .try_into()
            .ok()
            .and_then(|p: u32| 1usize.checked_shl(p))
            .and_then(|p| p.checked_mul(d))
            .ok_or(Error::Size {
                requested: usize::MAX,
                max: crate::linalg::max_total_dim(),
            })?;
        check_dim(dim)?;
        let projectors = probe_projectors(ops)?
            .iter()
            .enumerate()
            .map(|(j, p)| embed_probe_operator(p.matrix(), d, probes, j))
            .collect();
        Ok(ProbeRegister {
            projectors,
            dim,
            d,
            probes,
        })
    }

    /// `ρ ⊗ |0…0⟩⟨0…0|`.
    fn embed(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut zero = ComplexMatrix::zeros(1 << self.probes, 1 << self.probes);
        zero[(0, 0)] = crate::linalg::c(1.0);
        tensor(rho, &zero)
    }

    fn sandwich_trace(&self, k: &ComplexMatrix, rho: &ComplexMatrix) -> Result<f64> {
        let embedded = self.embed(rho)?;
        Ok(trace(&(k * embedded * k.adjoint())).re)
    }
}

/// `Tr{Π_m(I−Π_{m−1})⋯(I−Π_1)(ρ⊗|0̄⟩⟨0̄|)(I−Π_1)⋯(I−Π_{m−1})Π_m}` evaluated
/// with explicit probe registers.
pub fn success_prob_dilated(rho: &DensityOperator, ops: &[HermitianOperator], target: usize) -> Result<f64> {
    if target >= ops.len() {
        return Err(Error::Range {
            index: target,
            len: ops.len(),
        });
    }
    SequentialDecoder::new(ops)?.check_state(rho.matrix())?;
    let reg = ProbeRegister::new(ops, rho.dim())?;
    let identity = ComplexMatrix::identity(reg.dim, reg.dim);
    let mut k = identity.clone();
    for p in &reg.projectors[..target] {
        k = (&identity - p) * k;
    }
    k = &reg.projectors[target] * k;
    debug_assert_eq!(reg.d, rho.dim());
    reg.sandwich_trace(&k, rho.matrix())
}

/// Both sides of the non-commutative union bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnionBound {
    /// `Tr{σ} − Tr{Π_M⋯Π_1 (σ⊗|0̄⟩⟨0̄|) Π_1⋯Π_M}`.
    pub lhs: f64,
    /// `2 √(Σ_m Tr{(I−Λ_m)σ})`.
    pub rhs: f64,
    pub slack: f64,
}

impl UnionBound {
    fn new(lhs: f64, deficit: f64) -> Self {
        let rhs = 2.0 * deficit.max(0.0).sqrt();
        UnionBound {
            lhs,
            rhs,
            slack: rhs - lhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -tol::SLACK
    }
}

fn total_deficit(sigma: &ComplexMatrix, lambdas: &[HermitianOperator]) -> f64 {
    lambdas.iter().map(|l| l.complement().expectation(sigma)).sum()
}

/// Union bound with the all-accept weight computed by the compressed accept maps.
pub fn union_bound_check(sigma: &impl State, lambdas: &[HermitianOperator]) -> Result<UnionBound> {
    let decoder = SequentialDecoder::new(lambdas)?;
    let sigma_m = sigma.state_matrix();
    let lhs = trace(sigma_m).re - decoder.all_accept_weight(sigma)?;
    Ok(UnionBound::new(lhs, total_deficit(sigma_m, lambdas)))
}

/// The left-hand side of the union bound evaluated with explicit probes.
pub fn union_bound_lhs_dilated(sigma: &impl State, lambdas: &[HermitianOperator]) -> Result<f64> {
    let sigma = sigma.state_matrix();
    SequentialDecoder::new(lambdas)?.check_state(sigma)?;
    let reg = ProbeRegister::new(lambdas, sigma.nrows())?;
    let k = reg
        .projectors
        .iter()
        .fold(ComplexMatrix::identity(reg.dim, reg.dim), |k, p| p * k);
    Ok(trace(sigma).re - reg.sandwich_trace(&k, sigma)?)
}

/// The projector form `Tr{σ} − Tr{Π_M⋯Π_1 σ Π_1⋯Π_M} ≤ 2√(Σ Tr{(I−Π_i)σ})`,
/// with no probes involved.
pub fn sen_bound_check(sigma: &impl State, projectors: &[HermitianOperator]) -> Result<UnionBound> {
    let sigma = sigma.state_matrix();
    let d = sigma.nrows();
    let mut m = ComplexMatrix::identity(d, d);
    for p in projectors {
        if p.dim() != d {
            return Err(Error::shape(format!(
                "projector dimension {} does not match state dimension {d}",
                p.dim()
            )));
        }
        check_projector(p)?;
        m = p.matrix() * m;
    }
    let lhs = trace(sigma).re - trace(&(&m * sigma * m.adjoint())).re;
    Ok(UnionBound::new(lhs, total_deficit(sigma, projectors)))
}

pub(crate) fn check_projector(p: &HermitianOperator) -> Result<()> {
    let defect = crate::linalg::max_abs(&(p.matrix() * p.matrix() - p.matrix()));
    if defect > tol::CONSTRUCTION {
        return Err(Error::MeasurementSpec(format!(
            "operator is not a projector (max |Π² − Π| = {defect:e})"
        )));
    }
    Ok(())
}
