//! Optimal asymmetric hypothesis tests and the hypothesis testing relative
//! entropy `D_H^ε(ρ‖σ) = −log₂ β_ε(ρ, σ)`, where
//!
//! ```text
//! β_ε(ρ, σ) = min { Tr{Qσ} : 0 ≤ Q ≤ I, Tr{Qρ} ≥ 1 − ε }.
//! ```
//!
//! The minimizer is found in quantum Neyman–Pearson form. For a threshold
//! `λ ≥ 0` let `P_{>λ}` be the projector onto the positive eigenspace of
//! `ρ − λσ`; `Tr{P_{>λ}ρ}` is nonincreasing in `λ`, so bisection finds the
//! critical `λ*` at which it crosses `1 − ε`. The test is then
//! `Q = P_{>λ*} + t·P_{=λ*}`, with `t ∈ [0, 1]` chosen so that the type-I
//! constraint is met with equality on the boundary eigenspace. Optimality is
//! certified by the weak-duality bound
//!
//! ```text
//! β_ε ≥ μ(1 − ε) − Tr{(μρ − σ)₊}    for every μ ≥ 0,
//! ```
//!
//! evaluated at `μ = 1/λ*`.
//!
//! When both arguments are block diagonal (classical-quantum states) the
//! problem separates: every block is diagonalized independently under the
//! shared threshold.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    c, check_dim, eig_hermitian_matrix, trace_product, ComplexMatrix, DensityOperator,
    HermitianOperator,
};

/// Returned by [`d_h_epsilon`] when `β_ε ≤ 1e-15` (supports essentially
/// orthogonal). Serialized as the string `"inf"`.
pub const INFINITE_BITS: f64 = f64::INFINITY;

/// `β_ε` below this value is reported as [`INFINITE_BITS`].
pub const BETA_FLOOR: f64 = 1e-15;

/// Eigenvalues of `ρ − λσ` within `BOUNDARY_TOL · max(1, λ)` of zero form the
/// boundary eigenspace that receives the fractional weight `t`.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// ε at or below this value is solved as the exact ε = 0 problem.
const EPS_ZERO: f64 = 1e-12;
/// Eigenvalues at or below this value count as kernel / outside the support.
const KERNEL_TOL: f64 = 1e-13;
/// Dual multiplier used for ε = 0, where the dual optimum is only approached as μ → ∞.
const EPS_ZERO_MULTIPLIER: f64 = 1e8;
const MAX_BISECTION_STEPS: usize = 200;
const MAX_BRACKET_DOUBLINGS: usize = 200;
/// Block count above which block diagonalizations run on the rayon pool.
const PARALLEL_BLOCKS: usize = 8;

/// An optimal test for the pair `(ρ, σ)` at type-I level `ε`.
#[derive(Debug, Clone)]
pub struct HypothesisTest {
    pub q: HermitianOperator,
    /// `1 − Tr{Qρ}`.
    pub type1_error: f64,
    /// `Tr{Qσ} = β_ε`.
    pub type2_error: f64,
    /// The critical `λ*` of `ρ − λσ` (`+∞` when the kernel of σ alone passes the test).
    pub threshold: f64,
    /// Weight `t` on the boundary eigenspace.
    pub boundary_fraction: f64,
    /// Multiplier `μ` at which the dual bound was evaluated.
    pub dual_multiplier: f64,
    /// Dual lower bound on `β_ε` at `dual_multiplier`.
    pub dual_value: f64,
}

impl HypothesisTest {
    pub fn beta(&self) -> f64 {
        self.type2_error
    }

    /// Primal minus dual value.
    pub fn duality_gap(&self) -> f64 {
        self.type2_error - self.dual_value
    }

    pub fn bits(&self) -> f64 {
        beta_to_bits(self.type2_error)
    }
}

pub(crate) fn beta_to_bits(beta: f64) -> f64 {
    if beta <= BETA_FLOOR {
        INFINITE_BITS
    } else {
        -beta.log2()
    }
}

/// Solution of the blockwise program; `q` holds one test block per input block.
#[derive(Debug, Clone)]
struct BlockSolution {
    q: Vec<ComplexMatrix>,
    type1_error: f64,
    beta: f64,
    threshold: f64,
    boundary_fraction: f64,
    dual_multiplier: f64,
    dual_value: f64,
}

/// One diagonal block of the pair; `rho` blocks carry their prior weights and
/// together have unit trace.
struct Block<'a> {
    rho: &'a ComplexMatrix,
    sigma: &'a ComplexMatrix,
}

fn map_blocks<T: Send>(blocks: &[Block<'_>], f: impl Fn(&Block<'_>) -> Result<T> + Sync) -> Result<Vec<T>> {
    if blocks.len() > PARALLEL_BLOCKS {
        blocks.par_iter().map(&f).collect()
    } else {
        blocks.iter().map(f).collect()
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) || !eps.is_finite() {
        return Err(Error::Parameter(format!("ε must lie in [0, 1), got {eps}")));
    }
    Ok(())
}

/// `Tr{P_{>0}(ρ − λσ) ρ}` summed over blocks.
fn accepted_weight(blocks: &[Block<'_>], lambda: f64) -> Result<f64> {
    let parts = map_blocks(blocks, |b| {
        let e = eig_hermitian_matrix(&(b.rho - b.sigma * c(lambda)))?;
        let w = e.diagonal_weights(b.rho);
        Ok(e.values.iter().zip(&w).filter(|(v, _)| **v > 0.0).map(|(_, w)| *w).sum::<f64>())
    })?;
    Ok(parts.iter().sum())
}

/// `μ(1 − ε) − Tr{(μρ − σ)₊}`, evaluated as `μ(Tr{P⊥ρ} − ε) + Tr{Pσ}` with
/// `P` the positive eigenprojector of `μρ − σ` (uses `Tr ρ = 1`), which avoids
/// cancelling two terms of size `μ`.
fn dual_value(blocks: &[Block<'_>], mu: f64, eps: f64) -> Result<f64> {
    if mu == 0.0 {
        return Ok(0.0);
    }
    let parts = map_blocks(blocks, |b| {
        let e = eig_hermitian_matrix(&(b.rho * c(mu) - b.sigma))?;
        let wr = e.diagonal_weights(b.rho);
        let ws = e.diagonal_weights(b.sigma);
        let mut rejected_rho = 0.0;
        let mut accepted_sigma = 0.0;
        for (k, &v) in e.values.iter().enumerate() {
            if v > 0.0 {
                accepted_sigma += ws[k];
            } else {
                rejected_rho += wr[k];
            }
        }
        Ok((rejected_rho, accepted_sigma))
    })?;
    let rejected: f64 = parts.iter().map(|p| p.0).sum();
    let accepted: f64 = parts.iter().map(|p| p.1).sum();
    Ok(mu * (rejected - eps) + accepted)
}

fn finish(blocks: &[Block<'_>], q: Vec<ComplexMatrix>, eps: f64, threshold: f64, t: f64, mu: f64) -> Result<BlockSolution> {
    let accepted: f64 = blocks.iter().zip(&q).map(|(b, q)| trace_product(q, b.rho).re).sum();
    let beta: f64 = blocks.iter().zip(&q).map(|(b, q)| trace_product(q, b.sigma).re).sum();
    Ok(BlockSolution {
        type1_error: 1.0 - accepted,
        beta,
        threshold,
        boundary_fraction: t,
        dual_multiplier: mu,
        dual_value: dual_value(blocks, mu, eps)?,
        q,
    })
}

fn solve_blocks(blocks: &[Block<'_>], eps: f64) -> Result<BlockSolution> {
    check_eps(eps)?;
    let total: usize = blocks.iter().map(|b| b.rho.nrows()).sum();
    check_dim(total)?;

    // ε = 0: Q must act as the identity on supp(ρ); the support projector is optimal.
    if eps <= EPS_ZERO {
        let q = map_blocks(blocks, |b| {
            Ok(eig_hermitian_matrix(b.rho)?.spectral_projector(|x| x > KERNEL_TOL))
        })?;
        return finish(blocks, q, eps, 0.0, 1.0, EPS_ZERO_MULTIPLIER);
    }

    let sigma_eigs = map_blocks(blocks, |b| eig_hermitian_matrix(b.sigma))?;
    // Kernel of σ is accepted at zero type-II cost; if it already carries
    // 1 − ε of ρ the test is the kernel projector and β = 0.
    let kernels: Vec<ComplexMatrix> = sigma_eigs
        .iter()
        .map(|e| e.spectral_projector(|x| x <= KERNEL_TOL))
        .collect();
    let kernel_weight: f64 = blocks
        .iter()
        .zip(&kernels)
        .map(|(b, k)| trace_product(k, b.rho).re)
        .sum();
    if kernel_weight >= 1.0 - eps {
        return finish(blocks, kernels, eps, f64::INFINITY, 0.0, 0.0);
    }

    let target = 1.0 - eps;
    let rho_max = map_blocks(blocks, |b| Ok(eig_hermitian_matrix(b.rho)?.max()))?
        .into_iter()
        .fold(0.0_f64, f64::max);
    let sigma_min = sigma_eigs
        .iter()
        .flat_map(|e| e.values.iter().copied())
        .filter(|&x| x > KERNEL_TOL)
        .fold(f64::INFINITY, f64::min);
    let mut lo = 0.0_f64;
    let mut hi = if sigma_min.is_finite() { rho_max / sigma_min + 1.0 } else { 1.0 };
    let mut doublings = 0;
    while accepted_weight(blocks, hi)? >= target {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::numeric("could not bracket the Neyman–Pearson threshold", doublings));
        }
    }
    let mut steps = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
        steps += 1;
        if steps > MAX_BISECTION_STEPS {
            return Err(Error::numeric("threshold bisection did not converge", steps));
        }
        if accepted_weight(blocks, mid)? >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // At λ = lo the strictly positive part carries at least 1 − ε of ρ.
    let lambda = lo;
    let btol = BOUNDARY_TOL * lambda.max(1.0);
    let spectra = map_blocks(blocks, |b| {
        let e = eig_hermitian_matrix(&(b.rho - b.sigma * c(lambda)))?;
        let w = e.diagonal_weights(b.rho);
        Ok((e, w))
    })?;
    let mut above = 0.0;
    let mut boundary = 0.0;
    for (e, w) in &spectra {
        for (v, w) in e.values.iter().zip(w) {
            if *v > btol {
                above += w;
            } else if v.abs() <= btol {
                boundary += w;
            }
        }
    }
    let t = if boundary > 0.0 {
        ((target - above) / boundary).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let q = spectra
        .iter()
        .map(|(e, _)| {
            e.map(|v| {
                if v > btol {
                    1.0
                } else if v.abs() <= btol {
                    t
                } else {
                    0.0
                }
            })
        })
        .collect();
    let mu = if lambda > 0.0 { 1.0 / lambda } else { EPS_ZERO_MULTIPLIER };
    finish(blocks, q, eps, lambda, t, mu)
}

fn check_pair(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<()> {
    if rho.nrows() != sigma.nrows() {
        return Err(Error::shape(format!(
            "hypothesis test between operators of dimension {} and {}",
            rho.nrows(),
            sigma.nrows()
        )));
    }
    Ok(())
}

/// Optimal test for `ρ` against a positive operator `σ` (not necessarily
/// normalized; `β` is then measured in σ's own scale).
pub fn neyman_pearson_psd(rho: &DensityOperator, sigma: &HermitianOperator, eps: f64) -> Result<HypothesisTest> {
    check_pair(rho.matrix(), sigma.matrix())?;
    let block = [Block {
        rho: rho.matrix(),
        sigma: sigma.matrix(),
    }];
    let sol = solve_blocks(&block, eps)?;
    let q = HermitianOperator::symmetrize(sol.q.into_iter().next().expect("one block"));
    Ok(HypothesisTest {
        q,
        type1_error: sol.type1_error,
        type2_error: sol.beta,
        threshold: sol.threshold,
        boundary_fraction: sol.boundary_fraction,
        dual_multiplier: sol.dual_multiplier,
        dual_value: sol.dual_value,
    })
}

/// Optimal test distinguishing `ρ` from `σ` with type-I error at most `ε`.
pub fn neyman_pearson(rho: &DensityOperator, sigma: &DensityOperator, eps: f64) -> Result<HypothesisTest> {
    neyman_pearson_psd(rho, sigma.hermitian(), eps)
}

/// `β_ε(ρ, σ)`.
pub fn beta_epsilon(rho: &DensityOperator, sigma: &DensityOperator, eps: f64) -> Result<f64> {
    Ok(neyman_pearson(rho, sigma, eps)?.type2_error)
}

/// `D_H^ε(ρ‖σ)` in bits; [`INFINITE_BITS`] when `β_ε ≤ 1e-15`.
pub fn d_h_epsilon(rho: &DensityOperator, sigma: &DensityOperator, eps: f64) -> Result<f64> {
    Ok(neyman_pearson(rho, sigma, eps)?.bits())
}

/// Weak-duality lower bound `λ(1 − ε) − Tr{(λρ − σ)₊} ≤ β_ε(ρ, σ)`.
pub fn dual_certificate(lambda: f64, rho: &DensityOperator, sigma: &DensityOperator, eps: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Parameter(format!("dual multiplier must be finite and ≥ 0, got {lambda}")));
    }
    check_eps(eps)?;
    check_pair(rho.matrix(), sigma.matrix())?;
    dual_value(
        &[Block {
            rho: rho.matrix(),
            sigma: sigma.matrix(),
        }],
        lambda,
        eps,
    )
}

/// `ρ_XB = Σ_x p(x) |x⟩⟨x| ⊗ ρ_x`, kept in block form.
#[derive(Debug, Clone, PartialEq)]
pub struct CqJointState {
    symbols: Vec<String>,
    prior: Vec<f64>,
    blocks: Vec<DensityOperator>,
    dim_b: usize,
}

impl CqJointState {
    pub fn new(symbols: Vec<String>, prior: Vec<f64>, blocks: Vec<DensityOperator>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::shape("a classical-quantum state needs at least one symbol"));
        }
        if symbols.len() != blocks.len() || prior.len() != blocks.len() {
            return Err(Error::shape(format!(
                "{} symbols, {} prior entries and {} blocks",
                symbols.len(),
                prior.len(),
                blocks.len()
            )));
        }
        let dim_b = blocks[0].dim();
        if let Some((x, b)) = blocks.iter().enumerate().find(|(_, b)| b.dim() != dim_b) {
            return Err(Error::shape(format!(
                "block {x} has dimension {}, expected {dim_b}",
                b.dim()
            )));
        }
        if let Some(p) = prior.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Validation(format!("prior entry {p} is not a probability")));
        }
        let sum: f64 = prior.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::Validation(format!("prior sums to {sum}, expected 1")));
        }
        check_dim(dim_b * blocks.len())?;
        Ok(CqJointState {
            symbols,
            prior,
            blocks,
            dim_b,
        })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn prior(&self) -> &[f64] {
        &self.prior
    }

    pub fn blocks(&self) -> &[DensityOperator] {
        &self.blocks
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn alphabet_size(&self) -> usize {
        self.blocks.len()
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::Key(symbol.to_string()))
    }

    /// `ρ_B = Σ_x p(x) ρ_x`.
    pub fn average_state(&self) -> DensityOperator {
        let avg = self
            .prior
            .iter()
            .zip(&self.blocks)
            .fold(ComplexMatrix::zeros(self.dim_b, self.dim_b), |acc, (p, b)| acc + b.matrix() * c(*p));
        DensityOperator::new(avg).expect("convex combination of states is a state")
    }

    fn weighted_blocks(&self) -> Vec<ComplexMatrix> {
        self.prior
            .iter()
            .zip(&self.blocks)
            .map(|(p, b)| b.matrix() * c(*p))
            .collect()
    }
}

/// Classical-quantum state with symbols `"0"`, `"1"`, ….
pub fn cq_state(prior: Vec<f64>, blocks: Vec<DensityOperator>) -> Result<CqJointState> {
    let symbols = (0..blocks.len()).map(|x| x.to_string()).collect();
    CqJointState::new(symbols, prior, blocks)
}

fn block_diagonal(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        let d = b.nrows();
        out.view_mut((offset, offset), (d, d)).copy_from(b);
        offset += d;
    }
    out
}

/// Dense `ρ_XB` and `ρ_X ⊗ ρ_B` (X index major).
pub fn cq_embed(s: &CqJointState) -> Result<(DensityOperator, DensityOperator)> {
    let avg = s.average_state();
    let joint = block_diagonal(&s.weighted_blocks());
    let product = block_diagonal(&s.prior.iter().map(|p| avg.matrix() * c(*p)).collect::<Vec<_>>());
    Ok((DensityOperator::new(joint)?, DensityOperator::new(product)?))
}

/// Optimal block-diagonal test for `ρ_XB` against a block-diagonal second argument.
#[derive(Debug, Clone)]
pub struct CqHypothesisTest {
    /// `D_H^ε` in bits.
    pub value: f64,
    pub beta: f64,
    pub type1_error: f64,
    pub threshold: f64,
    pub boundary_fraction: f64,
    pub dual_multiplier: f64,
    pub dual_value: f64,
    blocks: Vec<HermitianOperator>,
}

impl CqHypothesisTest {
    /// Block `x` of `Q_XB`, i.e. `Tr_X{(|x⟩⟨x| ⊗ I) Q_XB}`.
    pub fn block(&self, x: usize) -> &HermitianOperator {
        &self.blocks[x]
    }

    pub fn blocks(&self) -> &[HermitianOperator] {
        &self.blocks
    }

    /// Dense `Q_XB`.
    pub fn q_xb(&self) -> HermitianOperator {
        HermitianOperator::symmetrize(block_diagonal(
            &self.blocks.iter().map(|b| b.matrix().clone()).collect::<Vec<_>>(),
        ))
    }

    pub fn duality_gap(&self) -> f64 {
        self.beta - self.dual_value
    }
}

fn cq_solution(sol: BlockSolution) -> CqHypothesisTest {
    CqHypothesisTest {
        value: beta_to_bits(sol.beta),
        beta: sol.beta,
        type1_error: sol.type1_error,
        threshold: sol.threshold,
        boundary_fraction: sol.boundary_fraction,
        dual_multiplier: sol.dual_multiplier,
        dual_value: sol.dual_value,
        blocks: sol.q.into_iter().map(HermitianOperator::symmetrize).collect(),
    }
}

/// `D_H^ε(ρ_XB ‖ ρ_X ⊗ ρ_B)` and its optimal test, solved block by block:
/// `ρ_XB − λ ρ_X⊗ρ_B = ⊕_x p(x)(ρ_x − λρ_B)`.
pub fn d_h_cq(s: &CqJointState, eps: f64) -> Result<CqHypothesisTest> {
    let avg = s.average_state();
    let rhos = s.weighted_blocks();
    let sigmas: Vec<ComplexMatrix> = s.prior.iter().map(|p| avg.matrix() * c(*p)).collect();
    let blocks: Vec<Block<'_>> = rhos
        .iter()
        .zip(&sigmas)
        .map(|(rho, sigma)| Block { rho, sigma })
        .collect();
    Ok(cq_solution(solve_blocks(&blocks, eps)?))
}

/// `D_H^ε(ρ_XB ‖ I_X ⊗ σ_B)` for a caller-supplied positive `σ_B`.
pub fn d_h_cq_side(s: &CqJointState, sigma_b: &HermitianOperator, eps: f64) -> Result<CqHypothesisTest> {
    if sigma_b.dim() != s.dim_b {
        return Err(Error::shape(format!(
            "σ_B has dimension {}, expected {}",
            sigma_b.dim(),
            s.dim_b
        )));
    }
    let rhos = s.weighted_blocks();
    let blocks: Vec<Block<'_>> = rhos
        .iter()
        .map(|rho| Block {
            rho,
            sigma: sigma_b.matrix(),
        })
        .collect();
    Ok(cq_solution(solve_blocks(&blocks, eps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis_projector, diag, max_abs, outer, sample_state, ComplexVector, Seed};

    fn state(values: &[f64]) -> DensityOperator {
        DensityOperator::new(diag(values)).unwrap()
    }

    #[test]
    fn identical_states_give_one_minus_eps() {
        let rho = sample_state(3, Seed(8)).unwrap();
        for eps in [0.0, 0.1, 0.5, 0.9] {
            let t = neyman_pearson(&rho, &rho, eps).unwrap();
            assert!((t.beta() - (1.0 - eps)).abs() < 1e-9, "eps {eps}: {}", t.beta());
        }
        let bits = d_h_epsilon(&rho, &rho, 0.5).unwrap();
        assert!((bits - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pure_against_maximally_mixed() {
        let rho = state(&[1.0, 0.0]);
        let sigma = DensityOperator::maximally_mixed(2);
        let t = neyman_pearson(&rho, &sigma, 0.0).unwrap();
        assert!((t.beta() - 0.5).abs() < 1e-12);
        assert!(max_abs(&(t.q.matrix() - basis_projector(2, 0))) < 1e-12);
        let rho = state(&[0.0, 0.0, 0.0, 1.0]);
        let bits = d_h_epsilon(&rho, &DensityOperator::maximally_mixed(4), 0.0).unwrap();
        assert!((bits - 2.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_supports_give_sentinel() {
        let bits = d_h_epsilon(&state(&[1.0, 0.0]), &state(&[0.0, 1.0]), 0.0).unwrap();
        assert_eq!(bits, INFINITE_BITS);
        let bits = d_h_epsilon(&state(&[1.0, 0.0]), &state(&[0.0, 1.0]), 0.2).unwrap();
        assert_eq!(bits, INFINITE_BITS);
    }

    #[test]
    fn eps_out_of_range_is_rejected() {
        let rho = state(&[0.5, 0.5]);
        assert!(matches!(neyman_pearson(&rho, &rho, 1.0), Err(Error::Parameter(_))));
        assert!(matches!(neyman_pearson(&rho, &rho, -0.1), Err(Error::Parameter(_))));
        assert!(matches!(
            neyman_pearson(&rho, &state(&[1.0, 0.0, 0.0]), 0.1),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn trivial_dual_certificate() {
        let rho = sample_state(3, Seed(1)).unwrap();
        let sigma = sample_state(3, Seed(2)).unwrap();
        assert_eq!(dual_certificate(0.0, &rho, &sigma, 0.1).unwrap(), 0.0);
        assert!(dual_certificate(-1.0, &rho, &sigma, 0.1).is_err());
    }

    #[test]
    fn cq_embedding_marginals() {
        let blocks = vec![sample_state(2, Seed(1)).unwrap(), sample_state(2, Seed(2)).unwrap()];
        let s = cq_state(vec![0.3, 0.7], blocks).unwrap();
        let (joint, product) = cq_embed(&s).unwrap();
        assert!((joint.hermitian().trace() - 1.0).abs() < 1e-10);
        let marginal = crate::linalg::partial_trace(joint.matrix(), &[2, 2], 0).unwrap();
        assert!(max_abs(&(marginal - s.average_state().matrix())) < 1e-14);
        assert!(product.hermitian().trace() > 0.999);

        let same = vec![sample_state(2, Seed(3)).unwrap(); 3];
        let s = cq_state(vec![0.2, 0.3, 0.5], same).unwrap();
        let (joint, product) = cq_embed(&s).unwrap();
        assert!(max_abs(&(joint.matrix() - product.matrix())) < 1e-15);
    }

    #[test]
    fn cq_state_validation() {
        let b = vec![state(&[1.0, 0.0]), state(&[0.0, 1.0])];
        assert!(cq_state(vec![0.5, 0.6], b.clone()).is_err());
        assert!(cq_state(vec![1.2, -0.2], b.clone()).is_err());
        assert!(cq_state(vec![1.0], b).is_err());
    }

    #[test]
    fn cq_identical_blocks_and_distinguishable_blocks() {
        let tau = sample_state(3, Seed(5)).unwrap();
        let s = cq_state(vec![0.25, 0.75], vec![tau.clone(), tau]).unwrap();
        let t = d_h_cq(&s, 0.1).unwrap();
        assert!((t.value + (0.9_f64).log2()).abs() < 1e-9);

        let s = cq_state(vec![0.5, 0.5], vec![state(&[1.0, 0.0]), state(&[0.0, 1.0])]).unwrap();
        let t = d_h_cq(&s, 0.0).unwrap();
        assert!((t.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn side_information_variant_runs() {
        let v = ComplexVector::from_vec(vec![c(1.0), c(0.0)]);
        let s = cq_state(
            vec![0.5, 0.5],
            vec![DensityOperator::pure(&v).unwrap(), DensityOperator::maximally_mixed(2)],
        )
        .unwrap();
        let sigma = HermitianOperator::new(outer(&v) * c(0.5) + diag(&[0.25, 0.25])).unwrap();
        let t = d_h_cq_side(&s, &sigma, 0.1).unwrap();
        assert!(t.type1_error <= 0.1 + 1e-9);
        assert!(t.duality_gap().abs() < 1e-7);
    }
}
