//! Disturbance caused by measurements that succeed with high probability,
//! and two ways of undoing most of the disturbance of a sequence of
//! projective measurements.
//!
//! For projectors `Π_1 … Π_N` with `Σ = Σ_i Tr{(I−Π_i)ρ}` and
//! `M = Π_N ⋯ Π_1`:
//!
//! * [`polar_reversal`] applies `V` from the polar factorization `V M = |M|`
//!   after the measurements, leaving `|M| ρ |M|` with
//!   `‖ρ − |M|ρ|M|‖₁ ≤ 2√2 Σ^{1/4}`.
//! * [`forward_backward`] runs the measurements again in reverse, leaving
//!   `K ρ K` with `K = Π_1⋯Π_N⋯Π_1`. Its success gap is at most `2√(2Σ)` and
//!   its disturbance at most `2√2 · 2^{1/4} Σ^{1/4}`.

use std::fmt;

use crate::decoder::check_projector;
use crate::dilation::{dilate_binary, BinaryPovm, ACCEPT};
use crate::error::{Error, Result};
use crate::linalg::{
    max_abs, psd_sqrt, polar_unitary, tol, trace, trace_norm, ComplexMatrix, HermitianOperator,
    State, SubnormalizedState,
};

/// Trace-norm disturbance next to the bound it should respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GentleCheck {
    pub disturbance: f64,
    pub bound: f64,
    pub slack: f64,
}

impl GentleCheck {
    fn new(disturbance: f64, bound: f64) -> Self {
        GentleCheck {
            disturbance,
            bound,
            slack: bound - disturbance,
        }
    }

    pub fn holds(&self) -> bool {
        self.slack >= -tol::SLACK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Polar,
    ForwardBackward,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Polar => "polar",
            Scheme::ForwardBackward => "forward_backward",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct ReversalReport {
    pub scheme: Scheme,
    pub post_state: SubnormalizedState,
    /// `‖ρ − post_state‖₁`.
    pub disturbance: f64,
    pub bound: f64,
    /// `bound − disturbance`.
    pub slack: f64,
    /// `Tr ρ − Tr post_state`.
    pub success_gap: f64,
    pub gap_bound: f64,
    pub gap_slack: f64,
    /// `Tr ρ − Tr{M ρ M†}` for the forward pass alone.
    pub forward_gap: f64,
    /// `2 √Σ`.
    pub forward_gap_bound: f64,
    /// `Σ_i Tr{(I−Π_i)ρ}`.
    pub deficit: f64,
    /// `max |V M − |M||`, recorded by the polar scheme only.
    pub polar_residual: Option<f64>,
}

impl ReversalReport {
    pub fn holds(&self) -> bool {
        self.slack >= -tol::SLACK && self.gap_slack >= -tol::SLACK
    }
}

/// `‖ρ − √Λ ρ √Λ‖₁` against `2 √(Tr{(I−Λ)ρ})`.
pub fn gentle_gap(rho: &impl State, lambda: &HermitianOperator) -> Result<GentleCheck> {
    let rho = rho.state_matrix();
    check_dims(rho, lambda.dim())?;
    let lambda = lambda.clone().into_effect()?;
    let root = psd_sqrt(&lambda)?;
    let post = root.matrix() * rho * root.matrix();
    let disturbance = trace_norm(&(rho - post))?;
    let bound = 2.0 * lambda.complement().expectation(rho).max(0.0).sqrt();
    Ok(GentleCheck::new(disturbance, bound))
}

/// The gentle bound on system ⊗ probe for the accept projector of the
/// square-root dilation of `{I − Λ, Λ}`.
pub fn dilated_gentle(rho: &impl State, p: &BinaryPovm) -> Result<GentleCheck> {
    let rho_m = rho.state_matrix();
    check_dims(rho_m, p.dim())?;
    let dilation = dilate_binary(p)?;
    let pi = dilation.accept_projector(ACCEPT)?;
    let embedded = dilation.embed(rho_m)?;
    let post = pi.matrix() * &embedded * pi.matrix();
    let disturbance = trace_norm(&(embedded - post))?;
    let eps = trace(rho_m).re - p.accept_probability(rho_m);
    Ok(GentleCheck::new(disturbance, 2.0 * eps.max(0.0).sqrt()))
}

fn check_dims(rho: &ComplexMatrix, d: usize) -> Result<()> {
    if rho.nrows() != d {
        return Err(Error::shape(format!(
            "state dimension {} does not match operator dimension {d}",
            rho.nrows()
        )));
    }
    Ok(())
}

struct Sequence {
    rho: ComplexMatrix,
    /// `Π_N ⋯ Π_1`.
    forward: ComplexMatrix,
    deficit: f64,
    forward_gap: f64,
}

impl Sequence {
    fn new(rho: &ComplexMatrix, projectors: &[HermitianOperator]) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::Parameter("at least one projector is required".into()));
        }
        let d = rho.nrows();
        let mut forward = ComplexMatrix::identity(d, d);
        let mut deficit = 0.0;
        for p in projectors {
            check_dims(rho, p.dim())?;
            check_projector(p)?;
            forward = p.matrix() * forward;
            deficit += p.complement().expectation(rho);
        }
        let forward_gap = trace(rho).re - trace(&(&forward * rho * forward.adjoint())).re;
        Ok(Sequence {
            rho: rho.clone(),
            forward,
            deficit: deficit.max(0.0),
            forward_gap,
        })
    }

    fn report(
        &self,
        scheme: Scheme,
        post: ComplexMatrix,
        bound: f64,
        gap_bound: f64,
        polar_residual: Option<f64>,
    ) -> Result<ReversalReport> {
        let disturbance = trace_norm(&(&self.rho - &post))?;
        let success_gap = trace(&self.rho).re - trace(&post).re;
        Ok(ReversalReport {
            scheme,
            post_state: SubnormalizedState::from_trusted(post),
            disturbance,
            bound,
            slack: bound - disturbance,
            success_gap,
            gap_bound,
            gap_slack: gap_bound - success_gap,
            forward_gap: self.forward_gap,
            forward_gap_bound: 2.0 * self.deficit.sqrt(),
            deficit: self.deficit,
            polar_residual,
        })
    }
}

/// Measures `Π_1 … Π_N` and then applies the polar unitary of `M = Π_N⋯Π_1`.
pub fn polar_reversal(rho: &impl State, projectors: &[HermitianOperator]) -> Result<ReversalReport> {
    let seq = Sequence::new(rho.state_matrix(), projectors)?;
    let polar = polar_unitary(&seq.forward)?;
    let abs = polar.abs.matrix();
    let residual = max_abs(&(&polar.unitary * &seq.forward - abs));
    let square_defect = max_abs(&(abs * abs - seq.forward.adjoint() * &seq.forward));
    if residual.max(square_defect) > tol::CONSTRUCTION {
        return Err(Error::numeric(
            format!("polar factorization failed (|VM − |M|| = {residual:e}, ||M|² − M†M| = {square_defect:e})"),
            0,
        ));
    }
    let post = abs * &seq.rho * abs;
    let bound = 2.0 * 2f64.sqrt() * seq.deficit.powf(0.25);
    let gap_bound = 2.0 * seq.deficit.sqrt();
    seq.report(Scheme::Polar, post, bound, gap_bound, Some(residual))
}

/// Measures `Π_1 … Π_N` and then `Π_{N−1} … Π_1` again.
pub fn forward_backward(rho: &impl State, projectors: &[HermitianOperator]) -> Result<ReversalReport> {
    let seq = Sequence::new(rho.state_matrix(), projectors)?;
    let k = seq.forward.adjoint() * &seq.forward;
    let post = &k * &seq.rho * k.adjoint();
    let bound = 2.0 * 2f64.sqrt() * 2f64.powf(0.25) * seq.deficit.powf(0.25);
    let gap_bound = 2.0 * (2.0 * seq.deficit).sqrt();
    seq.report(Scheme::ForwardBackward, post, bound, gap_bound, None)
}
