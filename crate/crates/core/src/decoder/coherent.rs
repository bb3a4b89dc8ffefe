use crate::error::{Error, Result};
use crate::linalg::{check_dim, ComplexMatrix, ComplexVector, HermitianOperator};

use super::simulate::probe_projectors;

/// Branch decomposition of the coherent decoder on `S ⊗ P_1 ⊗ ⋯ ⊗ P_M`.
///
/// Branch `b` (bit `j` of `b`, most significant first, is the outcome of
/// step `j`, `1` for accept) holds the unnormalized vector obtained by
/// applying `Π_j` or `I − Π_j` in order to `ψ ⊗ |0…0⟩`. Each branch vector is
/// stored as its `2^M` system components, one per probe basis string.
#[derive(Debug, Clone)]
pub struct CoherentBranches {
    system_dim: usize,
    steps: usize,
    branches: Vec<Vec<ComplexVector>>,
}

impl CoherentBranches {
    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// The branch vector on the full register, system index major.
    pub fn vector(&self, branch: usize) -> ComplexVector {
        let probes = 1usize << self.steps;
        let parts = &self.branches[branch];
        ComplexVector::from_fn(self.system_dim * probes, |i, _| parts[i % probes][i / probes])
    }

    pub fn squared_norm(&self, branch: usize) -> f64 {
        self.branches[branch].iter().map(|v| v.norm_squared()).sum()
    }

    pub fn squared_norms(&self) -> Vec<f64> {
        (0..self.branches.len()).map(|b| self.squared_norm(b)).collect()
    }

    /// Outcome string of a branch, `true` for accept.
    pub fn outcomes(&self, branch: usize) -> Vec<bool> {
        (0..self.steps)
            .map(|j| (branch >> (self.steps - 1 - j)) & 1 == 1)
            .collect()
    }

    /// Weight of the branch that rejects steps `0 … target − 1` and accepts
    /// step `target`, with later steps summed over.
    pub fn first_accept_probability(&self, target: usize) -> Result<f64> {
        if target >= self.steps {
            return Err(Error::Range {
                index: target,
                len: self.steps,
            });
        }
        let shift = self.steps - 1 - target;
        let prefix = 1usize << shift;
        Ok((0..prefix).map(|tail| self.squared_norm(prefix | tail)).sum())
    }
}

/// `⟨i|_P X |0⟩_P` for `i = 0, 1`, with `X` on system ⊗ qubit.
fn column_blocks(x: &ComplexMatrix) -> [ComplexMatrix; 2] {
    let d = x.nrows() / 2;
    [0, 1].map(|i| ComplexMatrix::from_fn(d, d, |s, t| x[(2 * s + i, 2 * t)]))
}

/// Runs the coherent sequential decoder on a pure state.
pub fn coherent_decode(psi: &ComplexVector, ops: &[HermitianOperator]) -> Result<CoherentBranches> {
    let d = psi.len();
    let m = ops.len();
    if m == 0 {
        return Err(Error::Parameter("the decoder needs at least one operator".into()));
    }
    if let Some(op) = ops.iter().find(|op| op.dim() != d) {
        return Err(Error::shape(format!(
            "operator dimension {} does not match state dimension {d}",
            op.dim()
        )));
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > crate::linalg::tol::CONSTRUCTION {
        return Err(Error::Validation(format!(
            "pure state vector has norm {norm}, expected 1"
        )));
    }
    let probes = u32::try_from(m)
        .ok()
        .and_then(|m| 1usize.checked_shl(m))
        .filter(|p| p.checked_mul(d).is_some())
        .ok_or(Error::Size {
            requested: usize::MAX,
            max: crate::linalg::max_total_dim(),
        })?;
    check_dim(d * probes)?;
    let projectors = probe_projectors(ops)?;
    let identity = ComplexMatrix::identity(2 * d, 2 * d);
    // After step j each branch holds one system vector per outcome string of
    // probes 1 … j; the remaining probes are still in |0⟩.
    let mut branches: Vec<Vec<ComplexVector>> = vec![vec![psi.clone()]];
    for p in &projectors {
        let accept = column_blocks(p.matrix());
        let reject = column_blocks(&(&identity - p.matrix()));
        let mut next = Vec::with_capacity(branches.len() * 2);
        for parts in &branches {
            for blocks in [&reject, &accept] {
                let mut grown = Vec::with_capacity(parts.len() * 2);
                for v in parts {
                    grown.push(&blocks[0] * v);
                    grown.push(&blocks[1] * v);
                }
                next.push(grown);
            }
        }
        branches = next;
    }
    Ok(CoherentBranches {
        system_dim: d,
        steps: m,
        branches,
    })
}
