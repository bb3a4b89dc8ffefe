//! Naimark dilations of binary and general measurements.
//!
//! A dilation is a unitary on system ⊗ probe (system index major) whose
//! probe, prepared in `|0⟩` and read out in the computational basis after
//! the unitary, reproduces the Born statistics of the measurement. For binary
//! measurements the probe outcome `|1⟩` is acceptance (operator `Λ`) and `|0⟩`
//! is rejection (`I − Λ`).

use crate::error::{Error, Result};
use crate::linalg::{
    basis_projector, c, identity, orthogonal_complement, spectral_sqrt, tensor, tol, ComplexMatrix,
    DensityOperator, HermitianOperator,
};

/// Probe outcome signalling acceptance of a binary measurement.
pub const ACCEPT: usize = 1;
/// Probe outcome signalling rejection of a binary measurement.
pub const REJECT: usize = 0;

/// Two-outcome measurement `{Λ, I − Λ}`, stored by its accept effect `Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryPovm {
    accept: HermitianOperator,
}

impl BinaryPovm {
    pub fn new(accept: HermitianOperator) -> Result<Self> {
        Ok(BinaryPovm {
            accept: accept.into_effect()?,
        })
    }

    pub fn accept(&self) -> &HermitianOperator {
        &self.accept
    }

    pub fn dim(&self) -> usize {
        self.accept.dim()
    }

    /// Acceptance probability `Tr{Λρ}`.
    pub fn accept_probability(&self, rho: &ComplexMatrix) -> f64 {
        self.accept.expectation(rho)
    }

    /// `√(I−Λ)` and `√Λ` from one eigendecomposition of `Λ`, so the pair
    /// commutes to machine precision.
    pub fn square_roots(&self) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let e = self.accept.eig()?;
        let reject = e.map(|x| spectral_sqrt(1.0 - x.clamp(0.0, 1.0), 1.0));
        let accept = e.map(|x| spectral_sqrt(x.clamp(0.0, 1.0), 1.0));
        Ok((reject, accept))
    }
}

/// Finite list of effects summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<HermitianOperator>,
}

impl Povm {
    /// Validates positivity and completeness within [`tol::CONSTRUCTION`], then
    /// rescales the elements as `S^{-1/2} Γ_x S^{-1/2}` (with `S = Σ_x Γ_x`) so
    /// the stored elements sum to the identity at machine precision.
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::MeasurementSpec("POVM has no elements".into()));
        };
        let d = first.dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        for (x, el) in elements.iter().enumerate() {
            if el.dim() != d {
                return Err(Error::shape(format!(
                    "POVM element {x} has dimension {}, expected {d}",
                    el.dim()
                )));
            }
            let min = el.eig()?.min();
            if min < -tol::CONSTRUCTION {
                return Err(Error::MeasurementSpec(format!(
                    "POVM element {x} is not positive (minimum eigenvalue {min:e})"
                )));
            }
            sum += el.matrix();
        }
        let defect = crate::linalg::max_abs(&(&sum - identity(d)));
        if defect > tol::CONSTRUCTION {
            return Err(Error::MeasurementSpec(format!(
                "POVM elements do not sum to the identity (max deviation {defect:e})"
            )));
        }
        let inv_sqrt = HermitianOperator::symmetrize(sum).eig()?.map(|x| 1.0 / x.sqrt());
        let elements = elements
            .iter()
            .map(|el| {
                let e = el.eig()?;
                let clipped = e.map(|x| x.max(0.0));
                Ok(HermitianOperator::symmetrize(&inv_sqrt * clipped * &inv_sqrt))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Povm { elements })
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    /// Born probabilities `Tr{Γ_x ρ}`.
    pub fn probabilities(&self, rho: &ComplexMatrix) -> Vec<f64> {
        self.elements.iter().map(|e| e.expectation(rho)).collect()
    }
}

impl From<&BinaryPovm> for Povm {
    /// `{I − Λ, Λ}`: outcome 1 is acceptance, as in the binary dilation.
    fn from(p: &BinaryPovm) -> Self {
        Povm {
            elements: vec![p.accept.complement(), p.accept.clone()],
        }
    }
}

/// A unitary on system ⊗ probe plus the probe basis read out afterwards.
#[derive(Debug, Clone)]
pub struct DilatedMeasurement {
    unitary: ComplexMatrix,
    system_dim: usize,
    probe_dim: usize,
    outcome_basis: Vec<usize>,
}

impl DilatedMeasurement {
    fn new(unitary: ComplexMatrix, system_dim: usize, probe_dim: usize) -> Result<Self> {
        let defect = crate::linalg::unitarity_defect(&unitary);
        if defect > tol::CONSTRUCTION {
            return Err(Error::numeric(
                format!("dilation is not unitary (max |U†U − I| = {defect:e})"),
                0,
            ));
        }
        Ok(DilatedMeasurement {
            unitary,
            system_dim,
            probe_dim,
            outcome_basis: (0..probe_dim).collect(),
        })
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    pub fn probe_dim(&self) -> usize {
        self.probe_dim
    }

    pub fn outcome_basis(&self) -> &[usize] {
        &self.outcome_basis
    }

    /// Rows of `U` whose probe index is `outcome`, as a `d × dk` block.
    fn outcome_rows(&self, outcome: usize) -> ComplexMatrix {
        let (d, k) = (self.system_dim, self.probe_dim);
        ComplexMatrix::from_fn(d, d * k, |s, col| self.unitary[(s * k + outcome, col)])
    }

    /// Block `⟨outcome|_P U |0⟩_P` acting on the system alone.
    pub fn kraus(&self, outcome: usize) -> Result<ComplexMatrix> {
        self.check_outcome(outcome)?;
        let (d, k) = (self.system_dim, self.probe_dim);
        Ok(ComplexMatrix::from_fn(d, d, |s, t| {
            self.unitary[(s * k + outcome, t * k)]
        }))
    }

    fn check_outcome(&self, outcome: usize) -> Result<()> {
        if outcome >= self.probe_dim {
            return Err(Error::Range {
                index: outcome,
                len: self.probe_dim,
            });
        }
        Ok(())
    }

    /// `Π = U†(I ⊗ |outcome⟩⟨outcome|)U` on system ⊗ probe.
    pub fn accept_projector(&self, outcome: usize) -> Result<HermitianOperator> {
        self.check_outcome(outcome)?;
        let rows = self.outcome_rows(self.outcome_basis[outcome]);
        Ok(HermitianOperator::symmetrize(rows.adjoint() * rows))
    }

    /// `I − Π_accept` for a binary dilation.
    pub fn reject_projector(&self) -> Result<HermitianOperator> {
        if self.probe_dim != 2 {
            return Err(Error::MeasurementSpec(
                "reject projector is defined for binary dilations only".into(),
            ));
        }
        Ok(self.accept_projector(ACCEPT)?.complement())
    }

    /// Outcome distribution `Tr{U†(I⊗|x⟩⟨x|)U (ρ ⊗ |0⟩⟨0|)}` for every `x`.
    pub fn outcome_probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>> {
        if rho.nrows() != self.system_dim {
            return Err(Error::shape(format!(
                "state dimension {} does not match system dimension {}",
                rho.nrows(),
                self.system_dim
            )));
        }
        (0..self.probe_dim)
            .map(|x| {
                let b = self.kraus(x)?;
                Ok(crate::linalg::trace(&(&b * rho * b.adjoint())).re)
            })
            .collect()
    }

    /// `ρ ⊗ |0⟩⟨0|_P`.
    pub fn embed(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        tensor(rho, &basis_projector(self.probe_dim, 0))
    }
}

/// `U = √(I−Λ)⊗|0⟩⟨0| + √Λ⊗|1⟩⟨0| − √Λ⊗|0⟩⟨1| + √(I−Λ)⊗|1⟩⟨1|`.
pub fn dilate_binary(p: &BinaryPovm) -> Result<DilatedMeasurement> {
    let d = p.dim();
    crate::linalg::check_dim(2 * d)?;
    let (reject, accept) = p.square_roots()?;
    let ket_bra = |i: usize, j: usize| {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(i, j)] = c(1.0);
        m
    };
    let u = tensor(&reject, &ket_bra(0, 0))? + tensor(&accept, &ket_bra(1, 0))?
        - tensor(&accept, &ket_bra(0, 1))?
        + tensor(&reject, &ket_bra(1, 1))?;
    DilatedMeasurement::new(u, d, 2)
}

/// Completes the isometry `V = Σ_x √Γ_x ⊗ |x⟩⟨0|` to a unitary on system ⊗ probe.
pub fn dilate_general(p: &Povm) -> Result<DilatedMeasurement> {
    let (d, k) = (p.dim(), p.outcomes());
    let n = d * k;
    crate::linalg::check_dim(n)?;
    let roots = p
        .elements()
        .iter()
        .map(crate::linalg::psd_sqrt)
        .collect::<Result<Vec<_>>>()?;
    // columns with probe index 0, ordered by system index
    let isometry = ComplexMatrix::from_fn(n, d, |row, t| {
        let (s, x) = (row / k, row % k);
        roots[x].matrix()[(s, t)]
    });
    let complement = orthogonal_complement(&isometry)?;
    let mut u = ComplexMatrix::zeros(n, n);
    let mut next = 0;
    for t in 0..d {
        u.set_column(t * k, &isometry.column(t));
        for q in 1..k {
            u.set_column(t * k + q, &complement.column(next));
            next += 1;
        }
    }
    DilatedMeasurement::new(u, d, k)
}

/// Convenience for tests and examples: statistics of a state under a dilation.
pub fn dilated_statistics(d: &DilatedMeasurement, rho: &DensityOperator) -> Result<Vec<f64>> {
    d.outcome_probabilities(rho.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, max_abs, outer, sample_binary_povm, ComplexVector, Seed};

    fn plus() -> ComplexMatrix {
        let s = 0.5_f64.sqrt();
        outer(&ComplexVector::from_vec(vec![c(s), c(s)]))
    }

    fn accept_prob(p: &BinaryPovm, rho: &ComplexMatrix) -> f64 {
        dilate_binary(p).unwrap().outcome_probabilities(rho).unwrap()[ACCEPT]
    }

    #[test]
    fn binary_deterministic_cases() {
        let rho = crate::linalg::sample_state(3, Seed(4)).unwrap();
        let always = BinaryPovm::new(HermitianOperator::identity(3)).unwrap();
        let never = BinaryPovm::new(HermitianOperator::zeros(3)).unwrap();
        assert!((accept_prob(&always, rho.matrix()) - 1.0).abs() < 1e-12);
        assert!(accept_prob(&never, rho.matrix()).abs() < 1e-12);
    }

    #[test]
    fn binary_plus_on_zero() {
        let p = BinaryPovm::new(HermitianOperator::new(plus()).unwrap()).unwrap();
        let rho = diag(&[1.0, 0.0]);
        assert!((accept_prob(&p, &rho) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn binary_rejects_non_effects() {
        let h = HermitianOperator::new(diag(&[1.5, 0.2])).unwrap();
        assert!(matches!(BinaryPovm::new(h), Err(Error::MeasurementSpec(_))));
    }

    #[test]
    fn general_projective_and_trine() {
        let povm = Povm::new(vec![
            HermitianOperator::new(basis_projector(2, 0)).unwrap(),
            HermitianOperator::new(basis_projector(2, 1)).unwrap(),
        ])
        .unwrap();
        let d = dilate_general(&povm).unwrap();
        let probs = d.outcome_probabilities(&diag(&[0.3, 0.7])).unwrap();
        assert!((probs[0] - 0.3).abs() < 1e-12 && (probs[1] - 0.7).abs() < 1e-12);

        let trine: Vec<HermitianOperator> = (0..3)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                let v = ComplexVector::from_vec(vec![c((theta / 2.0).cos()), c((theta / 2.0).sin())]);
                HermitianOperator::new(outer(&v) * c(2.0 / 3.0)).unwrap()
            })
            .collect();
        let d = dilate_general(&Povm::new(trine).unwrap()).unwrap();
        assert!(crate::linalg::unitarity_defect(d.unitary()) < 1e-9);
        let probs = d.outcome_probabilities(&(identity(2) * c(0.5))).unwrap();
        for p in probs {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn povm_validation() {
        let bad = vec![
            HermitianOperator::new(diag(&[0.5, 0.5])).unwrap(),
            HermitianOperator::new(diag(&[0.4, 0.5])).unwrap(),
        ];
        assert!(matches!(Povm::new(bad), Err(Error::MeasurementSpec(_))));
        let neg = vec![
            HermitianOperator::new(diag(&[1.2, 0.5])).unwrap(),
            HermitianOperator::new(diag(&[-0.2, 0.5])).unwrap(),
        ];
        assert!(matches!(Povm::new(neg), Err(Error::MeasurementSpec(_))));
    }

    #[test]
    fn projectors_are_projectors() {
        for s in 0..20 {
            let p = sample_binary_povm(2 + s as usize % 4, Seed(s)).unwrap();
            let d = dilate_binary(&p).unwrap();
            let acc = d.accept_projector(ACCEPT).unwrap();
            let rej = d.reject_projector().unwrap();
            assert!(max_abs(&(acc.matrix() * acc.matrix() - acc.matrix())) < 1e-9);
            assert_eq!(acc.matrix() + rej.matrix(), identity(2 * p.dim()));
            let rho = crate::linalg::sample_state(p.dim(), Seed(100 + s)).unwrap();
            let embedded = d.embed(rho.matrix()).unwrap();
            let lhs = acc.expectation(&embedded);
            assert!((lhs - p.accept_probability(rho.matrix())).abs() < 1e-9);
        }
        let p = sample_binary_povm(2, Seed(0)).unwrap();
        let d = dilate_binary(&p).unwrap();
        assert!(matches!(d.accept_projector(2), Err(Error::Range { .. })));
    }
}
