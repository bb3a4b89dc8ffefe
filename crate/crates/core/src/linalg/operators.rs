use nalgebra::Complex;

use super::{
    c, eig_hermitian_matrix, hermiticity_defect, identity, tol, trace_product, ComplexMatrix,
    Eigen,
};
use crate::error::{Error, Result};

/// A square matrix equal to its adjoint.
///
/// Construction accepts inputs within [`tol::CONSTRUCTION`] of Hermitian and
/// stores the exactly Hermitian part `(M + M†)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::shape(format!(
                "Hermitian operator must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("matrix has non-finite entries".into()));
        }
        let defect = hermiticity_defect(&m);
        if defect > tol::CONSTRUCTION {
            return Err(Error::Validation(format!(
                "matrix is not Hermitian (max |M - M†| = {defect:e})"
            )));
        }
        Ok(Self::symmetrize(m))
    }

    /// Takes the Hermitian part without checking how far `m` is from it.
    pub(crate) fn symmetrize(m: ComplexMatrix) -> Self {
        let adj = m.adjoint();
        HermitianOperator((m + adj) * c(0.5))
    }

    pub fn identity(n: usize) -> Self {
        HermitianOperator(identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        HermitianOperator(ComplexMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn eig(&self) -> Result<Eigen> {
        eig_hermitian_matrix(&self.0)
    }

    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr{H A}` (real part).
    pub fn expectation(&self, a: &ComplexMatrix) -> f64 {
        trace_product(&self.0, a).re
    }

    /// `I − H`.
    pub fn complement(&self) -> Self {
        HermitianOperator(identity(self.dim()) - &self.0)
    }

    /// Checks `0 ≤ H ≤ I` within [`tol::CONSTRUCTION`] and clips the spectrum
    /// into `[0, 1]` when it strays inside that tolerance.
    pub fn into_effect(self) -> Result<Self> {
        let e = self.eig()?;
        if e.min() < -tol::CONSTRUCTION || e.max() > 1.0 + tol::CONSTRUCTION {
            return Err(Error::MeasurementSpec(format!(
                "operator spectrum [{:e}, {:e}] is outside [0, 1]",
                e.min(),
                e.max()
            )));
        }
        if e.min() < 0.0 || e.max() > 1.0 {
            Ok(Self::symmetrize(e.map(|x| x.clamp(0.0, 1.0))))
        } else {
            Ok(self)
        }
    }

    /// Scales by a real factor.
    pub fn scaled(&self, k: f64) -> Self {
        HermitianOperator(&self.0 * c(k))
    }
}

impl AsRef<ComplexMatrix> for HermitianOperator {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

fn clip_negative(h: HermitianOperator) -> Result<HermitianOperator> {
    let e = h.eig()?;
    if e.min() < -tol::PSD_CLIP {
        return Err(Error::NotPsd {
            min_eigenvalue: e.min(),
        });
    }
    if e.min() < 0.0 {
        Ok(HermitianOperator::symmetrize(e.map(|x| x.max(0.0))))
    } else {
        Ok(h)
    }
}

/// A unit-trace positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(HermitianOperator);

impl DensityOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::from_hermitian(HermitianOperator::new(m)?)
    }

    pub fn from_hermitian(h: HermitianOperator) -> Result<Self> {
        let h = clip_negative(h)?;
        let tr = h.trace();
        if (tr - 1.0).abs() > tol::CONSTRUCTION {
            return Err(Error::Validation(format!(
                "density operator has trace {tr}, expected 1"
            )));
        }
        Ok(DensityOperator(h))
    }

    /// `|ψ⟩⟨ψ|` for a normalized vector.
    pub fn pure(psi: &super::ComplexVector) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > tol::CONSTRUCTION {
            return Err(Error::Validation(format!(
                "pure state vector has norm {norm}, expected 1"
            )));
        }
        let v = psi / Complex::new(norm, 0.0);
        Ok(DensityOperator(HermitianOperator::symmetrize(super::outer(&v))))
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        DensityOperator(HermitianOperator::identity(d).scaled(1.0 / d as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn to_subnormalized(&self) -> SubnormalizedState {
        SubnormalizedState(self.0.clone())
    }
}

impl AsRef<ComplexMatrix> for DensityOperator {
    fn as_ref(&self) -> &ComplexMatrix {
        self.0.matrix()
    }
}

/// A positive semidefinite operator with trace in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubnormalizedState(HermitianOperator);

impl SubnormalizedState {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::from_hermitian(HermitianOperator::new(m)?)
    }

    pub fn from_hermitian(h: HermitianOperator) -> Result<Self> {
        let h = clip_negative(h)?;
        let tr = h.trace();
        if !(-tol::CONSTRUCTION..=1.0 + tol::CONSTRUCTION).contains(&tr) {
            return Err(Error::Validation(format!(
                "subnormalized state has trace {tr}, expected a value in [0, 1]"
            )));
        }
        Ok(SubnormalizedState(h))
    }

    /// Wraps an operator produced by a trace-nonincreasing map of a state.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        SubnormalizedState(HermitianOperator::symmetrize(m))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }
}

impl From<DensityOperator> for SubnormalizedState {
    fn from(rho: DensityOperator) -> Self {
        SubnormalizedState(rho.0)
    }
}

impl AsRef<ComplexMatrix> for SubnormalizedState {
    fn as_ref(&self) -> &ComplexMatrix {
        self.0.matrix()
    }
}

/// Validated positive semidefinite input state, normalized or not.
pub trait State {
    fn state_matrix(&self) -> &ComplexMatrix;

    fn state_dim(&self) -> usize {
        self.state_matrix().nrows()
    }
}

impl State for DensityOperator {
    fn state_matrix(&self) -> &ComplexMatrix {
        self.matrix()
    }
}

impl State for SubnormalizedState {
    fn state_matrix(&self) -> &ComplexMatrix {
        self.matrix()
    }
}
