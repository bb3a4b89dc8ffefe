//! Dense complex linear algebra for operators on small Hilbert spaces.
//!
//! Everything here is a pure function of its inputs. Matrices are
//! [`nalgebra`] dense matrices over `Complex64`; the domain newtypes in
//! [`operators`] add the Hermitian / positive / unit-trace invariants on top.
//!
//! Tensor products put the left factor's indices major, so the basis vector
//! `|i⟩ ⊗ |j⟩` of `C^a ⊗ C^b` has index `i * b + j`. Every routine that
//! addresses subsystems (partial traces, probe embeddings, cq block layouts)
//! follows that convention.

mod operators;
mod sample;

use std::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use operators::{DensityOperator, HermitianOperator, State, SubnormalizedState};
pub use sample::{
    sample_binary_povm, sample_povm, sample_projector, sample_pure, sample_state, Sampler, Seed,
};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Numerical tolerances shared by the whole crate.
pub mod tol {
    /// Hermiticity and unitarity tolerance at construction.
    pub const CONSTRUCTION: f64 = 1e-9;
    /// Negative eigenvalues in `[-PSD_CLIP, 0)` are clipped to zero.
    pub const PSD_CLIP: f64 = 1e-9;
    /// Allowed violation of an inequality before it is reported as broken.
    pub const SLACK: f64 = 1e-8;
    /// Eigenvalue reconstruction target.
    pub const EIG_RECONSTRUCTION: f64 = 1e-10;
    /// Relative eigenvalue magnitude below which a spectral value is treated
    /// as an exact zero before taking square roots.
    pub const SPECTRAL_ZERO: f64 = 1e-14;
}

/// `√x` for a spectral value, with values at round-off level snapped to 0.
pub(crate) fn spectral_sqrt(x: f64, scale: f64) -> f64 {
    if x <= tol::SPECTRAL_ZERO * scale.max(1.0) {
        0.0
    } else {
        x.sqrt()
    }
}

const DEFAULT_MAX_TOTAL_DIM: usize = 4096;
static MAX_TOTAL_DIM: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TOTAL_DIM);

const EIG_MAX_ITERATIONS: usize = 10_000;
/// Convergence threshold handed to the Hermitian eigensolver.
const SOLVER_EPS: f64 = 5.0 * f64::EPSILON;

/// Largest Hilbert-space dimension any constructed operator may have.
pub fn max_total_dim() -> usize {
    MAX_TOTAL_DIM.load(Ordering::Relaxed)
}

/// Overrides the dimension cap for the whole process.
pub fn set_max_total_dim(dim: usize) {
    MAX_TOTAL_DIM.store(dim.max(1), Ordering::Relaxed);
}

pub(crate) fn check_dim(requested: usize) -> Result<()> {
    let max = max_total_dim();
    if requested > max {
        return Err(Error::Size { requested, max });
    }
    Ok(())
}

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// `|i⟩⟨i|` on `C^n`.
pub fn basis_projector(n: usize, i: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(i, i)] = c(1.0);
    m
}

/// `|v⟩⟨v|` (not normalized).
pub fn outer(v: &ComplexVector) -> ComplexMatrix {
    v * v.adjoint()
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        values.len(),
        values.iter().map(|&x| c(x)),
    ))
}

/// Largest entry modulus.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// `Tr{AB}` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    max_abs(&(u.adjoint() * u - identity(u.ncols())))
}

pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Kronecker product, left factor major.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(a.nrows() * b.nrows())?;
    check_dim(a.ncols() * b.ncols())?;
    Ok(a.kronecker(b))
}

/// Tensor product of a list of factors, first factor major.
pub fn tensor_all<'a, I>(factors: I) -> Result<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut acc = ComplexMatrix::identity(1, 1);
    for f in factors {
        acc = tensor(&acc, f)?;
    }
    Ok(acc)
}

/// Traces out factor `traced` of a square operator on `⊗_k C^{dims[k]}`.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], traced: usize) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.nrows() != total {
        return Err(Error::shape(format!(
            "partial trace: factor dims {dims:?} do not match a {}x{} operator",
            m.nrows(),
            m.ncols()
        )));
    }
    if traced >= dims.len() {
        return Err(Error::Range {
            index: traced,
            len: dims.len(),
        });
    }
    let d_mid = dims[traced];
    let d_left: usize = dims[..traced].iter().product();
    let d_right: usize = dims[traced + 1..].iter().product();
    let out_dim = d_left * d_right;
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for l1 in 0..d_left {
        for r1 in 0..d_right {
            let row = l1 * d_right + r1;
            for l2 in 0..d_left {
                for r2 in 0..d_right {
                    let col = l2 * d_right + r2;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in 0..d_mid {
                        let i = (l1 * d_mid + k) * d_right + r1;
                        let j = (l2 * d_mid + k) * d_right + r2;
                        acc += m[(i, j)];
                    }
                    out[(row, col)] = acc;
                }
            }
        }
    }
    Ok(out)
}

/// Orthonormalizes the columns of `m` in order (modified Gram–Schmidt, two passes).
pub(crate) fn orthonormalize_columns(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut out: Vec<ComplexVector> = Vec::with_capacity(m.ncols());
    for (j, col) in m.column_iter().enumerate() {
        let mut v = col.into_owned();
        for _ in 0..2 {
            for q in &out {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
        }
        let n = v.norm();
        if n < 1e-10 {
            return Err(Error::numeric(
                format!("column {j} is linearly dependent on the previous ones"),
                j,
            ));
        }
        out.push(v / c(n));
    }
    Ok(ComplexMatrix::from_columns(&out))
}

/// Orthonormal basis of the orthogonal complement of the (orthonormal)
/// columns of `fixed`, built from canonical basis vectors. At every step the
/// candidate with the largest residual is taken (lowest index on ties), which
/// keeps the construction deterministic and well conditioned.
pub(crate) fn orthogonal_complement(fixed: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = fixed.nrows();
    let need = n - fixed.ncols();
    let mut basis: Vec<ComplexVector> = fixed.column_iter().map(|c| c.into_owned()).collect();
    let mut extra: Vec<ComplexVector> = Vec::with_capacity(need);
    let mut used = vec![false; n];
    for step in 0..need {
        let mut best: Option<(usize, ComplexVector, f64)> = None;
        for (k, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let mut v = ComplexVector::zeros(n);
            v[k] = c(1.0);
            for _ in 0..2 {
                for q in &basis {
                    let proj = q.dotc(&v);
                    v -= q * proj;
                }
            }
            let norm = v.norm();
            if best.as_ref().is_none_or(|b| norm > b.2) {
                best = Some((k, v, norm));
            }
        }
        let (k, v, norm) = best.ok_or_else(|| Error::numeric("no completion candidates left", step))?;
        if norm < 1e-6 {
            return Err(Error::numeric(
                format!("unitary completion is rank deficient (residual {norm:e})"),
                step,
            ));
        }
        used[k] = true;
        let v = v / c(norm);
        basis.push(v.clone());
        extra.push(v);
    }
    if extra.is_empty() {
        return Ok(ComplexMatrix::zeros(n, 0));
    }
    Ok(ComplexMatrix::from_columns(&extra))
}

/// Spectral decomposition `h = V diag(values) V†`, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    /// `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|x| x)
    }

    /// Projector onto the span of the eigenvectors selected by `keep`.
    pub fn spectral_projector(&self, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
        self.map(|x| if keep(x) { 1.0 } else { 0.0 })
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `⟨v_k| a |v_k⟩` for every eigenvector.
    pub fn diagonal_weights(&self, a: &ComplexMatrix) -> Vec<f64> {
        let av = a * &self.vectors;
        (0..self.values.len())
            .map(|k| self.vectors.column(k).dotc(&av.column(k)).re)
            .collect()
    }
}

pub fn eig_hermitian(h: &HermitianOperator) -> Result<Eigen> {
    eig_hermitian_matrix(h.matrix())
}

/// Eigendecomposition of a matrix the caller knows to be Hermitian.
pub(crate) fn eig_hermitian_matrix(h: &ComplexMatrix) -> Result<Eigen> {
    let n = h.nrows();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let decomposition = h
        .clone()
        .try_symmetric_eigen(SOLVER_EPS, EIG_MAX_ITERATIONS)
        .ok_or_else(|| Error::numeric("Hermitian eigensolver did not converge", EIG_MAX_ITERATIONS))?;
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort: ties keep the solver's order
    order.sort_by(|&a, &b| {
        decomposition.eigenvalues[b]
            .partial_cmp(&decomposition.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| decomposition.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_columns(
        &order
            .iter()
            .map(|&k| decomposition.eigenvectors.column(k).into_owned())
            .collect::<Vec<_>>(),
    );
    let e = Eigen { values, vectors };
    check_reconstruction(h, &e.reconstruct(), "Hermitian eigensolver")?;
    Ok(e)
}

/// Guards against a decomposition that reports convergence but does not
/// reproduce its input.
fn check_reconstruction(original: &ComplexMatrix, rebuilt: &ComplexMatrix, what: &str) -> Result<()> {
    let defect = max_abs(&(rebuilt - original));
    let scale = max_abs(original).max(1.0);
    if defect.is_nan() || defect > tol::EIG_RECONSTRUCTION * scale {
        return Err(Error::numeric(
            format!("{what} reconstruction defect {defect:e}"),
            EIG_MAX_ITERATIONS,
        ));
    }
    Ok(())
}

/// Principal square root of a positive semidefinite operator.
pub fn psd_sqrt(h: &HermitianOperator) -> Result<HermitianOperator> {
    let e = eig_hermitian(h)?;
    if e.min() < -tol::PSD_CLIP {
        return Err(Error::NotPsd {
            min_eigenvalue: e.min(),
        });
    }
    let scale = e.max().abs();
    Ok(HermitianOperator::symmetrize(e.map(|x| spectral_sqrt(x, scale))))
}

/// Singular values (descending) with left and right singular vectors for
/// the values above the zero cutoff.
struct SingularParts {
    values: Vec<f64>,
    left: Vec<ComplexVector>,
    right: Vec<ComplexVector>,
}

/// Relative size below which a singular value is treated as zero when
/// pairing singular vectors.
const SINGULAR_ZERO: f64 = 1e-12;

/// Singular value decomposition read off the Hermitian eigendecomposition of
/// `[[0, m], [m†, 0]]`, whose eigenvalues are `±σ_i` with eigenvectors
/// `(u_i, ±v_i)/√2`. This keeps absolute accuracy in every `σ_i`.
fn singular_parts(m: &ComplexMatrix) -> Result<SingularParts> {
    let n = m.nrows();
    let mut j = ComplexMatrix::zeros(2 * n, 2 * n);
    j.view_mut((0, n), (n, n)).copy_from(m);
    j.view_mut((n, 0), (n, n)).copy_from(&m.adjoint());
    let e = eig_hermitian_matrix(&j)?;
    let values: Vec<f64> = e.values[..n].iter().map(|&x| x.max(0.0)).collect();
    let cutoff = SINGULAR_ZERO * values[0].max(1.0);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &sv) in values.iter().enumerate() {
        if sv <= cutoff {
            break;
        }
        let col = e.vectors.column(i);
        left.push(col.rows(0, n).into_owned());
        right.push(col.rows(n, n).into_owned());
    }
    Ok(SingularParts { values, left, right })
}

/// Orthonormal completion of `kept` to a full basis, kept columns first.
fn complete_basis(kept: &[ComplexVector], n: usize) -> Result<ComplexMatrix> {
    let head = if kept.is_empty() {
        ComplexMatrix::zeros(n, 0)
    } else {
        orthonormalize_columns(&ComplexMatrix::from_columns(kept))?
    };
    let tail = orthogonal_complement(&head)?;
    let mut full = ComplexMatrix::zeros(n, n);
    full.view_mut((0, 0), (n, head.ncols())).copy_from(&head);
    full.view_mut((0, head.ncols()), (n, tail.ncols())).copy_from(&tail);
    Ok(full)
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::shape("trace norm of a non-square matrix"));
    }
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    if hermiticity_defect(m) <= tol::EIG_RECONSTRUCTION * max_abs(m).max(1.0) {
        let h = (m + m.adjoint()) * c(0.5);
        return Ok(eig_hermitian_matrix(&h)?.values.iter().map(|x| x.abs()).sum());
    }
    Ok(singular_parts(m)?.values.iter().sum())
}

/// Polar factorization `v · m = abs_m` with `abs_m = √(m†m)`.
#[derive(Debug, Clone)]
pub struct Polar {
    pub unitary: ComplexMatrix,
    pub abs: HermitianOperator,
}

/// Polar decomposition from a singular value decomposition `m = W Σ X†`:
/// `v = X W†` and `|m| = X Σ X†`. Singular vectors for zero singular values
/// are completed by [`orthogonal_complement`], separately on each side, so
/// `v` is deterministic on the kernel as well.
pub fn polar_unitary(m: &ComplexMatrix) -> Result<Polar> {
    if !m.is_square() {
        return Err(Error::shape("polar decomposition of a non-square matrix"));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Polar {
            unitary: ComplexMatrix::zeros(0, 0),
            abs: HermitianOperator::symmetrize(ComplexMatrix::zeros(0, 0)),
        });
    }
    check_dim(2 * n)?;
    let parts = singular_parts(m)?;
    let w = complete_basis(&parts.left, n)?;
    let x = complete_basis(&parts.right, n)?;
    let unitary = &x * w.adjoint();
    let kept = parts.right.len();
    let mut xs = x.columns(0, kept).into_owned();
    for (j, &sv) in parts.values[..kept].iter().enumerate() {
        for i in 0..n {
            xs[(i, j)] *= sv;
        }
    }
    let abs = HermitianOperator::symmetrize(xs * x.columns(0, kept).adjoint());
    Ok(Polar { unitary, abs })
}
