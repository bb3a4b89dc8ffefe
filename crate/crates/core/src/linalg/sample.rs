//! Seeded instance generators.
//!
//! All draws come from ChaCha8 streams, so a seed (plus optional stream
//! index) fixes every sampled object bit for bit on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{c, outer, ComplexMatrix, ComplexVector, DensityOperator, HermitianOperator};
use crate::dilation::{BinaryPovm, Povm};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Seed(pub u64);

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: Seed) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed.0),
        }
    }

    /// Independent stream `stream` under the same seed; used to give every
    /// trial of a sweep its own generator regardless of scheduling.
    pub fn for_stream(seed: Seed, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Inclusive integer range.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    fn complex_normal(&mut self) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re, im)
    }

    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        // column-major fill order is part of the determinism contract
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    /// Square complex Gaussian (Ginibre) matrix.
    pub fn ginibre(&mut self, n: usize) -> ComplexMatrix {
        self.gaussian_matrix(n, n)
    }

    pub fn gaussian_vector(&mut self, n: usize) -> ComplexVector {
        ComplexVector::from_fn(n, |_, _| self.complex_normal())
    }

    /// `G G† / Tr{G G†}` with `G` Ginibre.
    pub fn state(&mut self, dim: usize) -> Result<DensityOperator> {
        check_positive(dim)?;
        let g = self.ginibre(dim);
        let w = &g * g.adjoint();
        let tr = super::trace(&w).re;
        DensityOperator::new(w * c(1.0 / tr))
    }

    pub fn pure(&mut self, dim: usize) -> Result<DensityOperator> {
        DensityOperator::pure(&self.pure_vector(dim)?)
    }

    pub fn pure_vector(&mut self, dim: usize) -> Result<ComplexVector> {
        check_positive(dim)?;
        let v = self.gaussian_vector(dim);
        let n = v.norm();
        Ok(v / c(n))
    }

    /// A random state scaled by a uniform factor in `(0, 1]`.
    pub fn subnormalized(&mut self, dim: usize) -> Result<super::SubnormalizedState> {
        let rho = self.state(dim)?;
        let k = 1.0 - self.uniform();
        super::SubnormalizedState::new(rho.matrix() * c(k))
    }

    /// `Γ_i = S^{-1/2} W_i S^{-1/2}` with `W_i = G_i G_i†` and `S = Σ_i W_i`.
    pub fn povm(&mut self, dim: usize, outcomes: usize) -> Result<Povm> {
        check_positive(dim)?;
        if outcomes == 0 {
            return Err(Error::shape("a POVM needs at least one outcome"));
        }
        let grams: Vec<ComplexMatrix> = (0..outcomes)
            .map(|_| {
                let g = self.ginibre(dim);
                &g * g.adjoint()
            })
            .collect();
        let total = grams.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, w| acc + w);
        let e = HermitianOperator::symmetrize(total).eig()?;
        let inv_sqrt = e.map(|x| 1.0 / x.sqrt());
        let elements = grams
            .iter()
            .map(|w| HermitianOperator::symmetrize(&inv_sqrt * w * &inv_sqrt))
            .collect();
        Povm::new(elements)
    }

    pub fn binary_povm(&mut self, dim: usize) -> Result<BinaryPovm> {
        let p = self.povm(dim, 2)?;
        BinaryPovm::new(p.elements()[0].clone())
    }

    /// Projector onto the span of `rank` orthonormalized Gaussian columns.
    pub fn projector(&mut self, dim: usize, rank: usize) -> Result<HermitianOperator> {
        check_positive(dim)?;
        if rank > dim {
            return Err(Error::shape(format!("projector rank {rank} exceeds dimension {dim}")));
        }
        let g = self.gaussian_matrix(dim, rank);
        let q = super::orthonormalize_columns(&g)?;
        let mut p = ComplexMatrix::zeros(dim, dim);
        for col in q.column_iter() {
            p += outer(&col.into_owned());
        }
        Ok(HermitianOperator::symmetrize(p))
    }

    /// Haar-ish unitary from orthonormalized Ginibre columns.
    pub fn unitary(&mut self, dim: usize) -> Result<ComplexMatrix> {
        let g = self.ginibre(dim);
        super::orthonormalize_columns(&g)
    }

    /// Effect with spectrum uniformly spread in `[0, 1]` in a random basis.
    pub fn effect(&mut self, dim: usize) -> Result<HermitianOperator> {
        let u = self.unitary(dim)?;
        let values: Vec<f64> = (0..dim).map(|_| self.uniform()).collect();
        let d = super::diag(&values);
        Ok(HermitianOperator::symmetrize(&u * d * u.adjoint()))
    }
}

fn check_positive(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::shape("dimension must be at least 1"));
    }
    super::check_dim(dim)
}

pub fn sample_state(dim: usize, seed: Seed) -> Result<DensityOperator> {
    Sampler::new(seed).state(dim)
}

pub fn sample_pure(dim: usize, seed: Seed) -> Result<DensityOperator> {
    Sampler::new(seed).pure(dim)
}

pub fn sample_povm(dim: usize, outcomes: usize, seed: Seed) -> Result<Povm> {
    Sampler::new(seed).povm(dim, outcomes)
}

pub fn sample_projector(dim: usize, rank: usize, seed: Seed) -> Result<HermitianOperator> {
    Sampler::new(seed).projector(dim, rank)
}

pub fn sample_binary_povm(dim: usize, seed: Seed) -> Result<BinaryPovm> {
    Sampler::new(seed).binary_povm(dim)
}
