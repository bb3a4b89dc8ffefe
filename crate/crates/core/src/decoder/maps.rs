use crate::error::Result;
use crate::linalg::{spectral_sqrt, ComplexMatrix, HermitianOperator};

/// Completely positive map `τ ↦ K₁ τ K₁† + K₂ τ K₂†`.
#[derive(Debug, Clone)]
pub struct TwoKrausMap {
    kraus: [ComplexMatrix; 2],
}

impl TwoKrausMap {
    pub fn kraus(&self) -> &[ComplexMatrix; 2] {
        &self.kraus
    }

    pub fn apply(&self, tau: &ComplexMatrix) -> ComplexMatrix {
        let [a, b] = &self.kraus;
        a * tau * a.adjoint() + b * tau * b.adjoint()
    }
}

/// One sequential step `{I − Λ, Λ}` with both branch maps precomputed from a
/// single eigendecomposition of `Λ`.
#[derive(Debug, Clone)]
pub struct BinaryStep {
    effect: HermitianOperator,
    accept: TwoKrausMap,
    reject: TwoKrausMap,
}

impl BinaryStep {
    pub fn new(effect: &HermitianOperator) -> Result<Self> {
        let effect = effect.clone().into_effect()?;
        let e = effect.eig()?;
        let lambda = e.map(|x| x.clamp(0.0, 1.0));
        let complement = e.map(|x| 1.0 - x.clamp(0.0, 1.0));
        let cross = e.map(|x| {
            let x = x.clamp(0.0, 1.0);
            spectral_sqrt(x * (1.0 - x), 1.0)
        });
        Ok(BinaryStep {
            accept: TwoKrausMap {
                kraus: [lambda, cross.clone()],
            },
            reject: TwoKrausMap {
                kraus: [complement, cross],
            },
            effect,
        })
    }

    pub fn effect(&self) -> &HermitianOperator {
        &self.effect
    }

    /// `A(τ) = ΛτΛ + √((I−Λ)Λ) τ √(Λ(I−Λ))`.
    pub fn accept(&self) -> &TwoKrausMap {
        &self.accept
    }

    /// `R(τ) = (I−Λ)τ(I−Λ) + √(Λ(I−Λ)) τ √(Λ(I−Λ))`.
    pub fn reject(&self) -> &TwoKrausMap {
        &self.reject
    }

    /// `Tr{Λτ}`.
    pub fn accept_probability(&self, tau: &ComplexMatrix) -> f64 {
        self.effect.expectation(tau)
    }
}

/// Post-rejection map of the square-root dilation of `{I − Λ, Λ}`; this is
/// what remains on the system after the probe of a rejected step is
/// discarded.
pub fn reject_map(lambda: &HermitianOperator) -> Result<TwoKrausMap> {
    Ok(BinaryStep::new(lambda)?.reject)
}

/// Post-acceptance map of the same dilation.
pub fn accept_map(lambda: &HermitianOperator) -> Result<TwoKrausMap> {
    Ok(BinaryStep::new(lambda)?.accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, max_abs, trace, Sampler, Seed};

    #[test]
    fn extreme_effects() {
        let tau = Sampler::new(Seed(1)).state(3).unwrap();
        let identity_map = reject_map(&HermitianOperator::zeros(3)).unwrap();
        assert!(max_abs(&(identity_map.apply(tau.matrix()) - tau.matrix())) < 1e-15);
        let zero_map = reject_map(&HermitianOperator::identity(3)).unwrap();
        assert!(max_abs(&zero_map.apply(tau.matrix())) < 1e-15);
    }

    #[test]
    fn trace_contract() {
        let mut s = Sampler::new(Seed(2));
        for _ in 0..50 {
            let lambda = s.effect(4).unwrap();
            let tau = s.state(4).unwrap();
            let r = reject_map(&lambda).unwrap();
            let lhs = trace(&r.apply(tau.matrix())).re;
            let rhs = lambda.complement().expectation(tau.matrix());
            assert!((lhs - rhs).abs() < 1e-10);
            let a = accept_map(&lambda).unwrap();
            let lhs = trace(&a.apply(tau.matrix())).re;
            assert!((lhs - lambda.expectation(tau.matrix())).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_effect() {
        let h = HermitianOperator::new(diag(&[1.2, 0.0])).unwrap();
        assert!(reject_map(&h).is_err());
    }
}
