// One-shot capacity lower bound, optimized over a grid of priors and
// hypothesis-test levels. At a single channel use the penalty term
// log(1/(eps^2/4 - eps')) dominates and the bound is negative; over blocks of
// a noiseless bit it grows roughly by one bit per use.

use cqseqdec::decoder::{capacity_lower_bound, simplex_grid, CqChannel};
use cqseqdec::linalg::{basis_projector, c, identity, DensityOperator};

fn depolarized(bit: usize, p: f64) -> cqseqdec::Result<DensityOperator> {
    DensityOperator::new(basis_projector(2, bit) * c(1.0 - p) + identity(2) * c(p / 2.0))
}

fn main() -> cqseqdec::Result<()> {
    let eps = 0.4;
    let eps_primes: Vec<f64> = (1..8).map(|k| 0.005 * k as f64).collect();
    for p in [0.0, 0.1, 0.3] {
        let channel = CqChannel::from_outputs(vec![depolarized(0, p)?, depolarized(1, p)?])?;
        let bound = capacity_lower_bound(&channel, eps, &simplex_grid(2, 20), &eps_primes)?;
        println!(
            "noise {p}: {:.4} bits at prior {:?}, eps' {}",
            bound.bits, bound.prior, bound.eps_prime
        );
    }

    let bit = CqChannel::from_outputs(vec![depolarized(0, 0.0)?, depolarized(1, 0.0)?])?;
    for n in 1..=5 {
        let block = bit.tensor_power(n)?;
        let uniform = vec![vec![1.0 / block.alphabet_size() as f64; block.alphabet_size()]];
        let bound = capacity_lower_bound(&block, eps, &uniform, &[0.005])?;
        println!("noiseless bit, {n} uses: {:.4} bits", bound.bits);
    }
    Ok(())
}
