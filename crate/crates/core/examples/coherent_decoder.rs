// Runs the sequential decoder coherently on a pure input: every probe stays
// quantum and the result is one unnormalized branch per outcome string.

use cqseqdec::decoder::{coherent_decode, success_prob_exact};
use cqseqdec::linalg::{DensityOperator, Sampler, Seed};

fn main() -> cqseqdec::Result<()> {
    let mut s = Sampler::new(Seed(8));
    let psi = s.pure_vector(3)?;
    let ops = (0..3).map(|_| s.effect(3)).collect::<cqseqdec::Result<Vec<_>>>()?;

    let branches = coherent_decode(&psi, &ops)?;
    let total: f64 = branches.squared_norms().iter().sum();
    println!("{} branches, total weight {total:.12}", branches.branch_count());
    for b in 0..branches.branch_count() {
        let bits: String = branches.outcomes(b).iter().map(|&a| if a { '1' } else { '0' }).collect();
        println!("  {bits}: {:.6}", branches.squared_norm(b));
    }

    let rho = DensityOperator::pure(&psi)?;
    for m in 0..ops.len() {
        println!(
            "first accept at {m}: coherent {:.12} recursion {:.12}",
            branches.first_accept_probability(m)?,
            success_prob_exact(&rho, &ops, m)?
        );
    }
    Ok(())
}
