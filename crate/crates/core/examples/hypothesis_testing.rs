// Hypothesis-testing divergence between two states, with its dual certificate,
// and the classical-quantum version used to build decoders.

use cqseqdec::hypothesis::{cq_state, d_h_cq, neyman_pearson};
use cqseqdec::linalg::{Sampler, Seed};

fn main() -> cqseqdec::Result<()> {
    let mut s = Sampler::new(Seed(5));
    let rho = s.state(3)?;
    let sigma = s.state(3)?;

    println!("{:>6} {:>14} {:>10} {:>10}", "eps", "beta", "D_H bits", "gap");
    for eps in [0.0, 0.01, 0.1, 0.3] {
        let t = neyman_pearson(&rho, &sigma, eps)?;
        println!(
            "{eps:>6} {:>14.10} {:>10.6} {:>10.2e}",
            t.beta(),
            t.bits(),
            t.duality_gap()
        );
    }

    let outputs = vec![s.pure(2)?, s.pure(2)?];
    let joint = cq_state(vec![0.5, 0.5], outputs)?;
    let test = d_h_cq(&joint, 0.05)?;
    println!(
        "cq test at eps 0.05: D_H = {:.6} bits, type-I error {:.6}",
        test.value, test.type1_error
    );
    Ok(())
}
