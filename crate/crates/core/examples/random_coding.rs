// Average error of random codebooks against the analytic bound
// 2 sqrt(eps' + M beta), for a qubit channel and its third tensor power.

use cqseqdec::decoder::{random_coding_experiment, CqChannel};
use cqseqdec::linalg::Seed;

fn main() -> cqseqdec::Result<()> {
    let single = CqChannel::pure_qubit_pair(0.5)?;
    let cube = single.tensor_power(3)?;
    let cube_prior = vec![1.0 / 8.0; 8];
    for (name, channel, prior) in [("n=1", &single, vec![0.5, 0.5]), ("n=3", &cube, cube_prior)] {
        for messages in [2, 4] {
            let r = random_coding_experiment(channel, &prior, messages, 0.05, 200, Seed(2024))?;
            println!(
                "{name} M={messages}: error {:.4} ± {:.4}, bound {:.4}",
                r.mean_error, r.stderr, r.analytic_bound
            );
        }
    }
    Ok(())
}
