// Decodes a three-message code over a pure-state qubit channel three ways:
// by the exact compressed recursion, on the explicit probe register, and by
// sampling measurement trajectories. Messages 1 and 2 share a codeword, so
// whenever message 1's test is a projector message 2 is never reached with a
// chance of acceptance.

use cqseqdec::decoder::{
    decoding_stats, success_prob_dilated, success_prob_exact, Codebook, CqChannel, DecoderSpec, SequentialDecoder,
};
use cqseqdec::linalg::{Sampler, Seed};

fn main() -> cqseqdec::Result<()> {
    let channel = CqChannel::pure_qubit_pair(0.5)?;
    let prior = [0.5, 0.5];
    let codebook = Codebook::from_symbols(&["0", "1", "1"], &channel)?;
    let spec = DecoderSpec::new(&channel, &prior, &codebook, 0.05)?;
    let ops = spec.position_ops();

    let decoder = SequentialDecoder::new(ops)?;
    let mut sampler = Sampler::new(Seed(1));
    let trials = 20_000;
    for (m, &x) in codebook.codewords().iter().enumerate() {
        let rho = channel.output(x);
        let exact = success_prob_exact(rho, ops, m)?;
        let dilated = success_prob_dilated(rho, ops, m)?;
        let mut hits = 0;
        for _ in 0..trials {
            if decoder.sample_trajectory(rho, &mut sampler)?.decoded == Some(m) {
                hits += 1;
            }
        }
        println!(
            "message {m}: exact {exact:.10} dilated {dilated:.10} sampled {:.4}",
            hits as f64 / trials as f64
        );
    }

    let stats = decoding_stats(&channel, &codebook, &spec)?;
    println!(
        "average error {:.6}, union bound {:.6}, random-coding bound {:.6}",
        stats.average_error, stats.sen_rhs, stats.bound_value
    );
    Ok(())
}
