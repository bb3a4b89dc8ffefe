// Naimark dilation of a measurement into a unitary followed by a projective
// readout of a probe register.
//
//     cargo run --example naimark_dilation

use cqseqdec::dilation::{dilate_binary, dilate_general, ACCEPT};
use cqseqdec::linalg::{unitarity_defect, Sampler, Seed};

fn main() -> cqseqdec::Result<()> {
    let mut s = Sampler::new(Seed(11));
    let povm = s.povm(3, 4)?;
    let rho = s.state(3)?;

    let dilation = dilate_general(&povm)?;
    println!(
        "general: system {} probe {} unitarity defect {:.2e}",
        dilation.system_dim(),
        dilation.probe_dim(),
        unitarity_defect(dilation.unitary())
    );
    let born = povm.probabilities(rho.matrix());
    let dilated = dilation.outcome_probabilities(rho.matrix())?;
    for (k, (p, q)) in born.iter().zip(&dilated).enumerate() {
        println!("  outcome {k}: born {p:.12} dilated {q:.12}");
    }

    // The binary dilation uses a single probe qubit.
    let binary = s.binary_povm(3)?;
    let two = dilate_binary(&binary)?;
    let projector = two.accept_projector(ACCEPT)?;
    let embedded = two.embed(rho.matrix())?;
    let via_projector = projector.expectation(&embedded);
    println!(
        "binary: Tr{{Λρ}} = {:.12}, Tr{{Π (ρ⊗|0⟩⟨0|) }} = {:.12}",
        binary.accept_probability(rho.matrix()),
        via_projector
    );
    Ok(())
}
