// Gentle-measurement bounds: the single-effect disturbance bound and the two
// ways of undoing a sequence of projections.

use cqseqdec::dilation::BinaryPovm;
use cqseqdec::gentle::{dilated_gentle, forward_backward, gentle_gap, polar_reversal};
use cqseqdec::linalg::{Sampler, Seed};

fn main() -> cqseqdec::Result<()> {
    let mut s = Sampler::new(Seed(21));
    let rho = s.state(4)?;

    let effect = s.effect(4)?;
    let g = gentle_gap(&rho, &effect)?;
    let d = dilated_gentle(&rho, &BinaryPovm::new(effect)?)?;
    println!("single effect: disturbance {:.6} <= {:.6}", g.disturbance, g.bound);
    println!("dilated:       disturbance {:.6} <= {:.6}", d.disturbance, d.bound);

    let projectors = (0..4).map(|_| s.projector(4, 3)).collect::<cqseqdec::Result<Vec<_>>>()?;
    for report in [polar_reversal(&rho, &projectors)?, forward_backward(&rho, &projectors)?] {
        println!(
            "{}: disturbance {:.6} <= {:.6}, success gap {:.6} <= {:.6}",
            report.scheme, report.disturbance, report.bound, report.success_gap, report.gap_bound
        );
        if let Some(r) = report.polar_residual {
            println!("  polar residual {r:.2e}");
        }
    }
    Ok(())
}
