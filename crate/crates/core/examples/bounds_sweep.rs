// Seeded randomized sweep of every inequality suite.

use cqseqdec::linalg::Seed;
use cqseqdec::sweep::{run_sweep, Suite, SweepConfig};

fn main() -> cqseqdec::Result<()> {
    for suite in Suite::ALL {
        let report = run_sweep(SweepConfig {
            suite,
            instances: 200,
            max_dim: 4,
            max_len: 4,
            seed: Seed(7),
        })?;
        println!(
            "{:<17} min slack {:>10.3e} at #{:<4} violations {}",
            suite.as_str(),
            report.min_slack,
            report.worst_instance,
            report.violations
        );
    }
    Ok(())
}
