// Sequential union bounds. For projectors the explicit product form is used;
// for general effects the bound is computed through the compressed
// accept maps and, for short sequences, checked against the probe register.

use cqseqdec::decoder::{sen_bound_check, union_bound_check, union_bound_lhs_dilated};
use cqseqdec::linalg::{Sampler, Seed};

fn main() -> cqseqdec::Result<()> {
    let mut s = Sampler::new(Seed(3));
    let sigma = s.subnormalized(4)?;

    let projectors = (0..5).map(|_| s.projector(4, 2)).collect::<cqseqdec::Result<Vec<_>>>()?;
    let sen = sen_bound_check(&sigma, &projectors)?;
    println!("projectors: lhs {:.6} <= rhs {:.6} (slack {:.3e})", sen.lhs, sen.rhs, sen.slack);

    let effects = (0..3).map(|_| s.effect(4)).collect::<cqseqdec::Result<Vec<_>>>()?;
    let ub = union_bound_check(&sigma, &effects)?;
    let dilated = union_bound_lhs_dilated(&sigma, &effects)?;
    println!("effects:    lhs {:.6} <= rhs {:.6} (slack {:.3e})", ub.lhs, ub.rhs, ub.slack);
    println!("            probe-register lhs {dilated:.12}, compressed {:.12}", ub.lhs);
    assert!(sen.holds() && ub.holds());
    Ok(())
}
