mod common;

use cqseqdec::dilation::BinaryPovm;
use cqseqdec::gentle::{dilated_gentle, forward_backward, gentle_gap, polar_reversal, Scheme};
use cqseqdec::linalg::{diag, DensityOperator, HermitianOperator, Sampler, Seed, SubnormalizedState};

fn random_projectors(s: &mut Sampler, d: usize, n: usize) -> Vec<HermitianOperator> {
    (0..n)
        .map(|_| {
            let rank = s.range(1, d);
            s.projector(d, rank).unwrap()
        })
        .collect()
}

#[test]
fn near_identity_effect() {
    let delta = 0.01;
    let mut s = Sampler::new(Seed(1));
    for _ in 0..50 {
        let d = s.range(1, 6);
        let rho = s.state(d).unwrap();
        let g = gentle_gap(&rho, &HermitianOperator::identity(d).scaled(1.0 - delta)).unwrap();
        assert!(g.disturbance <= 0.2 + 1e-12);
        assert!((g.bound - 0.2).abs() < 1e-12);
    }
}

#[test]
fn gentle_sweep_against_oracle() {
    let mut s = Sampler::new(Seed(2));
    for i in 0..300 {
        let d = s.range(1, 6);
        let rho = s.state(d).unwrap();
        let lambda = s.effect(d).unwrap();
        let g = gentle_gap(&rho, &lambda).unwrap();
        assert!(g.slack >= -1e-8, "instance {i}");
        let e = lambda.matrix().clone().symmetric_eigen();
        let root = &e.eigenvectors
            * cqseqdec::linalg::ComplexMatrix::from_diagonal(&e.eigenvalues.map(|x| cqseqdec::linalg::c(x.max(0.0).sqrt())))
            * e.eigenvectors.adjoint();
        let post = &root * rho.matrix() * &root;
        let oracle = common::hermitian_trace_norm(&(rho.matrix() - post));
        assert!((g.disturbance - oracle).abs() < 1e-9);
    }
}

#[test]
fn dilated_gentle_sweep() {
    let mut s = Sampler::new(Seed(3));
    for i in 0..300 {
        let d = if i < 200 { 2 } else { s.range(1, 4) };
        let rho = s.state(d).unwrap();
        let p = s.binary_povm(d).unwrap();
        let g = dilated_gentle(&rho, &p).unwrap();
        assert!(g.disturbance <= g.bound + 1e-8, "instance {i}");
        let expected = 2.0 * (1.0 - p.accept_probability(rho.matrix())).max(0.0).sqrt();
        assert!((g.bound - expected).abs() < 1e-12);
    }
}

#[test]
fn commuting_projectors_are_classical() {
    let mut s = Sampler::new(Seed(4));
    for _ in 0..100 {
        let d = s.range(2, 6);
        let n = s.range(1, 5);
        let mut w: Vec<f64> = (0..d).map(|_| s.uniform() + 1e-3).collect();
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
        let masks: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| if s.uniform() < 0.75 { 1.0 } else { 0.0 }).collect())
            .collect();
        let rho = DensityOperator::new(diag(&w)).unwrap();
        let projectors: Vec<_> = masks.iter().map(|m| HermitianOperator::new(diag(m)).unwrap()).collect();
        let kept: Vec<f64> = (0..d).map(|b| masks.iter().map(|m| m[b]).product()).collect();
        let lost: f64 = (0..d).map(|b| w[b] * (1.0 - kept[b])).sum();
        for r in [polar_reversal(&rho, &projectors).unwrap(), forward_backward(&rho, &projectors).unwrap()] {
            for b in 0..d {
                assert!((r.post_state.matrix()[(b, b)].re - w[b] * kept[b]).abs() < 1e-12);
            }
            assert!((r.disturbance - lost).abs() < 1e-10);
            assert!((r.success_gap - lost).abs() < 1e-12);
            assert!(r.slack >= -1e-12 && r.gap_slack >= -1e-12, "{} {} {} {}", r.slack, r.gap_slack, r.disturbance, r.deficit);
        }
    }
}

fn reversal_sweep(subnormalized: bool, seed: u64) {
    let mut s = Sampler::new(Seed(seed));
    for i in 0..300 {
        let d = s.range(2, 6);
        let n = s.range(1, 5);
        let rho = if subnormalized {
            s.subnormalized(d).unwrap()
        } else {
            SubnormalizedState::from(s.state(d).unwrap())
        };
        let projectors = random_projectors(&mut s, d, n);
        let polar = polar_reversal(&rho, &projectors).unwrap();
        let fb = forward_backward(&rho, &projectors).unwrap();
        assert_eq!(polar.scheme, Scheme::Polar);
        assert!(polar.slack >= -1e-8, "polar {i}: {}", polar.slack);
        assert!(polar.gap_slack >= -1e-8, "polar gap {i}");
        assert!(polar.polar_residual.unwrap() <= 1e-9);
        assert!(fb.slack >= -1e-8, "fb {i}: {}", fb.slack);
        assert!(fb.gap_slack >= -1e-8, "fb gap {i}");
        assert!(fb.success_gap >= fb.forward_gap - 1e-12);
        assert!((fb.gap_bound - 2f64.sqrt() * fb.forward_gap_bound).abs() < 1e-12);
        let oracle = common::hermitian_trace_norm(&(rho.matrix() - polar.post_state.matrix()));
        assert!((polar.disturbance - oracle).abs() < 1e-9);
    }
}

#[test]
fn reversal_sweep_normalized() {
    reversal_sweep(false, 5);
}

#[test]
fn reversal_sweep_subnormalized() {
    reversal_sweep(true, 6);
}

#[test]
fn single_projector_traces_agree() {
    let mut s = Sampler::new(Seed(7));
    for _ in 0..50 {
        let d = s.range(2, 6);
        let rho = s.state(d).unwrap();
        let p = random_projectors(&mut s, d, 1);
        let polar = polar_reversal(&rho, &p).unwrap();
        let fb = forward_backward(&rho, &p).unwrap();
        assert!((polar.post_state.trace() - fb.post_state.trace()).abs() < 1e-12);
        let gentle = gentle_gap(&rho, &p[0]).unwrap();
        assert!((polar.disturbance - gentle.disturbance).abs() < 1e-10);
    }
}

#[test]
fn accept_projectors_from_dilation_are_valid_inputs() {
    let mut s = Sampler::new(Seed(8));
    let rho = s.state(2).unwrap();
    let povms: Vec<BinaryPovm> = (0..3).map(|_| s.binary_povm(2).unwrap()).collect();
    let projectors: Vec<_> = povms
        .iter()
        .map(|p| {
            cqseqdec::dilation::dilate_binary(p)
                .unwrap()
                .accept_projector(cqseqdec::dilation::ACCEPT)
                .unwrap()
        })
        .collect();
    let embedded = DensityOperator::new(
        cqseqdec::dilation::dilate_binary(&povms[0]).unwrap().embed(rho.matrix()).unwrap(),
    )
    .unwrap();
    let r = polar_reversal(&embedded, &projectors).unwrap();
    assert!(r.holds());
}
