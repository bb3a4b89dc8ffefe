//! Independent oracles shared by the integration tests. Nothing in here calls
//! the solver or simulator paths it is used to check.
#![allow(dead_code)]

use cqseqdec::linalg::{c, ComplexMatrix, ComplexVector};

/// Classical Neyman–Pearson: minimum `Σ q_i s_i` subject to `Σ q_i r_i ≥ 1 − ε`
/// with `q_i ∈ [0, 1]`, by taking symbols in decreasing likelihood ratio
/// `r_i / s_i` and a fractional last symbol.
pub fn classical_beta(r: &[f64], s: &[f64], eps: f64) -> f64 {
    let target = 1.0 - eps;
    let mut idx: Vec<usize> = (0..r.len()).filter(|&i| r[i] > 0.0).collect();
    // infinite ratio (s = 0) first
    idx.sort_by(|&a, &b| {
        let ra = if s[a] == 0.0 { f64::INFINITY } else { r[a] / s[a] };
        let rb = if s[b] == 0.0 { f64::INFINITY } else { r[b] / s[b] };
        rb.partial_cmp(&ra).unwrap()
    });
    let mut got = 0.0;
    let mut beta = 0.0;
    for i in idx {
        if got >= target {
            break;
        }
        let need = target - got;
        if r[i] <= need {
            got += r[i];
            beta += s[i];
        } else {
            beta += s[i] * need / r[i];
            got = target;
        }
    }
    beta
}

/// Brute-force qubit test search: `Q = a P(n) + b (I − P(n))` with `P(n)` the
/// Bloch projector along `n`, `n` on a `side × side` polar/azimuth grid,
/// `a` on a 1e-3 grid and `b` set to the smallest feasible grid value.
pub fn qubit_grid_beta(rho: &ComplexMatrix, sigma: &ComplexMatrix, eps: f64, side: usize) -> f64 {
    let target = 1.0 - eps;
    let mut best = f64::INFINITY;
    let steps = 1000;
    for it in 0..side {
        let theta = std::f64::consts::PI * it as f64 / (side - 1) as f64;
        for ip in 0..side {
            let phi = 2.0 * std::f64::consts::PI * ip as f64 / side as f64;
            let v = ComplexVector::from_vec(vec![
                c((theta / 2.0).cos()),
                num_complex::Complex64::from_polar((theta / 2.0).sin(), phi),
            ]);
            let expect = |m: &ComplexMatrix| v.dotc(&(m * &v)).re;
            let (r1, s1) = (expect(rho), expect(sigma));
            let (r2, s2) = (1.0 - r1, 1.0 - s1);
            for ia in 0..=steps {
                let a = ia as f64 / steps as f64;
                let rest = target - a * r1;
                let b = if rest <= 0.0 {
                    0.0
                } else if r2 <= 0.0 {
                    continue;
                } else {
                    let raw = (rest / r2 * steps as f64 - 1e-9).ceil() / steps as f64;
                    if raw > 1.0 {
                        continue;
                    }
                    raw
                };
                best = best.min(a * s1 + b * s2);
            }
        }
    }
    best
}

/// Diagonal of a matrix as reals.
pub fn real_diag(m: &ComplexMatrix) -> Vec<f64> {
    m.diagonal().iter().map(|z| z.re).collect()
}

/// Classical sequential scan: `Σ_b ρ(b) λ_m(b) Π_{j<m} (1 − λ_j(b))`.
pub fn classical_sequential(rho: &[f64], lambdas: &[Vec<f64>], m: usize) -> f64 {
    (0..rho.len())
        .map(|b| rho[b] * lambdas[m][b] * (0..m).map(|j| 1.0 - lambdas[j][b]).product::<f64>())
        .sum()
}

fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

fn psd_root(m: &ComplexMatrix) -> ComplexMatrix {
    let e = m.clone().symmetric_eigen();
    let d = ComplexMatrix::from_diagonal(&e.eigenvalues.map(|x| c(x.max(0.0).sqrt())));
    &e.eigenvectors * d * e.eigenvectors.adjoint()
}

/// `U†(I ⊗ |1⟩⟨1|)U` for the square-root dilation of `{I − Λ, Λ}` on
/// system ⊗ qubit, built from scratch.
pub fn accept_projector(lambda: &ComplexMatrix) -> ComplexMatrix {
    let d = lambda.nrows();
    let id = ComplexMatrix::identity(d, d);
    let a = psd_root(lambda);
    let r = psd_root(&(&id - lambda));
    let e = |i: usize, j: usize| {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(i, j)] = c(1.0);
        m
    };
    let u = kron(&r, &e(0, 0)) + kron(&a, &e(1, 0)) - kron(&a, &e(0, 1)) + kron(&r, &e(1, 1));
    let p1 = kron(&id, &e(1, 1));
    u.adjoint() * p1 * u
}

/// Permutation taking `S ⊗ P` to `P ⊗ S` for a qubit `P`.
fn swap_system_probe(d: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for b in 0..2 {
            s[(b * d + i, i * 2 + b)] = c(1.0);
        }
    }
    s
}

/// Unnormalized register state after applying the given outcome sequence
/// (`true` = accept projector) of literal probe projectors to
/// `ρ ⊗ |0…0⟩⟨0…0|`. The register is kept as `P_1 ⊗ ⋯ ⊗ P_j ⊗ S`, with each
/// fresh probe attached after `S` and swapped in front of it once measured.
pub fn register_branch(rho: &ComplexMatrix, ops: &[ComplexMatrix], outcomes: &[bool]) -> ComplexMatrix {
    let d = rho.nrows();
    let mut state = rho.clone();
    let mut prefix = 1usize;
    let zero = {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0);
        m
    };
    for (op, &acc) in ops.iter().zip(outcomes) {
        let pi = accept_projector(op);
        let local = if acc { pi } else { ComplexMatrix::identity(2 * d, 2 * d) - pi };
        let full = kron(&ComplexMatrix::identity(prefix, prefix), &local);
        let swap = kron(&ComplexMatrix::identity(prefix, prefix), &swap_system_probe(d));
        let grown = kron(&state, &zero);
        let applied = &full * grown * full.adjoint();
        state = &swap * applied * swap.adjoint();
        prefix *= 2;
    }
    state
}

/// `Tr{Π_m (I−Π_{m−1}) ⋯ (I−Π_1)(ρ⊗|0̄⟩⟨0̄|)(⋯)}` with explicit probes.
pub fn register_success(rho: &ComplexMatrix, ops: &[ComplexMatrix], m: usize) -> f64 {
    let mut outcomes = vec![false; m];
    outcomes.push(true);
    register_branch(rho, &ops[..=m], &outcomes).trace().re
}

/// `Σ |λ_i|` of a Hermitian matrix.
pub fn hermitian_trace_norm(m: &ComplexMatrix) -> f64 {
    let h = (m + m.adjoint()) * c(0.5);
    h.symmetric_eigen().eigenvalues.iter().map(|x| x.abs()).sum()
}
