//! Independent reference implementations used by the integration tests.
//! Everything here builds explicit dense operators and never touches the
//! stride kernels under test.
#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use qsim_core::circuit::{Circuit, Instruction};
use qsim_core::gates::GateKind;
use qsim_core::qmath::{Mat2, C64};
use qsim_core::{DensityMatrix, PureState, QuantumState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Dense = Vec<Vec<C64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn identity(dim: usize) -> Dense {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn from_mat2(m: &Mat2) -> Dense {
    vec![m[0].to_vec(), m[1].to_vec()]
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![C64::new(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![C64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            for j in 0..m {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Dense) -> Dense {
    let n = a.len();
    (0..a[0].len())
        .map(|j| (0..n).map(|i| a[i][j].conj()).collect())
        .collect()
}

pub fn matvec(a: &Dense, v: &[C64]) -> Vec<C64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// `I ⊗ … ⊗ M ⊗ … ⊗ I` with qubit 0 as the leftmost factor.
pub fn lift_1q(m: &Mat2, q: usize, n: usize) -> Dense {
    let mut out = vec![vec![C64::new(1.0, 0.0)]];
    for wire in 0..n {
        let factor = if wire == q { from_mat2(m) } else { identity(2) };
        out = kron(&out, &factor);
    }
    out
}

/// `|0⟩⟨0|_c ⊗ I + |1⟩⟨1|_c ⊗ X_t`.
pub fn dense_cnot(control: usize, target: usize, n: usize) -> Dense {
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    let p0 = [[o, z], [z, z]];
    let p1 = [[z, z], [z, o]];
    let x = [[z, o], [o, z]];
    let mut a = vec![vec![o]];
    let mut b = vec![vec![o]];
    for wire in 0..n {
        let (fa, fb) = if wire == control {
            (from_mat2(&p0), from_mat2(&p1))
        } else if wire == target {
            (identity(2), from_mat2(&x))
        } else {
            (identity(2), identity(2))
        };
        a = kron(&a, &fa);
        b = kron(&b, &fb);
    }
    a.iter()
        .zip(&b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn dense_of(rho: &DensityMatrix) -> Dense {
    let dim = rho.dim();
    (0..dim)
        .map(|i| (0..dim).map(|j| rho.get(i, j)).collect())
        .collect()
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn random_amplitudes(r: &mut impl Rng, dim: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(r.sample(StandardNormal), r.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn random_pure(r: &mut impl Rng, n: usize) -> PureState {
    PureState::from_amplitudes(random_amplitudes(r, 1 << n)).unwrap()
}

/// Random mixed state as a convex mix of `k` random pure projectors.
pub fn random_density(r: &mut impl Rng, n: usize, k: usize) -> DensityMatrix {
    let dim = 1 << n;
    let weights: Vec<f64> = (0..k).map(|_| r.random::<f64>() + 0.05).collect();
    let total: f64 = weights.iter().sum();
    let mut elems = vec![C64::new(0.0, 0.0); dim * dim];
    for w in weights {
        let v = random_amplitudes(r, dim);
        for i in 0..dim {
            for j in 0..dim {
                elems[i * dim + j] += v[i] * v[j].conj() * (w / total);
            }
        }
    }
    DensityMatrix::from_elements(elems).unwrap()
}

/// Random single-qubit gate sequences and CNOTs.
pub fn random_circuit(r: &mut impl Rng, n: usize, depth: usize) -> Circuit {
    let mut c = Circuit::new(n).unwrap();
    for _ in 0..depth {
        if n > 1 && r.random_bool(0.3) {
            let control = r.random_range(0..n);
            let mut target = r.random_range(0..n - 1);
            if target >= control {
                target += 1;
            }
            c.push(Instruction::cnot(control, target)).unwrap();
        } else {
            let g = GateKind::SINGLE_QUBIT[r.random_range(0..GateKind::SINGLE_QUBIT.len())];
            c.push(Instruction::gate(g, r.random_range(0..n))).unwrap();
        }
    }
    c
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(rho: &DensityMatrix) -> f64 {
    let dim = rho.dim();
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        let v = rho.get(i, j);
        Complex::new(v.re, v.im)
    });
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Reduced 2×2 state by explicit summation over the traced indices.
pub fn partial_trace_oracle(rho: &DensityMatrix, keep: usize) -> [[C64; 2]; 2] {
    let n = rho.num_qubits();
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    let others: Vec<usize> = (0..n).filter(|&w| w != keep).collect();
    let index = |bit_keep: usize, rest: usize| -> usize {
        // rest enumerates the other wires, first listed wire most significant
        let mut bits = vec![0usize; n];
        bits[keep] = bit_keep;
        for (pos, &w) in others.iter().enumerate() {
            bits[w] = (rest >> (others.len() - 1 - pos)) & 1;
        }
        bits.iter().fold(0, |acc, b| (acc << 1) | b)
    };
    for (a, row) in out.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            for rest in 0..(1 << others.len()) {
                *cell += rho.get(index(a, rest), index(b, rest));
            }
        }
    }
    out
}

/// Largest product-state overlap `max |⟨αβ|ψ⟩|²` by alternating optimisation
/// from several random starts.
pub fn best_product_overlap(amps: [C64; 4], r: &mut impl Rng) -> f64 {
    let mut best: f64 = 0.0;
    for _ in 0..8 {
        let mut beta = random_amplitudes(r, 2);
        let mut fid = 0.0;
        for _ in 0..200 {
            // α ∝ Σ_j ψ_ij conj(β_j)
            let mut alpha = [
                amps[0] * beta[0].conj() + amps[1] * beta[1].conj(),
                amps[2] * beta[0].conj() + amps[3] * beta[1].conj(),
            ];
            let na = (alpha[0].norm_sqr() + alpha[1].norm_sqr()).sqrt();
            alpha = [alpha[0] / na, alpha[1] / na];
            let mut b = [
                amps[0] * alpha[0].conj() + amps[2] * alpha[1].conj(),
                amps[1] * alpha[0].conj() + amps[3] * alpha[1].conj(),
            ];
            let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
            fid = nb * nb;
            b = [b[0] / nb, b[1] / nb];
            beta = b.to_vec();
        }
        best = best.max(fid);
    }
    best
}
