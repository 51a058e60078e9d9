mod common;

use common::*;
use qsim_core::gates::{matrix_of, GateKind};
use qsim_core::measure::probabilities;
use qsim_core::noise::{amplitude_damping, apply_channel, dephasing, KrausChannel};
use qsim_core::qmath::{bitstring, qubit_bit, Mat2, C64, SEPARABILITY_TOL};
use qsim_core::{DensityMatrix, PureState, QuantumState, TwoQubitState};
use rand::Rng;

fn random_unitary_gate(r: &mut impl Rng) -> GateKind {
    GateKind::SINGLE_QUBIT[r.random_range(0..GateKind::SINGLE_QUBIT.len())]
}

#[test]
fn apply_1q_matches_dense_lift() {
    let mut r = rng(11);
    for n in 1..=3 {
        for _ in 0..100 {
            let s = random_pure(&mut r, n);
            let g = random_unitary_gate(&mut r);
            let q = r.random_range(0..n);
            let u = matrix_of(g).unwrap();
            let mut got = s.clone();
            got.apply_1q(&u, q).unwrap();
            let want = matvec(&lift_1q(u.matrix(), q, n), s.amplitudes());
            for (a, b) in got.amplitudes().iter().zip(&want) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn apply_cnot_matches_permutation_matrix() {
    let mut r = rng(12);
    for _ in 0..200 {
        let s = random_pure(&mut r, 3);
        let control = r.random_range(0..3);
        let target = (control + r.random_range(1..3)) % 3;
        let mut got = s.clone();
        got.apply_cnot(control, target).unwrap();
        let want = matvec(&dense_cnot(control, target, 3), s.amplitudes());
        for (a, b) in got.amplitudes().iter().zip(&want) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

#[test]
fn density_unitaries_match_dense_conjugation() {
    let mut r = rng(13);
    for n in 1..=3 {
        for _ in 0..50 {
            let rho = random_density(&mut r, n, 3);
            let op = if n > 1 && r.random_bool(0.4) {
                let c = r.random_range(0..n);
                let t = (c + r.random_range(1..n)) % n;
                let mut got = rho.clone();
                got.apply_cnot(c, t).unwrap();
                (got, dense_cnot(c, t, n))
            } else {
                let u = matrix_of(random_unitary_gate(&mut r)).unwrap();
                let q = r.random_range(0..n);
                let mut got = rho.clone();
                got.apply_1q(&u, q).unwrap();
                (got, lift_1q(u.matrix(), q, n))
            };
            let (got, full) = op;
            let want = matmul(&matmul(&full, &dense_of(&rho)), &dagger(&full));
            assert!(max_diff(&dense_of(&got), &want) < 1e-12);
        }
    }
}

#[test]
fn kraus_application_matches_dense_lift() {
    let mut r = rng(14);
    for n in 1..=3 {
        for _ in 0..50 {
            let rho = random_density(&mut r, n, 4);
            let ch = if r.random_bool(0.5) {
                amplitude_damping(r.random::<f64>()).unwrap()
            } else {
                dephasing(r.random::<f64>()).unwrap()
            };
            let q = r.random_range(0..n);
            let mut got = rho.clone();
            apply_channel(&mut got, &ch, q).unwrap();
            let dense = dense_of(&rho);
            let mut want = vec![vec![C64::new(0.0, 0.0); rho.dim()]; rho.dim()];
            for k in ch.operators() {
                let lifted = lift_1q(k, q, n);
                let term = matmul(&matmul(&lifted, &dense), &dagger(&lifted));
                for (row, trow) in want.iter_mut().zip(term) {
                    for (a, b) in row.iter_mut().zip(trow) {
                        *a += b;
                    }
                }
            }
            assert!(max_diff(&dense_of(&got), &want) < 1e-12);
        }
    }
}

#[test]
fn partial_trace_matches_index_summation() {
    let mut r = rng(15);
    for n in 2..=4 {
        for _ in 0..30 {
            let rho = random_density(&mut r, n, 2);
            for keep in 0..n {
                let got = rho.partial_trace_to_1q(keep).unwrap();
                let want = partial_trace_oracle(&rho, keep);
                for (a, b) in got.elements().iter().zip(want.iter().flatten()) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }
    // pure 2-qubit states through the statevector reduction
    for _ in 0..100 {
        let s = random_pure(&mut r, 2);
        let rho = s.to_density().unwrap();
        for keep in 0..2 {
            let want = partial_trace_oracle(&rho, keep);
            let got = s.reduced_1q(keep).unwrap();
            for (a, b) in got.elements().iter().zip(want.iter().flatten()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn partial_trace_of_product_returns_factor() {
    let mut r = rng(16);
    for _ in 0..50 {
        let a = random_density(&mut r, 1, 2);
        let b = random_density(&mut r, 1, 2);
        let prod = kron(&dense_of(&a), &dense_of(&b));
        let rho = DensityMatrix::from_elements(prod.into_iter().flatten().collect()).unwrap();
        assert!(rho.partial_trace_to_1q(0).unwrap().distance(&a) < 1e-12);
        assert!(rho.partial_trace_to_1q(1).unwrap().distance(&b) < 1e-12);
    }
}

#[test]
fn separability_agrees_with_product_fitting() {
    let mut r = rng(17);
    let mut entangled_checked = 0;
    for i in 0..1000 {
        if i % 2 == 0 {
            let x = random_amplitudes(&mut r, 2);
            let y = random_amplitudes(&mut r, 2);
            let s = TwoQubitState::new(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]).unwrap();
            assert!(s.is_separable(SEPARABILITY_TOL));
        } else {
            let v = random_amplitudes(&mut r, 4);
            let s = TwoQubitState::new(v[0], v[1], v[2], v[3]).unwrap();
            let overlap = best_product_overlap([v[0], v[1], v[2], v[3]], &mut r);
            if 1.0 - overlap > 1e-6 {
                entangled_checked += 1;
                assert!(!s.is_separable(SEPARABILITY_TOL));
            }
        }
    }
    assert!(entangled_checked > 450);
}

#[test]
fn bell_pair_is_far_from_every_product() {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let overlap = best_product_overlap([C64::new(r2, 0.0), z, z, C64::new(r2, 0.0)], &mut rng(18));
    assert!((overlap - 0.5).abs() < 1e-9);
    let s = TwoQubitState::new(C64::new(r2, 0.0), z, z, C64::new(r2, 0.0)).unwrap();
    assert!(!s.is_separable(SEPARABILITY_TOL));
}

#[test]
fn probabilities_match_direct_summation() {
    let mut r = rng(19);
    let subsets: [&[usize]; 5] = [&[0], &[1], &[2], &[0, 2], &[0, 1, 2]];
    for _ in 0..50 {
        let s = random_pure(&mut r, 3);
        for qs in subsets {
            let got = probabilities(&s, qs).unwrap();
            let mut want = std::collections::BTreeMap::<String, f64>::new();
            for (i, a) in s.amplitudes().iter().enumerate() {
                let key: String = qs
                    .iter()
                    .map(|&q| if qubit_bit(3, i, q) == 1 { '1' } else { '0' })
                    .collect();
                *want.entry(key).or_default() += a.norm_sqr();
            }
            for (k, p) in &want {
                assert!(
                    (got.get(k).copied().unwrap_or(0.0) - p).abs() < 1e-12,
                    "{k}"
                );
            }
            assert!((got.values().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }
    assert_eq!(bitstring(5, 3), "101");
}

#[test]
fn damping_iterates_toward_ground() {
    let mut r = rng(20);
    for _ in 0..20 {
        let mut rho = random_density(&mut r, 1, 2);
        let ch = amplitude_damping(0.1 + 0.5 * r.random::<f64>()).unwrap();
        let mut last = rho.get(1, 1).re;
        for _ in 0..1000 {
            apply_channel(&mut rho, &ch, 0).unwrap();
            let now = rho.get(1, 1).re;
            assert!(now <= last + 1e-15);
            last = now;
        }
        assert!(rho.distance(&DensityMatrix::zero(1).unwrap()) < 1e-6);
    }
}

#[test]
fn custom_channel_completeness() {
    let z = C64::new(0.0, 0.0);
    let h = 0.5f64.sqrt();
    // bit flip with p = 1/2
    let ops: Vec<Mat2> = vec![
        [[C64::new(h, 0.0), z], [z, C64::new(h, 0.0)]],
        [[z, C64::new(h, 0.0)], [C64::new(h, 0.0), z]],
    ];
    let ch = KrausChannel::new(ops).unwrap();
    assert!(ch.completeness_error() < 1e-12);
    let mut rho = PureState::zero(1).unwrap().to_density().unwrap();
    apply_channel(&mut rho, &ch, 0).unwrap();
    assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
}
