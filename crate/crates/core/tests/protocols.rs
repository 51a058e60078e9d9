mod common;

use common::*;
use qsim_core::engine::apply_circuit;
use qsim_core::gates::GateKind;
use qsim_core::measure::probabilities;
use qsim_core::protocols::*;
use qsim_core::qmath::C64;
use qsim_core::{DeviceModel, Processor, PureState, QuantumState};

fn random_input(r: &mut impl rand::Rng) -> InputState1Q {
    let v = random_amplitudes(r, 2);
    InputState1Q::new(v[0], v[1]).unwrap()
}

/// Runs the teleport circuit on `input ⊗ |00⟩` directly, bypassing gate prep.
fn teleport_pre_measurement(input: &InputState1Q) -> PureState {
    let z = C64::new(0.0, 0.0);
    let mut amps = vec![z; 8];
    amps[0] = input.a;
    amps[4] = input.b;
    let mut s = PureState::from_amplitudes(amps).unwrap();
    apply_circuit(&mut s, &build_teleport_circuit(&[]).unwrap()).unwrap();
    s
}

#[test]
fn circuit_matches_closed_form_for_random_inputs() {
    let mut r = rng(50);
    for _ in 0..200 {
        let input = random_input(&mut r);
        let got = teleport_pre_measurement(&input);
        let want = computed_state(&input);
        for (a, b) in got.amplitudes().iter().zip(want.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}

#[test]
fn circuit_corrections_recover_input() {
    let mut r = rng(51);
    let table = circuit_correction_table();
    for _ in 0..200 {
        let input = random_input(&mut r);
        let s = teleport_pre_measurement(&input);
        for ((m, n), gates) in table.entries() {
            let (p, bob) = bob_branch_pure(&s, m, n);
            assert!((p - 0.25).abs() < 1e-10);
            let mut fixed = PureState::from_amplitudes(bob.to_vec()).unwrap();
            for &g in gates {
                fixed
                    .apply_1q(&qsim_core::gates::matrix_of(g).unwrap(), 0)
                    .unwrap();
            }
            assert!((fixed.overlap(&input.to_pure()) - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn bell_protocol_recovers_input_on_every_channel() {
    let mut r = rng(52);
    for _ in 0..100 {
        let input = random_input(&mut r);
        for channel in BellIndex::ALL {
            for outcome in BellIndex::ALL {
                let branch = teleport_algebraic(&input, channel, outcome);
                assert!((branch.probability - 0.25).abs() < 1e-10);
                let fid = overlap_1q([input.a, input.b], branch.corrected());
                assert!((fid - 1.0).abs() < 1e-10, "{channel} {outcome}");
            }
        }
    }
}

#[test]
fn ideal_teleport_reports_unit_fidelity() {
    let device = DeviceModel::ibmqx_like();
    for prep in [
        &[][..],
        &[GateKind::X],
        &[GateKind::H],
        &[GateKind::H, GateKind::T, GateKind::H],
    ] {
        let rep = run_teleport(prep, Processor::Ideal, 1024, 3, &device).unwrap();
        for b in &rep.branches {
            assert!((b.fidelity - 1.0).abs() < 1e-10);
            assert!((b.probability - 0.25).abs() < 1e-10);
        }
        assert_eq!(rep.histogram.counts.values().sum::<u64>(), 1024);
    }
}

#[test]
fn real_teleport_of_plus_degrades() {
    let device = DeviceModel::ibmqx_like();
    let ideal = run_teleport(&[GateKind::H], Processor::Ideal, 8192, 9, &device).unwrap();
    let real = run_teleport(&[GateKind::H], Processor::Real, 8192, 9, &device).unwrap();
    assert!(total_variation(&ideal.probabilities, &real.probabilities) > 0.0);
    for b in &real.branches {
        assert!(b.fidelity < 1.0 && b.fidelity > 0.5, "{b:?}");
    }
    assert!((real.probabilities.values().sum::<f64>() - 1.0).abs() < 1e-10);
}

#[test]
fn real_teleport_without_noise_is_ideal() {
    let device = DeviceModel::ibmqx_like().noiseless();
    let ideal = run_teleport(
        &[GateKind::H, GateKind::S],
        Processor::Ideal,
        100,
        1,
        &device,
    )
    .unwrap();
    let real = run_teleport(
        &[GateKind::H, GateKind::S],
        Processor::Real,
        100,
        1,
        &device,
    )
    .unwrap();
    assert!(total_variation(&ideal.probabilities, &real.probabilities) < 1e-12);
    for b in &real.branches {
        assert!((b.fidelity - 1.0).abs() < 1e-10);
    }
}

#[test]
fn sweep_follows_closed_form_and_rises() {
    let device = DeviceModel::ibmqx_like();
    let sweep = decoherence_sweep(3, 100, Processor::Real, &device, Sampling::Exact).unwrap();
    let gamma = device.qubits[3].gamma_relax;
    assert_eq!(sweep.points.len(), 101);
    for w in sweep.points.windows(2) {
        assert!(w[1].p0 > w[0].p0);
    }
    for p in &sweep.points {
        assert!((p.p0 - idle_probe_closed_form(gamma, p.n)).abs() < 1e-12);
        assert!((p.p0 + p.p1 - 1.0).abs() < 1e-12);
        assert!(p.p0 < 1.0);
    }
}

#[test]
fn noisiest_qubit_decays_fastest() {
    let device = DeviceModel::ibmqx_like();
    let sweeps: Vec<_> = (0..device.num_qubits)
        .map(|q| decoherence_sweep(q, 60, Processor::Real, &device, Sampling::Exact).unwrap())
        .collect();
    for n in 1..=60 {
        for q in [0, 1, 2, 4] {
            assert!(sweeps[3].points[n].p0 > sweeps[q].points[n].p0);
        }
    }
}

#[test]
fn ideal_sweep_is_flat() {
    let device = DeviceModel::ibmqx_like();
    let sweep = decoherence_sweep(0, 30, Processor::Ideal, &device, Sampling::Exact).unwrap();
    assert!(sweep.points.iter().all(|p| (p.p0 - 0.5).abs() < 1e-12));
}

#[test]
fn sampled_sweep_is_reproducible() {
    let device = DeviceModel::ibmqx_like();
    let s = Sampling::Shots {
        shots: 4096,
        seed: 77,
    };
    let a = decoherence_sweep(3, 20, Processor::Real, &device, s).unwrap();
    let b = decoherence_sweep(3, 20, Processor::Real, &device, s).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_csv(), b.to_csv());
    let gamma = device.qubits[3].gamma_relax;
    for p in &a.points {
        let want = idle_probe_closed_form(gamma, p.n);
        let sigma = (want * (1.0 - want) / 4096.0).sqrt();
        assert!((p.p0 - want).abs() <= 4.0 * sigma);
    }
}

#[test]
fn sweep_rejects_missing_qubit() {
    let device = DeviceModel::ibmqx_like();
    assert!(decoherence_sweep(5, 3, Processor::Real, &device, Sampling::Exact).is_err());
}

#[test]
fn zero_input_has_four_equal_outcomes() {
    let s = computed_state(&InputState1Q::from_prep(&[]).unwrap());
    let p = probabilities(&s, &[0, 1, 2]).unwrap();
    assert_eq!(p.keys().collect::<Vec<_>>(), ["000", "011", "100", "111"]);
    assert!(p.values().all(|v| (v - 0.25).abs() < 1e-12));
}
