//! Bell states, teleportation (algebraic and circuit forms) and the
//! identity-gate decoherence sweep.
//!
//! Teleport circuit layout on the 5-qubit device, where only qubit 2 may be a
//! CNOT target:
//!
//! ```text
//! q0  prep ──●── H ── M      message, Alice
//! q1  H ──●──┼──────── M     Bob
//! q2  ────X──X──────── M     Alice's half of the pair
//! ```
//!
//! Alice's outcome `(m, n)` is `(q0, q2)`; Bob's qubit is `q1`. Both CNOTs
//! target q2, so the circuit runs on the device without retargeting.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{retarget_cnots, Circuit, DeviceModel, Instruction};
use crate::engine::{execute, Processor, RunState};
use crate::error::{Error, Result};
use crate::gates::{GateKind, Unitary2};
use crate::measure::{derive_seed, probabilities, sample, Histogram};
use crate::noise::{evolve_with, NoiseConfig};
use crate::qmath::{mat2_mul, DensityMatrix, Mat2, PureState, TwoQubitState, C64, ZERO};

pub const MESSAGE_QUBIT: usize = 0;
pub const BOB_QUBIT: usize = 1;
pub const ALICE_PAIR_QUBIT: usize = 2;

/// Label of the Bell state `(|0n⟩ + (−1)^m |1n̄⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BellIndex {
    pub n: u8,
    pub m: u8,
}

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [
        BellIndex { n: 0, m: 0 },
        BellIndex { n: 0, m: 1 },
        BellIndex { n: 1, m: 0 },
        BellIndex { n: 1, m: 1 },
    ];

    pub fn new(n: u8, m: u8) -> Result<Self> {
        if n > 1 || m > 1 {
            return Err(Error::InvalidInstruction(format!(
                "Bell index ({n},{m}) is not a bit pair"
            )));
        }
        Ok(Self { n, m })
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "β{}{}", self.n, self.m)
    }
}

pub fn bell_state(idx: BellIndex) -> TwoQubitState {
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let sign = if idx.m == 0 { r } else { -r };
    let mut amps = [ZERO; 4];
    amps[idx.n as usize] = r;
    amps[2 + (1 - idx.n as usize)] = sign;
    TwoQubitState {
        a: amps[0],
        b: amps[1],
        c: amps[2],
        d: amps[3],
    }
}

/// `a|0⟩ + b|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InputState1Q {
    #[serde(serialize_with = "ser_complex")]
    pub a: C64,
    #[serde(serialize_with = "ser_complex")]
    pub b: C64,
}

fn ser_complex<S: serde::Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl InputState1Q {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let norm_sqr = a.norm_sqr() + b.norm_sqr();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { a, b })
    }

    /// State reached from `|0⟩` by the gate sequence.
    pub fn from_prep(prep: &[GateKind]) -> Result<Self> {
        let u = Unitary2::from_sequence(prep)?;
        let m = u.matrix();
        Ok(Self {
            a: m[0][0],
            b: m[1][0],
        })
    }

    pub fn to_pure(&self) -> PureState {
        PureState::from_amplitudes(vec![self.a, self.b]).expect("normalized")
    }

    fn amps(&self) -> [C64; 2] {
        [self.a, self.b]
    }
}

/// `|⟨ψ|φ⟩|` for single-qubit amplitude pairs.
pub fn overlap_1q(psi: [C64; 2], phi: [C64; 2]) -> f64 {
    (psi[0].conj() * phi[0] + psi[1].conj() * phi[1]).norm()
}

fn apply_gates(gates: &[GateKind], v: [C64; 2]) -> Result<[C64; 2]> {
    let m = Unitary2::from_sequence(gates)?;
    let m = m.matrix();
    Ok([
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ])
}

/// Pauli correction per two-bit outcome, gates listed in application order
/// (`ZX` means X first, then Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionTable {
    entries: BTreeMap<(u8, u8), Vec<GateKind>>,
}

impl CorrectionTable {
    pub fn get(&self, first: u8, second: u8) -> &[GateKind] {
        &self.entries[&(first, second)]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u8, u8), &[GateKind])> {
        self.entries.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Operator-order label: `[]` → "I", `[X]` → "X", `[X, Z]` → "ZX".
pub fn correction_label(gates: &[GateKind]) -> String {
    if gates.is_empty() {
        return "I".into();
    }
    gates
        .iter()
        .rev()
        .map(|g| g.mnemonic().to_uppercase())
        .collect()
}

/// Bob's corrections for the Bell-measurement protocol over channel `β11`,
/// keyed by Alice's Bell outcome `(n, m)`.
pub fn bell_correction_table() -> CorrectionTable {
    CorrectionTable {
        entries: BTreeMap::from([
            ((0, 0), vec![GateKind::X, GateKind::Z]),
            ((1, 0), vec![GateKind::Z]),
            ((0, 1), vec![GateKind::X]),
            ((1, 1), vec![]),
        ]),
    }
}

/// Corrections for the teleport circuit, keyed by the measured bits `(m, n)`.
pub fn circuit_correction_table() -> CorrectionTable {
    CorrectionTable {
        entries: BTreeMap::from([
            ((0, 0), vec![]),
            ((0, 1), vec![GateKind::X]),
            ((1, 0), vec![GateKind::Z]),
            ((1, 1), vec![GateKind::X, GateKind::Z]),
        ]),
    }
}

/// Linear map taking Alice's input `(a, b)` to Bob's (unnormalized) state
/// when Alice projects onto `outcome` with `channel` shared.
fn bob_map(channel: BellIndex, outcome: BellIndex) -> Mat2 {
    // qubit order: message, Alice's half, Bob
    let ch = bell_state(channel);
    let ch = [ch.a, ch.b, ch.c, ch.d];
    let out = bell_state(outcome);
    let out = [out.a, out.b, out.c, out.d];
    let mut map = [[ZERO; 2]; 2];
    for (input, col) in [(0usize, 0usize), (1, 1)] {
        for bob in 0..2 {
            let mut acc = ZERO;
            for half in 0..2 {
                acc += out[(input << 1) | half].conj() * ch[(half << 1) | bob];
            }
            map[bob][col] = acc;
        }
    }
    map
}

/// The Pauli word from `{I, X, Z, ZX}` that undoes Bob's map up to phase.
pub fn derived_correction(channel: BellIndex, outcome: BellIndex) -> Vec<GateKind> {
    let map = bob_map(channel, outcome);
    let candidates: [&[GateKind]; 4] = [
        &[],
        &[GateKind::X],
        &[GateKind::Z],
        &[GateKind::X, GateKind::Z],
    ];
    candidates
        .into_iter()
        .max_by(|a, b| {
            let score = |g: &[GateKind]| {
                let p = Unitary2::from_sequence(g).expect("single-qubit gates");
                let prod = mat2_mul(p.matrix(), &map);
                // ∝ identity ⇔ |tr| = 2·|scale|, off-diagonals vanish
                (prod[0][0] + prod[1][1]).norm() - prod[0][1].norm() - prod[1][0].norm()
            };
            score(a).total_cmp(&score(b))
        })
        .expect("non-empty")
        .to_vec()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicBranch {
    /// Bob's normalized state right after Alice's measurement.
    pub bob: [C64; 2],
    pub probability: f64,
    pub correction: Vec<GateKind>,
}

/// Bob's collapsed state and correction for Alice's Bell outcome. Channel
/// `β11` uses [`bell_correction_table`]; other channels use
/// [`derived_correction`].
pub fn teleport_algebraic(
    input: &InputState1Q,
    channel: BellIndex,
    alice_outcome: BellIndex,
) -> AlgebraicBranch {
    let map = bob_map(channel, alice_outcome);
    let raw = [
        map[0][0] * input.a + map[0][1] * input.b,
        map[1][0] * input.a + map[1][1] * input.b,
    ];
    let probability = raw[0].norm_sqr() + raw[1].norm_sqr();
    let scale = 1.0 / probability.sqrt();
    let correction = if channel == (BellIndex { n: 1, m: 1 }) {
        bell_correction_table()
            .get(alice_outcome.n, alice_outcome.m)
            .to_vec()
    } else {
        derived_correction(channel, alice_outcome)
    };
    AlgebraicBranch {
        bob: [raw[0] * scale, raw[1] * scale],
        probability,
        correction,
    }
}

impl AlgebraicBranch {
    pub fn corrected(&self) -> [C64; 2] {
        apply_gates(&self.correction, self.bob).expect("pauli corrections")
    }
}

/// Three-qubit teleport circuit with `prep` applied to the message qubit.
/// All three qubits are measured.
pub fn build_teleport_circuit(prep: &[GateKind]) -> Result<Circuit> {
    if prep.contains(&GateKind::CNOT) {
        return Err(Error::TwoQubitGate("cx"));
    }
    let mut c = Circuit::new(3)?.with_name("teleport");
    c.extend(prep.iter().map(|&g| Instruction::gate(g, MESSAGE_QUBIT)))?;
    c.extend([
        Instruction::gate(GateKind::H, BOB_QUBIT),
        Instruction::cnot(BOB_QUBIT, ALICE_PAIR_QUBIT),
        Instruction::cnot(MESSAGE_QUBIT, ALICE_PAIR_QUBIT),
        Instruction::gate(GateKind::H, MESSAGE_QUBIT),
        Instruction::MeasureZ(MESSAGE_QUBIT),
        Instruction::MeasureZ(BOB_QUBIT),
        Instruction::MeasureZ(ALICE_PAIR_QUBIT),
    ])?;
    Ok(c)
}

fn layout_index(m: usize, bob: usize, n: usize) -> usize {
    (m << 2) | (bob << 1) | n
}

/// Closed-form pre-measurement state of the teleport circuit:
/// `½ Σ_mn |mn⟩ X^n Z^m |ψ⟩` with Alice's bits on q0, q2 and Bob on q1.
pub fn computed_state(input: &InputState1Q) -> PureState {
    let (a, b) = (input.a, input.b);
    let half = C64::new(0.5, 0.0);
    let branches = [
        ((0, 0), [a, b]),
        ((0, 1), [b, a]),
        ((1, 0), [a, -b]),
        ((1, 1), [-b, a]),
    ];
    let mut amps = vec![ZERO; 8];
    for ((m, n), bob) in branches {
        for (k, amp) in bob.into_iter().enumerate() {
            amps[layout_index(m, k, n)] = half * amp;
        }
    }
    PureState::from_amplitudes(amps).expect("normalized")
}

/// Bob's normalized amplitudes given Alice's bits, with the branch probability.
pub fn bob_branch_pure(state: &PureState, m: u8, n: u8) -> (f64, [C64; 2]) {
    let amps = state.amplitudes();
    let raw = [
        amps[layout_index(m as usize, 0, n as usize)],
        amps[layout_index(m as usize, 1, n as usize)],
    ];
    let p = raw[0].norm_sqr() + raw[1].norm_sqr();
    let s = if p > 0.0 { 1.0 / p.sqrt() } else { 0.0 };
    (p, [raw[0] * s, raw[1] * s])
}

/// Bob's normalized reduced state given Alice's bits, with the branch probability.
pub fn bob_branch_mixed(rho: &DensityMatrix, m: u8, n: u8) -> (f64, Mat2) {
    let idx = |bob| layout_index(m as usize, bob, n as usize);
    let mut block = [[ZERO; 2]; 2];
    for (i, row) in block.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = rho.get(idx(i), idx(j));
        }
    }
    let p = block[0][0].re + block[1][1].re;
    let s = if p > 0.0 { 1.0 / p } else { 0.0 };
    (p, block.map(|row| row.map(|v| v * s)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub m: u8,
    pub n: u8,
    pub probability: f64,
    pub correction: String,
    /// `|⟨ψ|φ⟩|` on the ideal processor, `⟨ψ|ρ|ψ⟩` on the real one.
    pub fidelity: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TeleportReport {
    pub processor: Processor,
    pub input: InputState1Q,
    /// Exact distribution over `q0 q1 q2`.
    pub probabilities: BTreeMap<String, f64>,
    pub histogram: Histogram,
    pub branches: Vec<BranchReport>,
}

/// Runs the teleport circuit for `input_prep`, reports the outcome
/// distribution and each branch's fidelity after the circuit correction.
pub fn run_teleport(
    input_prep: &[GateKind],
    processor: Processor,
    shots: u64,
    seed: u64,
    device: &DeviceModel,
) -> Result<TeleportReport> {
    let input = InputState1Q::from_prep(input_prep)?;
    let circuit = retarget_cnots(&build_teleport_circuit(input_prep)?, device)?;
    let state = execute(&circuit, device, processor)?;
    let measured = circuit.measured_qubits();
    let table = circuit_correction_table();
    let psi = input.amps();

    let branches = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .map(|(m, n)| {
            let correction = table.get(m, n);
            let (probability, fidelity) = match &state {
                RunState::Pure(s) => {
                    let (p, bob) = bob_branch_pure(s, m, n);
                    (p, overlap_1q(psi, apply_gates(correction, bob)?))
                }
                RunState::Mixed(rho) => {
                    let (p, bob) = bob_branch_mixed(rho, m, n);
                    let u = Unitary2::from_sequence(correction)?;
                    let corrected = mat2_mul(&mat2_mul(u.matrix(), &bob), u.dagger().matrix());
                    let f = (psi[0].conj() * (corrected[0][0] * psi[0] + corrected[0][1] * psi[1])
                        + psi[1].conj() * (corrected[1][0] * psi[0] + corrected[1][1] * psi[1]))
                        .re;
                    (p, f)
                }
            };
            Ok(BranchReport {
                m,
                n,
                probability,
                correction: correction_label(correction),
                fidelity,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TeleportReport {
        processor,
        input,
        probabilities: probabilities(&state, &measured)?,
        histogram: sample(&state, &measured, shots, seed)?,
        branches,
    })
}

/// `½ Σ |p − q|` over the union of outcomes.
pub fn total_variation(p: &BTreeMap<String, f64>, q: &BTreeMap<String, f64>) -> f64 {
    let keys: std::collections::BTreeSet<&String> = p.keys().chain(q.keys()).collect();
    keys.into_iter()
        .map(|k| (p.get(k).unwrap_or(&0.0) - q.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    /// Identity gates after the Hadamard.
    pub n: usize,
    pub p0: f64,
    pub p1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub qubit: usize,
    /// Seconds per gate slot; point `n` sits at `t = n·tau`.
    pub tau: f64,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,t_seconds,p0,p1\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{:e},{},{}\n",
                p.n,
                p.n as f64 * self.tau,
                p.p0,
                p.p1
            ));
        }
        out
    }
}

/// Exact probabilities or finite-shot estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Exact,
    Shots { shots: u64, seed: u64 },
}

/// The circuit `H q; Id×n q; measure q` on the device register.
pub fn idle_probe_circuit(num_qubits: usize, q: usize, n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits)?.with_name(format!("idle-probe-q{q}-n{n}"));
    c.push(Instruction::gate(GateKind::H, q))?;
    c.extend(std::iter::repeat_n(Instruction::gate(GateKind::Id, q), n))?;
    c.push(Instruction::MeasureZ(q))?;
    Ok(c)
}

/// Runs the idle probe for `n = 0..=n_max` on qubit `q`.
pub fn decoherence_sweep(
    q: usize,
    n_max: usize,
    processor: Processor,
    device: &DeviceModel,
    sampling: Sampling,
) -> Result<SweepResult> {
    if q >= device.num_qubits {
        return Err(Error::QubitOutOfRange {
            index: q,
            num_qubits: device.num_qubits,
        });
    }
    let noise = match processor {
        Processor::Ideal => NoiseConfig::disabled(device.num_qubits),
        Processor::Real => NoiseConfig::from_device(device),
    };
    let points = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let circuit = idle_probe_circuit(device.num_qubits, q, n)?;
            let violations = crate::circuit::validate(&circuit, device);
            if !violations.is_empty() {
                return Err(Error::Rejected(violations));
            }
            let rho = evolve_with(&circuit, &noise)?;
            let (p0, p1) = match sampling {
                Sampling::Exact => {
                    let probs = probabilities(&rho, &[q])?;
                    let p0 = probs.get("0").copied().unwrap_or(0.0);
                    (p0, probs.get("1").copied().unwrap_or(0.0))
                }
                Sampling::Shots { shots, seed } => {
                    let h = sample(&rho, &[q], shots, derive_seed(seed, n as u64))?;
                    let c0 = h.counts.get("0").copied().unwrap_or(0);
                    (c0 as f64 / shots as f64, (shots - c0) as f64 / shots as f64)
                }
            };
            Ok(SweepPoint { n, p0, p1 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        qubit: q,
        tau: device.gate_time_tau,
        points,
    })
}

/// `p0(n) = 1 − (1−γ)^(n+1)/2` for the idle probe under pure relaxation.
pub fn idle_probe_closed_form(gamma: f64, n: usize) -> f64 {
    1.0 - (1.0 - gamma).powi(n as i32 + 1) / 2.0
}
