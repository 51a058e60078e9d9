//! Born-rule probabilities, seeded shot sampling and Bloch tomography.
//!
//! Outcome keys list the measured qubits in ascending index order, lowest
//! index leftmost.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmath::{bitstring, qubit_bit, QuantumState};

/// Identifier of the sampling generator, echoed in histogram output.
pub const RNG_ID: &str = "chacha8";

/// Probabilities below this are dropped from outcome maps.
const NEGLIGIBLE: f64 = 1e-15;

fn sorted_distinct(measured: &[usize], num_qubits: usize) -> Result<Vec<usize>> {
    if measured.is_empty() {
        return Err(Error::EmptyMeasurement);
    }
    let mut qs = measured.to_vec();
    qs.sort_unstable();
    if let Some(w) = qs.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateQubit(w[0]));
    }
    if let Some(&q) = qs.last().filter(|&&q| q >= num_qubits) {
        return Err(Error::QubitOutOfRange {
            index: q,
            num_qubits,
        });
    }
    Ok(qs)
}

/// Marginal distribution indexed by outcome; the first measured qubit is the
/// most significant bit of the outcome index.
fn marginal<S: QuantumState + ?Sized>(state: &S, qs: &[usize]) -> Vec<f64> {
    let n = state.num_qubits();
    let mut out = vec![0.0; 1 << qs.len()];
    for (index, p) in state.basis_probabilities().into_iter().enumerate() {
        let outcome = qs
            .iter()
            .fold(0, |acc, &q| (acc << 1) | qubit_bit(n, index, q));
        out[outcome] += p;
    }
    out
}

/// Born-rule distribution over the measured qubits.
pub fn probabilities<S: QuantumState + ?Sized>(
    state: &S,
    measured: &[usize],
) -> Result<BTreeMap<String, f64>> {
    let qs = sorted_distinct(measured, state.num_qubits())?;
    Ok(marginal(state, &qs)
        .into_iter()
        .enumerate()
        .filter(|(_, p)| *p > NEGLIGIBLE)
        .map(|(i, p)| (bitstring(i, qs.len()), p))
        .collect())
}

/// Shot-sampled outcome counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub shots: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub counts: BTreeMap<String, u64>,
    /// Exact distribution the shots were drawn from.
    pub probabilities: BTreeMap<String, f64>,
}

impl Histogram {
    /// Observed frequency of each outcome.
    pub fn frequencies(&self) -> BTreeMap<String, f64> {
        self.counts
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / self.shots as f64))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram serializes")
    }
}

/// Seed for the `run_index`-th of several concurrent sampling runs.
pub fn derive_seed(seed: u64, run_index: u64) -> u64 {
    seed ^ run_index
}

/// Draws `shots` i.i.d. outcomes. Identical arguments give identical counts.
pub fn sample<S: QuantumState + ?Sized>(
    state: &S,
    measured: &[usize],
    shots: u64,
    seed: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let qs = sorted_distinct(measured, state.num_qubits())?;
    let dist = marginal(state, &qs);
    let weights =
        WeightedIndex::new(&dist).expect("probabilities are finite, non-negative, nonzero");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = vec![0u64; dist.len()];
    for _ in 0..shots {
        tally[weights.sample(&mut rng)] += 1;
    }
    let width = qs.len();
    Ok(Histogram {
        shots,
        seed,
        rng: RNG_ID,
        counts: tally
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (bitstring(i, width), c))
            .collect(),
        probabilities: dist
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > NEGLIGIBLE)
            .map(|(i, &p)| (bitstring(i, width), p))
            .collect(),
    })
}

/// Single-qubit tomography result.
///
/// `(theta, phi)` give the direction of `(x, y, z)`; `purity_norm` is its
/// length, 1 for pure states and 0 for a maximally mixed qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub theta: f64,
    pub phi: f64,
    pub purity_norm: f64,
}

impl BlochVector {
    /// Pauli expectations of a 2×2 density matrix given as `[ρ00, ρ01, ρ10, ρ11]`.
    fn from_reduced(r: &[num_complex::Complex64]) -> Self {
        // `+ 0.0` turns −0.0 into +0.0 so φ for |−⟩ comes out as π, not −π
        let x = 2.0 * r[1].re + 0.0;
        let y = -2.0 * r[1].im + 0.0;
        let z = r[0].re - r[3].re + 0.0;
        let purity_norm = (x * x + y * y + z * z).sqrt();
        let (theta, phi) = if purity_norm > 1e-9 {
            let theta = (z / purity_norm).clamp(-1.0, 1.0).acos();
            let phi = if theta.sin() < 1e-12 { 0.0 } else { y.atan2(x) };
            (theta, phi)
        } else {
            (0.0, 0.0)
        };
        Self {
            x,
            y,
            z,
            theta,
            phi,
            purity_norm,
        }
    }

    /// Unit vector rebuilt from the angles: `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn direction(&self) -> [f64; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }
}

pub fn bloch_measure<S: QuantumState + ?Sized>(state: &S, q: usize) -> Result<BlochVector> {
    let reduced = state.reduced_1q(q)?;
    Ok(BlochVector::from_reduced(reduced.elements()))
}

/// `φ` normalized into `[0, 2π)`.
pub fn wrap_phase(phi: f64) -> f64 {
    phi.rem_euclid(2.0 * PI)
}
