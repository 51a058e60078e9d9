//! Kraus-channel noise for the density-matrix engine.
//!
//! After every gate instruction each qubit receives one slot of amplitude
//! damping followed by one slot of dephasing, at that qubit's per-slot rates.
//! Idle qubits decohere too. Measurement markers do not consume a slot.

use crate::circuit::{check_rate, validate, Circuit, DeviceModel, Instruction, QubitNoise};
use crate::error::{Error, Result};
use crate::gates::matrix_of;
use crate::qmath::{
    mat2_dagger, mat2_distance, mat2_mul, DensityMatrix, Mat2, QuantumState, C64, IDENTITY2, ZERO,
};

/// Trace-preserving single-qubit channel `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    ops: Vec<Mat2>,
}

impl KrausChannel {
    pub const COMPLETENESS_TOL: f64 = 1e-10;

    pub fn new(ops: Vec<Mat2>) -> Result<Self> {
        let deviation = completeness_error(&ops);
        if deviation > Self::COMPLETENESS_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { ops })
    }

    pub fn identity() -> Self {
        Self {
            ops: vec![IDENTITY2],
        }
    }

    pub fn operators(&self) -> &[Mat2] {
        &self.ops
    }

    /// Largest elementwise deviation of `Σ K†K` from the identity.
    pub fn completeness_error(&self) -> f64 {
        completeness_error(&self.ops)
    }
}

fn completeness_error(ops: &[Mat2]) -> f64 {
    let mut sum = [[ZERO; 2]; 2];
    for k in ops {
        let p = mat2_mul(&mat2_dagger(k), k);
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += p[i][j];
            }
        }
    }
    mat2_distance(&sum, &IDENTITY2)
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Relaxation toward `|0⟩`: `K0 = diag(1, √(1−γ))`, `K1 = √γ |0⟩⟨1|`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    check_rate("gamma", gamma)?;
    Ok(KrausChannel {
        ops: vec![
            [[real(1.0), ZERO], [ZERO, real((1.0 - gamma).sqrt())]],
            [[ZERO, real(gamma.sqrt())], [ZERO, ZERO]],
        ],
    })
}

/// Phase flip with probability `lambda`: `K0 = √(1−λ) I`, `K1 = √λ Z`.
/// Coherences scale by `1 − 2λ`.
pub fn dephasing(lambda: f64) -> Result<KrausChannel> {
    check_rate("lambda", lambda)?;
    let (a, b) = ((1.0 - lambda).sqrt(), lambda.sqrt());
    Ok(KrausChannel {
        ops: vec![
            [[real(a), ZERO], [ZERO, real(a)]],
            [[real(b), ZERO], [ZERO, real(-b)]],
        ],
    })
}

/// Applies `ch` to wire `q` of `rho` in place.
pub fn apply_channel(rho: &mut DensityMatrix, ch: &KrausChannel, q: usize) -> Result<()> {
    if q >= rho.num_qubits() {
        return Err(Error::QubitOutOfRange {
            index: q,
            num_qubits: rho.num_qubits(),
        });
    }
    rho.apply_kraus(&ch.ops, q);
    Ok(())
}

/// Per-qubit channels for the noisy engine. `enabled == false` is the ideal
/// processor.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    pub enabled: bool,
    pub qubits: Vec<QubitNoise>,
}

impl NoiseConfig {
    pub fn from_device(d: &DeviceModel) -> Self {
        Self {
            enabled: true,
            qubits: d.qubits.clone(),
        }
    }

    pub fn disabled(num_qubits: usize) -> Self {
        Self {
            enabled: false,
            qubits: vec![
                QubitNoise {
                    gamma_relax: 0.0,
                    gamma_phase: 0.0
                };
                num_qubits
            ],
        }
    }

    /// One slot's channels per qubit; zero-rate channels are omitted.
    fn slot_channels(&self, num_qubits: usize) -> Result<Vec<Vec<KrausChannel>>> {
        (0..num_qubits)
            .map(|q| {
                let mut chans = Vec::new();
                if !self.enabled {
                    return Ok(chans);
                }
                let rates = self.qubits.get(q).copied().ok_or(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.qubits.len(),
                })?;
                if rates.gamma_relax > 0.0 {
                    chans.push(amplitude_damping(rates.gamma_relax)?);
                }
                if rates.gamma_phase > 0.0 {
                    chans.push(dephasing(rates.gamma_phase)?);
                }
                Ok(chans)
            })
            .collect()
    }
}

/// Density-matrix evolution of `c` from `|0…0⟩` under the device's noise.
/// Returns the state just before measurement.
pub fn evolve_noisy(c: &Circuit, d: &DeviceModel) -> Result<DensityMatrix> {
    let violations = validate(c, d);
    if !violations.is_empty() {
        return Err(Error::Rejected(violations));
    }
    evolve_with(c, &NoiseConfig::from_device(d))
}

/// Same as [`evolve_noisy`] without the device check.
pub fn evolve_with(c: &Circuit, noise: &NoiseConfig) -> Result<DensityMatrix> {
    let n = c.num_qubits();
    let mut rho = DensityMatrix::zero(n)?;
    let slots = noise.slot_channels(n)?;
    for instr in c.instructions() {
        match *instr {
            Instruction::Gate1 { kind, q } => rho.apply_1q(&matrix_of(kind)?, q)?,
            Instruction::Cnot { control, target } => rho.apply_cnot(control, target)?,
            Instruction::MeasureZ(_) | Instruction::BlochMeasure(_) => continue,
        }
        for (q, chans) in slots.iter().enumerate() {
            for ch in chans {
                rho.apply_kraus(&ch.ops, q);
            }
        }
    }
    Ok(rho)
}
