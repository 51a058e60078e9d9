//! Ideal (statevector) and real (noisy density-matrix) execution.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{validate, Circuit, DeviceModel, Instruction};
use crate::error::{Error, Result};
use crate::gates::{matrix_of, Unitary2};
use crate::noise::evolve_noisy;
use crate::qmath::{DensityMatrix, PureState, QuantumState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Processor {
    Ideal,
    Real,
}

impl fmt::Display for Processor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Processor::Ideal => "ideal",
            Processor::Real => "real",
        })
    }
}

impl FromStr for Processor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ideal" => Ok(Processor::Ideal),
            "real" => Ok(Processor::Real),
            other => Err(format!(
                "unknown processor `{other}` (expected ideal or real)"
            )),
        }
    }
}

/// Unitary evolution of `c` from `|0…0⟩`; measurement markers are skipped.
pub fn evolve_ideal(c: &Circuit) -> Result<PureState> {
    let mut state = PureState::zero(c.num_qubits())?;
    apply_circuit(&mut state, c)?;
    Ok(state)
}

/// Applies the gates of `c` to an existing state.
pub fn apply_circuit<S: QuantumState + ?Sized>(state: &mut S, c: &Circuit) -> Result<()> {
    for instr in c.instructions() {
        match *instr {
            Instruction::Gate1 { kind, q } => state.apply_1q(&matrix_of(kind)?, q)?,
            Instruction::Cnot { control, target } => state.apply_cnot(control, target)?,
            Instruction::MeasureZ(_) | Instruction::BlochMeasure(_) => {}
        }
    }
    Ok(())
}

/// Pre-measurement state from either processor.
#[derive(Debug, Clone, PartialEq)]
pub enum RunState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl RunState {
    pub fn to_density(&self) -> Result<DensityMatrix> {
        match self {
            RunState::Pure(s) => s.to_density(),
            RunState::Mixed(rho) => Ok(rho.clone()),
        }
    }
}

impl QuantumState for RunState {
    fn num_qubits(&self) -> usize {
        match self {
            RunState::Pure(s) => s.num_qubits(),
            RunState::Mixed(rho) => rho.num_qubits(),
        }
    }

    fn apply_1q(&mut self, u: &Unitary2, q: usize) -> Result<()> {
        match self {
            RunState::Pure(s) => s.apply_1q(u, q),
            RunState::Mixed(rho) => rho.apply_1q(u, q),
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        match self {
            RunState::Pure(s) => s.apply_cnot(control, target),
            RunState::Mixed(rho) => rho.apply_cnot(control, target),
        }
    }

    fn basis_probabilities(&self) -> Vec<f64> {
        match self {
            RunState::Pure(s) => s.basis_probabilities(),
            RunState::Mixed(rho) => rho.basis_probabilities(),
        }
    }

    fn reduced_1q(&self, keep: usize) -> Result<DensityMatrix> {
        match self {
            RunState::Pure(s) => s.reduced_1q(keep),
            RunState::Mixed(rho) => rho.reduced_1q(keep),
        }
    }
}

/// Validates `c` against `d` and runs it on the chosen processor.
pub fn execute(c: &Circuit, d: &DeviceModel, processor: Processor) -> Result<RunState> {
    match processor {
        Processor::Ideal => {
            let violations = validate(c, d);
            if !violations.is_empty() {
                return Err(Error::Rejected(violations));
            }
            evolve_ideal(c).map(RunState::Pure)
        }
        Processor::Real => evolve_noisy(c, d).map(RunState::Mixed),
    }
}
