//! Circuit IR, text format, device model, validation and CNOT retargeting.

mod device;
mod parse;
mod transpile;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gates::GateKind;
use crate::qmath::MAX_QUBITS;

pub(crate) use device::check_rate;
pub use device::{DeviceModel, QubitNoise, IBMQX_LIKE_JSON};
pub use parse::{format, parse, parse_spanned, ParseError, ParseErrorKind, SpannedCircuit};
pub use transpile::retarget_cnots;
pub use validate::{validate, Violation, ViolationCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    Gate1 { kind: GateKind, q: usize },
    Cnot { control: usize, target: usize },
    MeasureZ(usize),
    BlochMeasure(usize),
}

impl Instruction {
    pub fn gate(kind: GateKind, q: usize) -> Self {
        Instruction::Gate1 { kind, q }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Instruction::Cnot { control, target }
    }

    /// Wires touched, control first for CNOT.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Instruction::Gate1 { q, .. }
            | Instruction::MeasureZ(q)
            | Instruction::BlochMeasure(q) => {
                vec![q]
            }
            Instruction::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(
            self,
            Instruction::MeasureZ(_) | Instruction::BlochMeasure(_)
        )
    }

    pub fn gate_kind(&self) -> Option<GateKind> {
        match *self {
            Instruction::Gate1 { kind, .. } => Some(kind),
            Instruction::Cnot { .. } => Some(GateKind::CNOT),
            _ => None,
        }
    }
}

impl fmt::Display for Instruction {
    /// Canonical circuit-file line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instruction::Gate1 { kind, q } => write!(f, "{} q{}", kind.mnemonic(), q),
            Instruction::Cnot { control, target } => write!(f, "cx q{control} q{target}"),
            Instruction::MeasureZ(q) => write!(f, "measure q{q}"),
            Instruction::BlochMeasure(q) => write!(f, "bloch q{q}"),
        }
    }
}

/// Ordered instruction list over a fixed register.
///
/// Construction guarantees qubit indices are in range, single-qubit slots
/// never hold CNOT and CNOT endpoints differ. Ordering rules (gates after a
/// measurement, missing measurements) are reported by [`validate`].
#[derive(Debug, Clone)]
pub struct Circuit {
    num_qubits: usize,
    instrs: Vec<Instruction>,
    name: String,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.num_qubits == other.num_qubits && self.instrs == other.instrs
    }
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            num_qubits,
            instrs: Vec::new(),
            name: String::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instrs
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn push(&mut self, instr: Instruction) -> Result<()> {
        for q in instr.qubits() {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        match instr {
            Instruction::Gate1 {
                kind: GateKind::CNOT,
                ..
            } => {
                return Err(Error::InvalidInstruction(
                    "cx needs a control and a target".into(),
                ))
            }
            Instruction::Cnot { control, target } if control == target => {
                return Err(Error::InvalidInstruction(format!(
                    "cx control and target are both q{control}"
                )))
            }
            _ => {}
        }
        self.instrs.push(instr);
        Ok(())
    }

    /// Builder form of [`Circuit::push`].
    pub fn with(mut self, instr: Instruction) -> Result<Self> {
        self.push(instr)?;
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Instruction>>(&mut self, instrs: I) -> Result<()> {
        instrs.into_iter().try_for_each(|i| self.push(i))
    }

    /// Qubits with a computational-basis measurement, ascending.
    pub fn measured_qubits(&self) -> Vec<usize> {
        self.collect_qubits(|i| match i {
            Instruction::MeasureZ(q) => Some(*q),
            _ => None,
        })
    }

    /// Qubits with a Bloch tomography marker, ascending.
    pub fn bloch_qubits(&self) -> Vec<usize> {
        self.collect_qubits(|i| match i {
            Instruction::BlochMeasure(q) => Some(*q),
            _ => None,
        })
    }

    fn collect_qubits(&self, pick: impl Fn(&Instruction) -> Option<usize>) -> Vec<usize> {
        self.instrs
            .iter()
            .filter_map(pick)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn has_measurement(&self) -> bool {
        self.instrs.iter().any(Instruction::is_measurement)
    }
}
