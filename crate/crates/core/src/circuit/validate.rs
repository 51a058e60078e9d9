//! Device-constraint check run before execution.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{Circuit, DeviceModel, Instruction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationCode {
    CnotTargetForbidden,
    UnknownGate,
    QubitOutOfRange,
    GateAfterMeasure,
    NoMeasurement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Offending instruction; `circuit.len()` for [`ViolationCode::NoMeasurement`].
    pub index: usize,
    pub code: ViolationCode,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at instruction {}: {}",
            self.code, self.index, self.message
        )
    }
}

/// Every reason `c` cannot run on `d`. Empty means executable.
pub fn validate(c: &Circuit, d: &DeviceModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut measured = BTreeSet::new();
    let mut push = |index, code, message: String| {
        out.push(Violation {
            index,
            code,
            message,
        })
    };

    for (index, instr) in c.instructions().iter().enumerate() {
        let qubits = instr.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= d.num_qubits) {
            push(
                index,
                ViolationCode::QubitOutOfRange,
                format!(
                    "`{instr}` uses q{q} but device {} has {} qubits",
                    d.name, d.num_qubits
                ),
            );
            continue;
        }
        if let Some(kind) = instr.gate_kind() {
            if !d.gate_set.contains(&kind) {
                push(
                    index,
                    ViolationCode::UnknownGate,
                    format!("gate `{kind}` is not offered by device {}", d.name),
                );
            }
            if let Some(&q) = qubits.iter().find(|q| measured.contains(*q)) {
                push(
                    index,
                    ViolationCode::GateAfterMeasure,
                    format!("`{instr}` acts on q{q} after it was measured"),
                );
            }
        }
        match *instr {
            Instruction::Cnot { target, .. } if !d.is_cnot_target_allowed(target) => push(
                index,
                ViolationCode::CnotTargetForbidden,
                format!(
                    "`{instr}` targets q{target}; allowed targets are {:?}",
                    d.allowed_cnot_targets
                ),
            ),
            Instruction::MeasureZ(q) | Instruction::BlochMeasure(q) => {
                measured.insert(q);
            }
            _ => {}
        }
    }
    if !c.has_measurement() {
        push(
            c.len(),
            ViolationCode::NoMeasurement,
            "circuit has no measurement".into(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse;

    fn codes(src: &str, d: &DeviceModel) -> Vec<(usize, ViolationCode)> {
        validate(&parse(src).unwrap(), d)
            .into_iter()
            .map(|v| (v.index, v.code))
            .collect()
    }

    #[test]
    fn teleport_layout_is_legal() {
        let src =
            "qubits 3\nx q0\nh q1\ncx q1 q2\ncx q0 q2\nh q0\nmeasure q0\nmeasure q1\nmeasure q2\n";
        assert!(codes(src, &DeviceModel::ibmqx_like()).is_empty());
    }

    #[test]
    fn forbidden_target() {
        let d = DeviceModel::ibmqx_like();
        assert_eq!(
            codes("qubits 3\nh q2\ncx q2 q0\nmeasure q0\n", &d),
            vec![(1, ViolationCode::CnotTargetForbidden)]
        );
    }

    #[test]
    fn missing_measurement() {
        let d = DeviceModel::ibmqx_like();
        assert_eq!(
            codes("qubits 2\nh q0\n", &d),
            vec![(1, ViolationCode::NoMeasurement)]
        );
    }

    #[test]
    fn out_of_range_and_gate_set_and_order() {
        let mut d = DeviceModel::ibmqx_like();
        d.gate_set.remove(&crate::gates::GateKind::T);
        let src = "qubits 7\nh q6\nt q0\nmeasure q1\nx q1\ncx q0 q2\nmeasure q0\n";
        assert_eq!(
            codes(src, &d),
            vec![
                (0, ViolationCode::QubitOutOfRange),
                (1, ViolationCode::UnknownGate),
                (3, ViolationCode::GateAfterMeasure),
            ]
        );
    }

    #[test]
    fn ideal_device_accepts_any_target() {
        assert!(codes("qubits 3\ncx q2 q0\nmeasure q0\n", &DeviceModel::ideal(3)).is_empty());
    }
}
