//! Benchmark fixtures shared by the criterion targets.

use qsim_core::circuit::{Circuit, Instruction};
use qsim_core::GateKind;

/// Layered circuit: a Hadamard column, then a CNOT ladder, repeated.
pub fn layered_circuit(num_qubits: usize, layers: usize) -> Circuit {
    let mut c = Circuit::new(num_qubits).expect("register size");
    for _ in 0..layers {
        for q in 0..num_qubits {
            c.push(Instruction::gate(GateKind::H, q)).expect("in range");
        }
        for q in 0..num_qubits - 1 {
            c.push(Instruction::cnot(q, q + 1)).expect("in range");
        }
    }
    c.push(Instruction::MeasureZ(0)).expect("in range");
    c
}
