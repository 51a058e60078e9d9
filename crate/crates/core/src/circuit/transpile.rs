//! CNOT retargeting for devices that restrict which qubit may be a target.

use super::{Circuit, DeviceModel, Instruction};
use crate::error::{Error, Result};
use crate::gates::GateKind;

/// Rewrites every CNOT whose target the device forbids as
/// `H H · CNOT(target→control) · H H`, which swaps the roles of the two
/// wires. Legal CNOTs and all other instructions are copied unchanged.
pub fn retarget_cnots(c: &Circuit, d: &DeviceModel) -> Result<Circuit> {
    let mut out = Circuit::new(c.num_qubits())?.with_name(c.name());
    for &instr in c.instructions() {
        match instr {
            Instruction::Cnot { control, target } if !d.is_cnot_target_allowed(target) => {
                if !d.is_cnot_target_allowed(control) {
                    return Err(Error::Untranspilable { control, target });
                }
                let (lo, hi) = (control.min(target), control.max(target));
                let hadamards = [
                    Instruction::gate(GateKind::H, lo),
                    Instruction::gate(GateKind::H, hi),
                ];
                out.extend(hadamards)?;
                out.push(Instruction::cnot(target, control))?;
                out.extend(hadamards)?;
            }
            other => out.push(other)?,
        }
    }
    Ok(out)
}
