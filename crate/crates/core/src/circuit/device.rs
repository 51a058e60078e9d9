//! Device description: gate set, CNOT target rule and per-qubit noise rates.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::GateKind;

/// The shipped 5-qubit device file. Its noise rates are illustrative, chosen
/// so that qubit 3 relaxes fastest; they are not measured hardware values.
pub const IBMQX_LIKE_JSON: &str = include_str!("../../devices/ibmqx-like.json");

/// Noise rates of one qubit, per gate slot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitNoise {
    pub gamma_relax: f64,
    pub gamma_phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DeviceFile", into = "DeviceFile")]
pub struct DeviceModel {
    pub name: String,
    pub num_qubits: usize,
    pub gate_set: BTreeSet<GateKind>,
    pub allowed_cnot_targets: BTreeSet<usize>,
    /// Seconds per gate slot.
    pub gate_time_tau: f64,
    pub qubits: Vec<QubitNoise>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceFile {
    name: String,
    num_qubits: usize,
    allowed_cnot_targets: Vec<usize>,
    gate_time_tau_s: f64,
    qubits: Vec<QubitNoise>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gates: Option<Vec<GateKind>>,
}

impl TryFrom<DeviceFile> for DeviceModel {
    type Error = Error;

    fn try_from(f: DeviceFile) -> Result<Self> {
        let model = DeviceModel {
            name: f.name,
            num_qubits: f.num_qubits,
            gate_set: f
                .gates
                .map(|g| g.into_iter().collect())
                .unwrap_or_else(|| GateKind::ALL.into_iter().collect()),
            allowed_cnot_targets: f.allowed_cnot_targets.into_iter().collect(),
            gate_time_tau: f.gate_time_tau_s,
            qubits: f.qubits,
        };
        model.check()?;
        Ok(model)
    }
}

impl From<DeviceModel> for DeviceFile {
    fn from(d: DeviceModel) -> Self {
        let all: BTreeSet<GateKind> = GateKind::ALL.into_iter().collect();
        DeviceFile {
            name: d.name,
            num_qubits: d.num_qubits,
            allowed_cnot_targets: d.allowed_cnot_targets.into_iter().collect(),
            gate_time_tau_s: d.gate_time_tau,
            qubits: d.qubits,
            gates: (d.gate_set != all).then(|| d.gate_set.into_iter().collect()),
        }
    }
}

impl DeviceModel {
    /// Noise-free device with every gate and every CNOT target allowed.
    pub fn ideal(num_qubits: usize) -> Self {
        DeviceModel {
            name: "ideal".into(),
            num_qubits,
            gate_set: GateKind::ALL.into_iter().collect(),
            allowed_cnot_targets: (0..num_qubits).collect(),
            gate_time_tau: 0.0,
            qubits: vec![
                QubitNoise {
                    gamma_relax: 0.0,
                    gamma_phase: 0.0
                };
                num_qubits
            ],
        }
    }

    pub fn ibmqx_like() -> Self {
        Self::from_json(IBMQX_LIKE_JSON).expect("shipped device file is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Device(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("device serializes")
    }

    pub fn check(&self) -> Result<()> {
        if self.num_qubits == 0 {
            return Err(Error::Device("num_qubits must be at least 1".into()));
        }
        if self.qubits.len() != self.num_qubits {
            return Err(Error::Device(format!(
                "{} noise entries for {} qubits",
                self.qubits.len(),
                self.num_qubits
            )));
        }
        if let Some(&t) = self
            .allowed_cnot_targets
            .iter()
            .find(|&&t| t >= self.num_qubits)
        {
            return Err(Error::Device(format!(
                "allowed CNOT target {t} out of range"
            )));
        }
        if !(self.gate_time_tau.is_finite() && self.gate_time_tau >= 0.0) {
            return Err(Error::Device(format!(
                "gate_time_tau_s = {}",
                self.gate_time_tau
            )));
        }
        for q in &self.qubits {
            check_rate("gamma_relax", q.gamma_relax)?;
            check_rate("gamma_phase", q.gamma_phase)?;
        }
        Ok(())
    }

    /// Same device with every noise rate zeroed.
    pub fn noiseless(&self) -> Self {
        let mut d = self.clone();
        for q in &mut d.qubits {
            *q = QubitNoise {
                gamma_relax: 0.0,
                gamma_phase: 0.0,
            };
        }
        d
    }

    pub fn is_cnot_target_allowed(&self, target: usize) -> bool {
        self.allowed_cnot_targets.contains(&target)
    }
}

pub(crate) fn check_rate(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::RateOutOfRange { name, value });
    }
    Ok(())
}
