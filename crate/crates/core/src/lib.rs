//! Quantum circuit simulation for small registers.
//!
//! A circuit is parsed from text ([`circuit::parse`]), checked against a
//! [`circuit::DeviceModel`] and executed either on the ideal statevector
//! engine or on the noisy density-matrix engine ([`engine::execute`]).
//! [`measure`] turns the resulting state into probabilities, seeded shot
//! histograms or Bloch vectors; [`protocols`] holds teleportation and the
//! identity-gate decoherence probe.

pub mod circuit;
pub mod engine;
pub mod error;
pub mod gates;
pub mod measure;
pub mod noise;
pub mod protocols;
pub mod qmath;

pub use circuit::{Circuit, DeviceModel, Instruction, Violation, ViolationCode};
pub use engine::{execute, Processor, RunState};
pub use error::{Error, Result};
pub use gates::{GateKind, Unitary2};
pub use measure::{BlochVector, Histogram};
pub use qmath::{DensityMatrix, PureState, QuantumState, TwoQubitState, C64};
