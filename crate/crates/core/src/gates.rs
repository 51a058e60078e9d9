//! The platform gate set.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{mat2_dagger, mat2_distance, mat2_mul, Mat2, C64, IDENTITY2, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Id,
    #[serde(rename = "cx")]
    CNOT,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Id,
        GateKind::CNOT,
    ];

    /// Every member except CNOT.
    pub const SINGLE_QUBIT: [GateKind; 9] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Id,
    ];

    /// Lowercase circuit-file mnemonic.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Id => "id",
            GateKind::CNOT => "cx",
        }
    }

    pub fn is_single_qubit(self) -> bool {
        self != GateKind::CNOT
    }

    pub fn is_clifford(self) -> bool {
        !matches!(self, GateKind::T | GateKind::Tdg)
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            g => g,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownGate(pub String);

impl fmt::Display for UnknownGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown gate mnemonic `{}`", self.0)
    }
}

impl std::error::Error for UnknownGate {}

impl FromStr for GateKind {
    type Err = UnknownGate;

    /// Case-insensitive.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        GateKind::ALL
            .into_iter()
            .find(|g| g.mnemonic() == lower)
            .ok_or_else(|| UnknownGate(s.to_string()))
    }
}

/// A 2×2 matrix known to be unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    pub const UNITARITY_TOL: f64 = 1e-12;

    pub fn new(m: Mat2) -> Result<Self> {
        let deviation = unitarity_error(&m);
        if deviation > Self::UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn dagger(&self) -> Unitary2 {
        Unitary2(mat2_dagger(&self.0))
    }

    /// `self · rhs`: `rhs` acts first.
    pub fn then_after(&self, rhs: &Unitary2) -> Unitary2 {
        Unitary2(mat2_mul(&self.0, &rhs.0))
    }

    pub fn identity() -> Unitary2 {
        Unitary2(IDENTITY2)
    }

    /// Product of a gate sequence, first element applied first.
    pub fn from_sequence(gates: &[GateKind]) -> Result<Unitary2> {
        gates.iter().try_fold(Unitary2::identity(), |acc, g| {
            Ok(matrix_of(*g)?.then_after(&acc))
        })
    }

    /// `|Tr(A†B)| / 2`; equals 1 exactly when the two agree up to global phase.
    pub fn phase_insensitive_overlap(&self, other: &Unitary2) -> f64 {
        let a = mat2_dagger(&self.0);
        let p = mat2_mul(&a, &other.0);
        (p[0][0] + p[1][1]).norm() / 2.0
    }
}

/// Largest elementwise deviation of `M†M` from the identity.
pub fn unitarity_error(m: &Mat2) -> f64 {
    mat2_distance(&mat2_mul(&mat2_dagger(m), m), &IDENTITY2)
}

pub fn matrix_of(g: GateKind) -> Result<Unitary2> {
    let i = C64::new(0.0, 1.0);
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let t = C64::from_polar(1.0, FRAC_PI_4);
    let m = match g {
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Y => [[ZERO, -i], [i, ZERO]],
        GateKind::Z => [[ONE, ZERO], [ZERO, -ONE]],
        GateKind::H => [[r, r], [r, -r]],
        GateKind::S => [[ONE, ZERO], [ZERO, i]],
        GateKind::Sdg => [[ONE, ZERO], [ZERO, -i]],
        GateKind::T => [[ONE, ZERO], [ZERO, t]],
        GateKind::Tdg => [[ONE, ZERO], [ZERO, t.conj()]],
        GateKind::Id => IDENTITY2,
        GateKind::CNOT => return Err(Error::TwoQubitGate("cx")),
    };
    Ok(Unitary2(m))
}

pub fn is_clifford(g: GateKind) -> bool {
    g.is_clifford()
}
