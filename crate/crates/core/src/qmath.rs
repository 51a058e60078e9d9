//! Complex linear algebra and state containers.
//!
//! Basis ordering: qubit 0 is the most significant bit of a basis index, so
//! the bitstring of index `i` on an `n`-qubit register reads `q0 q1 … q(n-1)`
//! left to right, the same order the wires appear in a circuit file.
//!
//! Gate application is stride-based over amplitude pairs; no dense
//! `2^n × 2^n` operator is ever built.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::Unitary2;

pub type C64 = Complex64;

/// Row-major 2×2 complex matrix. Used for unitaries and Kraus operators alike.
pub type Mat2 = [[C64; 2]; 2];

/// Largest register a [`PureState`] can hold.
pub const MAX_QUBITS: usize = 16;
/// Largest register a [`DensityMatrix`] can hold.
pub const MAX_DENSITY_QUBITS: usize = 10;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_dagger(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Largest elementwise modulus of `a - b`.
pub fn mat2_distance(a: &Mat2, b: &Mat2) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}

pub const IDENTITY2: Mat2 = [[ONE, ZERO], [ZERO, ONE]];

/// Bit mask selecting qubit `q` inside a basis index of an `n`-qubit register.
#[inline]
pub fn qubit_mask(num_qubits: usize, q: usize) -> usize {
    1 << (num_qubits - 1 - q)
}

/// Bit value of qubit `q` in basis index `index`.
#[inline]
pub fn qubit_bit(num_qubits: usize, index: usize, q: usize) -> usize {
    (index >> (num_qubits - 1 - q)) & 1
}

/// Fixed-width bitstring of `index`, qubit 0 first.
pub fn bitstring(index: usize, width: usize) -> String {
    format!("{:0width$b}", index, width = width)
}

fn check_qubit(q: usize, num_qubits: usize) -> Result<()> {
    if q >= num_qubits {
        return Err(Error::QubitOutOfRange {
            index: q,
            num_qubits,
        });
    }
    Ok(())
}

fn check_cnot(control: usize, target: usize, num_qubits: usize) -> Result<()> {
    check_qubit(control, num_qubits)?;
    check_qubit(target, num_qubits)?;
    if control == target {
        return Err(Error::InvalidInstruction(format!(
            "cnot control and target are both q{control}"
        )));
    }
    Ok(())
}

/// Common surface of the ideal and noisy state containers.
pub trait QuantumState {
    fn num_qubits(&self) -> usize;

    fn apply_1q(&mut self, u: &Unitary2, q: usize) -> Result<()>;

    fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()>;

    /// Born-rule probability of every basis index.
    fn basis_probabilities(&self) -> Vec<f64>;

    /// Reduced state of a single qubit.
    fn reduced_1q(&self, keep: usize) -> Result<DensityMatrix>;
}

/// Pure state vector over `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl PureState {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[0] = ONE;
        Ok(Self { num_qubits, amps })
    }

    /// Wraps an amplitude vector; it must have power-of-two length and unit norm.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadDimension(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { num_qubits, amps })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies an arbitrary 2×2 matrix to wire `q`. Callers are responsible
    /// for unitarity.
    pub(crate) fn apply_mat2(&mut self, m: &Mat2, q: usize) {
        let mask = qubit_mask(self.num_qubits, q);
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + mask {
                let a0 = self.amps[i];
                let a1 = self.amps[i + mask];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i + mask] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += mask << 1;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|`, the overlap modulo global phase.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm()
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(self)
    }
}

impl QuantumState for PureState {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn apply_1q(&mut self, u: &Unitary2, q: usize) -> Result<()> {
        check_qubit(q, self.num_qubits)?;
        self.apply_mat2(u.matrix(), q);
        Ok(())
    }

    fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_cnot(control, target, self.num_qubits)?;
        let cmask = qubit_mask(self.num_qubits, control);
        let tmask = qubit_mask(self.num_qubits, target);
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
        Ok(())
    }

    fn basis_probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn reduced_1q(&self, keep: usize) -> Result<DensityMatrix> {
        check_qubit(keep, self.num_qubits)?;
        let mask = qubit_mask(self.num_qubits, keep);
        let (mut r00, mut r01, mut r11) = (0.0, ZERO, 0.0);
        for i in (0..self.amps.len()).filter(|i| i & mask == 0) {
            let a0 = self.amps[i];
            let a1 = self.amps[i | mask];
            r00 += a0.norm_sqr();
            r11 += a1.norm_sqr();
            r01 += a0 * a1.conj();
        }
        Ok(DensityMatrix {
            num_qubits: 1,
            elems: vec![C64::new(r00, 0.0), r01, r01.conj(), C64::new(r11, 0.0)],
        })
    }
}

/// Density operator over `2^n` basis states, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    elems: Vec<C64>,
}

impl DensityMatrix {
    /// `|0…0⟩⟨0…0|`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_DENSITY_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_DENSITY_QUBITS,
            });
        }
        let dim = 1 << num_qubits;
        let mut elems = vec![ZERO; dim * dim];
        elems[0] = ONE;
        Ok(Self { num_qubits, elems })
    }

    /// Projector onto a pure state.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        let n = state.num_qubits();
        if n > MAX_DENSITY_QUBITS {
            return Err(Error::Capacity {
                requested: n,
                max: MAX_DENSITY_QUBITS,
            });
        }
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut elems = Vec::with_capacity(dim * dim);
        for a in amps {
            for b in amps {
                elems.push(a * b.conj());
            }
        }
        Ok(Self {
            num_qubits: n,
            elems,
        })
    }

    /// Builds from a row-major element list. Checks shape, unit trace and
    /// Hermiticity; positivity is the caller's responsibility.
    pub fn from_elements(elems: Vec<C64>) -> Result<Self> {
        let len = elems.len();
        let dim = (len as f64).sqrt().round() as usize;
        if dim < 2 || dim * dim != len || !dim.is_power_of_two() {
            return Err(Error::BadDimension(len));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        if num_qubits > MAX_DENSITY_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_DENSITY_QUBITS,
            });
        }
        let rho = Self { num_qubits, elems };
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr: tr.re });
        }
        if rho.hermiticity_error() > 1e-10 {
            return Err(Error::InvalidInstruction(
                "density matrix is not Hermitian".into(),
            ));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn elements(&self) -> &[C64] {
        &self.elems
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.elems[row * self.dim() + col]
    }

    pub fn trace(&self) -> C64 {
        let dim = self.dim();
        (0..dim).map(|i| self.elems[i * dim + i]).sum()
    }

    /// Largest elementwise `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut err: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                err = err.max((self.elems[i * dim + j] - self.elems[j * dim + i].conj()).norm());
            }
        }
        err
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        let dim = self.dim();
        let mut p = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                p += (self.elems[i * dim + j] * self.elems[j * dim + i]).re;
            }
        }
        p
    }

    /// Largest elementwise modulus of `self − other`.
    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        self.elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `⟨ψ|ρ|ψ⟩` for a pure state on the same register.
    pub fn expectation_of_pure(&self, psi: &PureState) -> f64 {
        let dim = self.dim();
        let amps = psi.amplitudes();
        let mut acc = ZERO;
        for i in 0..dim {
            for j in 0..dim {
                acc += amps[i].conj() * self.elems[i * dim + j] * amps[j];
            }
        }
        acc.re
    }

    /// ρ ← M ρ on wire `q`.
    fn left_mul(&mut self, m: &Mat2, q: usize) {
        let dim = self.dim();
        let mask = qubit_mask(self.num_qubits, q);
        for i in (0..dim).filter(|i| i & mask == 0) {
            let (r0, r1) = (i * dim, (i | mask) * dim);
            for col in 0..dim {
                let a0 = self.elems[r0 + col];
                let a1 = self.elems[r1 + col];
                self.elems[r0 + col] = m[0][0] * a0 + m[0][1] * a1;
                self.elems[r1 + col] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// ρ ← ρ M† on wire `q`.
    fn right_mul_dagger(&mut self, m: &Mat2, q: usize) {
        let dim = self.dim();
        let mask = qubit_mask(self.num_qubits, q);
        let (c00, c01, c10, c11) = (
            m[0][0].conj(),
            m[0][1].conj(),
            m[1][0].conj(),
            m[1][1].conj(),
        );
        for row in self.elems.chunks_exact_mut(dim) {
            for j in (0..dim).filter(|j| j & mask == 0) {
                let a0 = row[j];
                let a1 = row[j | mask];
                row[j] = a0 * c00 + a1 * c01;
                row[j | mask] = a0 * c10 + a1 * c11;
            }
        }
    }

    /// ρ ← M ρ M† on wire `q`.
    pub(crate) fn conjugate_by(&mut self, m: &Mat2, q: usize) {
        self.left_mul(m, q);
        self.right_mul_dagger(m, q);
    }

    /// ρ ← Σ K ρ K† on wire `q`. Operators are not checked here.
    pub(crate) fn apply_kraus(&mut self, ops: &[Mat2], q: usize) {
        match ops {
            [] => {}
            [only] => self.conjugate_by(only, q),
            _ => {
                // The channel mixes only the 2×2 blocks spanned by wire `q`
                // in row and column, so each block is updated in place.
                let dim = self.dim();
                let mask = qubit_mask(self.num_qubits, q);
                let daggers: Vec<Mat2> = ops.iter().map(mat2_dagger).collect();
                for i in (0..dim).filter(|i| i & mask == 0) {
                    for j in (0..dim).filter(|j| j & mask == 0) {
                        let idx = [
                            [i * dim + j, i * dim + (j | mask)],
                            [(i | mask) * dim + j, (i | mask) * dim + (j | mask)],
                        ];
                        let block = idx.map(|row| row.map(|k| self.elems[k]));
                        let mut out = [[ZERO; 2]; 2];
                        for (k, kd) in ops.iter().zip(&daggers) {
                            let term = mat2_mul(&mat2_mul(k, &block), kd);
                            for r in 0..2 {
                                for c in 0..2 {
                                    out[r][c] += term[r][c];
                                }
                            }
                        }
                        for r in 0..2 {
                            for c in 0..2 {
                                self.elems[idx[r][c]] = out[r][c];
                            }
                        }
                    }
                }
            }
        }
    }

    /// Reduced single-qubit state of wire `keep`.
    pub fn partial_trace_to_1q(&self, keep: usize) -> Result<DensityMatrix> {
        check_qubit(keep, self.num_qubits)?;
        let dim = self.dim();
        let mask = qubit_mask(self.num_qubits, keep);
        let mut r = [ZERO; 4];
        for i in (0..dim).filter(|i| i & mask == 0) {
            let j = i | mask;
            r[0] += self.elems[i * dim + i];
            r[1] += self.elems[i * dim + j];
            r[2] += self.elems[j * dim + i];
            r[3] += self.elems[j * dim + j];
        }
        Ok(DensityMatrix {
            num_qubits: 1,
            elems: r.to_vec(),
        })
    }
}

impl QuantumState for DensityMatrix {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn apply_1q(&mut self, u: &Unitary2, q: usize) -> Result<()> {
        check_qubit(q, self.num_qubits)?;
        self.conjugate_by(u.matrix(), q);
        Ok(())
    }

    fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        check_cnot(control, target, self.num_qubits)?;
        let dim = self.dim();
        let cmask = qubit_mask(self.num_qubits, control);
        let tmask = qubit_mask(self.num_qubits, target);
        let flips: Vec<usize> = (0..dim)
            .filter(|i| i & cmask != 0 && i & tmask == 0)
            .collect();
        for &i in &flips {
            let j = i | tmask;
            for col in 0..dim {
                self.elems.swap(i * dim + col, j * dim + col);
            }
        }
        for row in self.elems.chunks_exact_mut(dim) {
            for &i in &flips {
                row.swap(i, i | tmask);
            }
        }
        Ok(())
    }

    fn basis_probabilities(&self) -> Vec<f64> {
        let dim = self.dim();
        (0..dim)
            .map(|i| self.elems[i * dim + i].re.max(0.0))
            .collect()
    }

    fn reduced_1q(&self, keep: usize) -> Result<DensityMatrix> {
        self.partial_trace_to_1q(keep)
    }
}

/// Free-function form of [`DensityMatrix::partial_trace_to_1q`].
pub fn partial_trace_to_1q(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    rho.partial_trace_to_1q(keep)
}

/// `|0…0⟩` on `num_qubits` qubits.
pub fn zero_state(num_qubits: usize) -> Result<PureState> {
    PureState::zero(num_qubits)
}

/// Default tolerance for [`TwoQubitState::is_separable`].
pub const SEPARABILITY_TOL: f64 = 1e-9;

/// `a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl TwoQubitState {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let s = Self { a, b, c, d };
        let norm_sqr = s.norm_sqr();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(s)
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        match state.amplitudes() {
            &[a, b, c, d] => Ok(Self { a, b, c, d }),
            other => Err(Error::BadDimension(other.len())),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    pub fn to_pure(&self) -> PureState {
        PureState {
            num_qubits: 2,
            amps: vec![self.a, self.b, self.c, self.d],
        }
    }

    /// Product form `(α|0⟩+β|1⟩)(γ|0⟩+δ|1⟩)` exists iff `ad − bc` vanishes.
    pub fn is_separable(&self, tol: f64) -> bool {
        (self.a * self.d - self.b * self.c).norm() <= tol
    }
}
