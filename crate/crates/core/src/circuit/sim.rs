use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

const DEFAULT_UNITARY_CAP: usize = 12;
const STATEVECTOR_CAP: usize = 24;

/// Unitary-extraction cap; `PBE_MAX_QUBITS` overrides the default of 12.
pub fn max_unitary_qubits() -> usize {
    std::env::var("PBE_MAX_QUBITS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(STATEVECTOR_CAP))
        .unwrap_or(DEFAULT_UNITARY_CAP)
}

pub fn max_statevector_qubits() -> usize {
    STATEVECTOR_CAP
}

/// Dense amplitude vector of length `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|k>`.
    pub fn basis(num_qubits: usize, k: usize) -> Result<Self> {
        check_statevector_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        if k >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: k + 1 });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[k] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn uniform(num_qubits: usize) -> Result<Self> {
        check_statevector_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector { num_qubits, amps: vec![a; dim] })
    }

    /// Wraps raw amplitudes; length must be a power of two. No normalization check.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("state length {dim} is not a power of two")));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        check_statevector_width(num_qubits)?;
        Ok(StateVector { num_qubits, amps })
    }

    /// Normalizes the given real or complex amplitudes.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let mut s = Self::from_amplitudes(amps)?;
        let norm = s.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        s.amps.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::normalized(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Checks `|norm - 1| <= tol`.
    pub fn ensure_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    /// Embeds this state as the low register of a wider all-zero register.
    pub fn padded(&self, num_qubits: usize) -> Result<Self> {
        if num_qubits < self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: num_qubits });
        }
        check_statevector_width(num_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[..self.amps.len()].copy_from_slice(&self.amps);
        Ok(StateVector { num_qubits, amps })
    }
}

fn check_statevector_width(num_qubits: usize) -> Result<()> {
    if num_qubits > STATEVECTOR_CAP {
        return Err(Error::QubitCapExceeded { requested: num_qubits, cap: STATEVECTOR_CAP });
    }
    Ok(())
}

/// Dense `2^n x 2^n` unitary; column `k` is the image of `|k>`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Max entrywise `|U^dagger U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..prod.nrows() {
            for j in 0..prod.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Applies a single gate to a raw amplitude buffer of `2^n` entries.
pub(crate) fn apply_gate(amps: &mut [Complex64], gate: &Gate) {
    let [m00, m01, m10, m11] = gate.kind.matrix();
    let tbit = 1usize << gate.target;
    let mut mask = 0usize;
    let mut want = 0usize;
    for c in &gate.controls {
        mask |= 1 << c.qubit;
        if c.polarity {
            want |= 1 << c.qubit;
        }
    }
    for i in 0..amps.len() {
        if i & tbit != 0 || i & mask != want {
            continue;
        }
        let j = i | tbit;
        let (a0, a1) = (amps[i], amps[j]);
        amps[i] = m00 * a0 + m01 * a1;
        amps[j] = m10 * a0 + m11 * a1;
    }
}

/// In-place simulation on a raw buffer; the buffer length must be `2^n`.
pub fn apply_circuit_in_place(circuit: &Circuit, amps: &mut [Complex64]) -> Result<()> {
    let dim = 1usize
        .checked_shl(circuit.num_qubits() as u32)
        .filter(|_| circuit.num_qubits() <= STATEVECTOR_CAP)
        .ok_or(Error::QubitCapExceeded { requested: circuit.num_qubits(), cap: STATEVECTOR_CAP })?;
    if amps.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: amps.len() });
    }
    for g in circuit.gates() {
        g.validate(circuit.num_qubits())?;
        apply_gate(amps, g);
    }
    Ok(())
}

/// Sequential gate application; norm is preserved up to rounding.
pub fn apply_circuit(circuit: &Circuit, state: &StateVector) -> Result<StateVector> {
    if state.num_qubits != circuit.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1usize << circuit.num_qubits().min(STATEVECTOR_CAP),
            found: state.dim(),
        });
    }
    let mut amps = state.amps.clone();
    apply_circuit_in_place(circuit, &mut amps)?;
    Ok(StateVector { num_qubits: state.num_qubits, amps })
}

/// Dense unitary under the configured cap (see [`max_unitary_qubits`]).
pub fn unitary_of(circuit: &Circuit) -> Result<UnitaryMatrix> {
    unitary_of_with_cap(circuit, max_unitary_qubits())
}

pub fn unitary_of_with_cap(circuit: &Circuit, cap: usize) -> Result<UnitaryMatrix> {
    let n = circuit.num_qubits();
    if n > cap {
        return Err(Error::QubitCapExceeded { requested: n, cap });
    }
    circuit.validate()?;
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for k in 0..dim {
        col.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        col[k] = Complex64::new(1.0, 0.0);
        for g in circuit.gates() {
            apply_gate(&mut col, g);
        }
        m.column_mut(k).copy_from_slice(&col);
    }
    Ok(UnitaryMatrix(m))
}
