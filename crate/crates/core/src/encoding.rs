use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};

/// A named slice of ancilla qubits inside a block encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AncillaRegister {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

/// `U` with `(<flag| ⊗ I) U (|flag> ⊗ I) = A / alpha`.
///
/// The work register is `[0, n_work)`; ancillas fill `[n_work, n_work + n_anc)`
/// and are listed in `registers`. `flag` is the ancilla basis index marking
/// success (bit `i` belongs to qubit `n_work + i`).
#[derive(Clone, Debug, PartialEq)]
pub struct BlockEncoding {
    pub circuit: Circuit,
    pub n_work: usize,
    pub n_anc: usize,
    pub alpha: f64,
    pub flag: usize,
    pub registers: Vec<AncillaRegister>,
}

impl BlockEncoding {
    /// All-zeros flag; `registers` must tile the qubits above the work register.
    pub fn new(circuit: Circuit, n_work: usize, alpha: f64, registers: Vec<AncillaRegister>) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("sub-normalization must be positive, got {alpha}")));
        }
        if circuit.num_qubits() < n_work {
            return Err(Error::DimensionMismatch { expected: n_work, found: circuit.num_qubits() });
        }
        let n_anc = circuit.num_qubits() - n_work;
        let mut next = n_work;
        for r in &registers {
            if r.start != next {
                return Err(Error::InvalidParameter(format!("ancilla register `{}` starts at {}, expected {next}", r.name, r.start)));
            }
            next += r.len;
        }
        if next != circuit.num_qubits() {
            return Err(Error::DimensionMismatch { expected: circuit.num_qubits(), found: next });
        }
        Ok(BlockEncoding { circuit, n_work, n_anc, alpha, flag: 0, registers })
    }

    /// A bare unitary viewed as a block encoding with no ancillas.
    pub fn from_unitary(circuit: Circuit) -> Self {
        let n_work = circuit.num_qubits();
        BlockEncoding { circuit, n_work, n_anc: 0, alpha: 1.0, flag: 0, registers: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.n_work + self.n_anc
    }

    pub fn work_dim(&self) -> usize {
        1 << self.n_work
    }

    pub fn ancilla_qubits(&self) -> std::ops::Range<usize> {
        self.n_work..self.n_work + self.n_anc
    }
}
