//! Reading encoded blocks back out of a simulated circuit.

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{apply_circuit_in_place, max_unitary_qubits, StateVector};
use crate::encoding::{AncillaRegister, BlockEncoding};
use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, spectral_norm, CMatrix};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_abs_error: f64,
    pub target_norm: f64,
    pub alpha: f64,
    /// Post-selection probability on the uniform superposition.
    pub success_probability: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub registers: Vec<AncillaRegister>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn check_cap(be: &BlockEncoding) -> Result<()> {
    let cap = max_unitary_qubits();
    if be.num_qubits() > cap {
        return Err(Error::QubitCapExceeded { requested: be.num_qubits(), cap });
    }
    Ok(())
}

fn check_flag(be: &BlockEncoding) -> Result<()> {
    if be.n_anc < usize::BITS as usize && be.flag >> be.n_anc != 0 {
        return Err(Error::FlagMismatch(format!("flag {} does not fit {} ancillas", be.flag, be.n_anc)));
    }
    Ok(())
}

/// `α (<flag| ⊗ I) U (|flag> ⊗ I)`, simulated one work column at a time.
pub fn extract_block(be: &BlockEncoding) -> Result<CMatrix> {
    check_cap(be)?;
    check_flag(be)?;
    let dim = be.work_dim();
    let offset = be.flag << be.n_work;
    let mut out = CMatrix::zeros(dim, dim);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << be.num_qubits()];
    for k in 0..dim {
        amps.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        amps[offset | k] = Complex64::new(1.0, 0.0);
        apply_circuit_in_place(&be.circuit, &mut amps)?;
        for i in 0..dim {
            out[(i, k)] = amps[offset | i] * be.alpha;
        }
    }
    Ok(out)
}

/// Post-selected action of a block encoding on one work state.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockAction {
    /// `(A/α) ψ`, not renormalized.
    pub output: Vec<Complex64>,
    pub success_probability: f64,
}

/// Runs `U |flag, ψ>` and keeps the flag branch.
pub fn apply_block(be: &BlockEncoding, input: &StateVector) -> Result<BlockAction> {
    check_flag(be)?;
    if input.num_qubits() != be.n_work {
        return Err(Error::DimensionMismatch { expected: be.work_dim(), found: input.dim() });
    }
    input.ensure_normalized(1e-9)?;
    let dim = be.work_dim();
    let offset = be.flag << be.n_work;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << be.num_qubits()];
    for (k, a) in input.amplitudes().iter().enumerate() {
        amps[offset | k] = *a;
    }
    apply_circuit_in_place(&be.circuit, &mut amps)?;
    let output: Vec<Complex64> = (0..dim).map(|i| amps[offset | i]).collect();
    let success_probability = output.iter().map(|a| a.norm_sqr()).sum::<f64>().min(1.0);
    Ok(BlockAction { output, success_probability })
}

/// `‖(<flag| ⊗ I) U |flag, ψ>‖²`.
pub fn success_probability(be: &BlockEncoding, input: &StateVector) -> Result<f64> {
    Ok(apply_block(be, input)?.success_probability)
}

/// Compares `extract_block(be)` with `target` entrywise.
pub fn verify_block(be: &BlockEncoding, target: &CMatrix, tol: f64) -> Result<VerificationReport> {
    let dim = be.work_dim();
    if target.nrows() != dim || target.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: target.nrows().max(target.ncols()) });
    }
    let block = extract_block(be)?;
    let max_abs_error = max_abs_diff(&block, target);
    let success_probability = success_probability(be, &StateVector::uniform(be.n_work)?)?;
    Ok(VerificationReport {
        max_abs_error,
        target_norm: spectral_norm(target),
        alpha: be.alpha,
        success_probability,
        tolerance: tol,
        passed: max_abs_error <= tol,
        registers: be.registers.clone(),
    })
}
