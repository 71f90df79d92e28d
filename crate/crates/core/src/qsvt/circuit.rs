use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::phases::PhaseFactors;
use crate::circuit::{Circuit, Control};
use crate::encoding::{AncillaRegister, BlockEncoding};
use crate::error::{Error, Result};

/// `W_x` phases rewritten for projector-controlled rotations.
pub fn reflection_phases(phases: &PhaseFactors) -> Vec<f64> {
    let d = phases.degree;
    let w = &phases.angles;
    if d == 0 {
        return vec![w[0]];
    }
    let mut r: Vec<f64> = w.iter().map(|p| p - FRAC_PI_2).collect();
    r[0] = w[0] - FRAC_PI_4 + d as f64 * FRAC_PI_2;
    r[d] = w[d] - FRAC_PI_4;
    r
}

fn projector_phase(c: &mut Circuit, ancillas: &[usize], q: usize, angle: f64) {
    let controls: Vec<Control> = ancillas.iter().map(|&a| Control::off(a)).collect();
    c.mcx(controls.clone(), q);
    c.rz(q, 2.0 * angle);
    c.mcx(controls, q);
}

/// Interleaves `U`, `U†` and projector phases on one extra qubit, Hadamard
/// sandwiched so the flag block is the real polynomial `P(A/α)`.
///
/// The result has `α = 1`; its flag covers `be`'s ancillas plus the new qubit.
pub fn build_qsvt_circuit(be: &BlockEncoding, phases: &PhaseFactors) -> Result<BlockEncoding> {
    phases.validate()?;
    if be.flag != 0 {
        return Err(Error::FlagMismatch(format!("QSVT needs the all-zeros flag, got {:#b}", be.flag)));
    }
    let q = be.num_qubits();
    let ancillas: Vec<usize> = be.ancilla_qubits().collect();
    let r = reflection_phases(phases);
    let d = phases.degree;
    let forward = be.circuit.widened(q + 1);
    let backward = forward.adjoint();
    let mut c = Circuit::new(q + 1);
    c.h(q);
    for step in 0..=d {
        projector_phase(&mut c, &ancillas, q, r[d - step]);
        if step < d {
            c.append(if step % 2 == 0 { &forward } else { &backward })?;
        }
    }
    c.h(q);
    let mut registers = be.registers.clone();
    registers.push(AncillaRegister { name: "qsvt".into(), start: q, len: 1 });
    BlockEncoding::new(c, be.n_work, 1.0, registers)
}

/// `(A₀ + A₁)/2` from two encodings sharing one register layout, using one
/// extra ancilla; the result has `α = 2` relative to the unit-α inputs.
pub fn combine_halves(a: &BlockEncoding, b: &BlockEncoding) -> Result<BlockEncoding> {
    if a.num_qubits() != b.num_qubits() || a.n_work != b.n_work || a.alpha != 1.0 || b.alpha != 1.0 {
        return Err(Error::InvalidParameter("halves must share layout and have unit sub-normalization".into()));
    }
    let s = a.num_qubits();
    let mut c = Circuit::new(s + 1);
    c.h(s);
    c.append(&a.circuit.controlled(&[Control::off(s)])?)?;
    c.append(&b.circuit.controlled(&[Control::on(s)])?)?;
    c.h(s);
    let mut registers = a.registers.clone();
    registers.push(AncillaRegister { name: "parity".into(), start: s, len: 1 });
    BlockEncoding::new(c, a.n_work, 2.0, registers)
}
