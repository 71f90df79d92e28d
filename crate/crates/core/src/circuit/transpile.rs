//! Lowering to the {single-qubit, CNOT} basis and resource counting.
//!
//! Rules:
//! - 0-polarity controls are conjugated with X.
//! - Toffoli: 6 CNOT + 9 single-qubit gates.
//! - C^k X, k >= 3: V-chain with k-2 borrowed (dirty) qubits when the register
//!   has them, otherwise a two-way split around one borrowed qubit. When the
//!   register has no idle qubit at all, one scratch qubit is appended.
//! - Controlled P(θ): 2 CNOT + 3 P. Controlled Ry/Rz: 2 CNOT + 2 rotations.
//!   Controlled H/Y: 1 CNOT + 2 single-qubit gates.
//! - k >= 2 controls on a non-X gate reduce to C^k X plus single-qubit gates;
//!   C^k P peels off a C^{k-1} P(θ/2) on the last control.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use super::{Circuit, Control, Gate, GateKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionPolicy {
    /// Append one scratch qubit when a multi-controlled X has nothing to borrow.
    pub allow_scratch: bool,
}

impl Default for DecompositionPolicy {
    fn default() -> Self {
        DecompositionPolicy { allow_scratch: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub single_qubit: usize,
    pub cnot: usize,
    pub total: usize,
    pub depth: usize,
}

impl GateCounts {
    pub fn of_basis_circuit(circuit: &Circuit) -> GateCounts {
        let mut counts = GateCounts::default();
        let mut layer = vec![0usize; circuit.num_qubits()];
        for g in circuit.gates() {
            if g.controls.is_empty() {
                counts.single_qubit += 1;
            } else {
                counts.cnot += 1;
            }
            let t = g.qubits().map(|q| layer[q]).max().unwrap_or(0) + 1;
            for q in g.qubits() {
                layer[q] = t;
            }
        }
        counts.total = counts.single_qubit + counts.cnot;
        counts.depth = layer.into_iter().max().unwrap_or(0);
        counts
    }
}

/// Basis-gate counts of `decompose(circuit, policy)`.
pub fn transpile_count(circuit: &Circuit, policy: DecompositionPolicy) -> Result<GateCounts> {
    Ok(GateCounts::of_basis_circuit(&decompose(circuit, policy)?))
}

/// Lowers every gate to single-qubit gates and single-control CNOTs.
///
/// The result acts as `U ⊗ I` when a scratch qubit (index `n`) was appended:
/// the scratch is borrowed in an arbitrary state and returned unchanged.
pub fn decompose(circuit: &Circuit, policy: DecompositionPolicy) -> Result<Circuit> {
    circuit.validate()?;
    let n = circuit.num_qubits();
    let mut lower = Lowering { width: n, scratch: policy.allow_scratch.then_some(n), scratch_used: false, out: Vec::new() };
    for g in circuit.gates() {
        lower.gate(g)?;
    }
    let width = if lower.scratch_used { n + 1 } else { n };
    Circuit::from_gates(width, lower.out)
}

struct Lowering {
    width: usize,
    scratch: Option<usize>,
    scratch_used: bool,
    out: Vec<Gate>,
}

impl Lowering {
    fn one(&mut self, kind: GateKind, q: usize) {
        self.out.push(Gate::new(kind, q));
    }

    fn cx(&mut self, c: usize, t: usize) {
        self.out.push(Gate::controlled(GateKind::X, t, vec![Control::on(c)]));
    }

    fn gate(&mut self, g: &Gate) -> Result<()> {
        let negated: Vec<usize> = g.controls.iter().filter(|c| !c.polarity).map(|c| c.qubit).collect();
        for &q in &negated {
            self.one(GateKind::X, q);
        }
        let controls: Vec<usize> = g.controls.iter().map(|c| c.qubit).collect();
        self.controlled(g.kind, &controls, g.target)?;
        for &q in &negated {
            self.one(GateKind::X, q);
        }
        Ok(())
    }

    fn controlled(&mut self, kind: GateKind, controls: &[usize], t: usize) -> Result<()> {
        match (kind, controls.len()) {
            (k, 0) => self.one(k, t),
            (GateKind::X, _) => self.mcx(controls, t)?,
            (GateKind::H, _) => {
                self.one(GateKind::Ry(FRAC_PI_4), t);
                self.mcx(controls, t)?;
                self.one(GateKind::Ry(-FRAC_PI_4), t);
            }
            (GateKind::Y, _) => {
                self.one(GateKind::Phase(-FRAC_PI_2), t);
                self.mcx(controls, t)?;
                self.one(GateKind::Phase(FRAC_PI_2), t);
            }
            (GateKind::Ry(a), _) => {
                self.one(GateKind::Ry(a / 2.0), t);
                self.mcx(controls, t)?;
                self.one(GateKind::Ry(-a / 2.0), t);
                self.mcx(controls, t)?;
            }
            (GateKind::Rz(a), _) => {
                self.one(GateKind::Rz(a / 2.0), t);
                self.mcx(controls, t)?;
                self.one(GateKind::Rz(-a / 2.0), t);
                self.mcx(controls, t)?;
            }
            (GateKind::Phase(a), 1) => {
                let c = controls[0];
                self.one(GateKind::Phase(a / 2.0), c);
                self.cx(c, t);
                self.one(GateKind::Phase(-a / 2.0), t);
                self.cx(c, t);
                self.one(GateKind::Phase(a / 2.0), t);
            }
            (GateKind::Phase(a), k) => {
                // P(a) = e^{ia/2} Rz(a); the controlled global phase lands on the last control.
                self.controlled(GateKind::Rz(a), controls, t)?;
                self.controlled(GateKind::Phase(a / 2.0), &controls[..k - 1], controls[k - 1])?;
            }
        }
        Ok(())
    }

    fn idle_qubits(&self, busy: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.width).filter(|q| !busy.contains(q)).collect();
        if let Some(s) = self.scratch {
            v.push(s);
        }
        v
    }

    fn mark(&mut self, qubits: &[usize]) {
        if let Some(s) = self.scratch {
            if qubits.contains(&s) {
                self.scratch_used = true;
            }
        }
    }

    fn mcx(&mut self, controls: &[usize], t: usize) -> Result<()> {
        let k = controls.len();
        match k {
            0 => self.one(GateKind::X, t),
            1 => self.cx(controls[0], t),
            2 => self.toffoli(controls[0], controls[1], t),
            _ => {
                let mut busy = controls.to_vec();
                busy.push(t);
                let idle = self.idle_qubits(&busy);
                if idle.len() >= k - 2 {
                    let anc = &idle[..k - 2];
                    self.mark(anc);
                    self.vchain(controls, anc, t);
                } else if let Some(&a) = idle.first() {
                    self.mark(&[a]);
                    let m1 = k.div_ceil(2);
                    let (first, second) = controls.split_at(m1);
                    let mut second: Vec<usize> = second.to_vec();
                    second.push(a);
                    for _ in 0..2 {
                        self.mcx(first, a)?;
                        self.mcx(&second, t)?;
                    }
                } else {
                    return Err(Error::Unsupported(format!("{k}-controlled X with no qubit to borrow and scratch disabled")));
                }
            }
        }
        Ok(())
    }

    /// C^k X with k-2 dirty ancillas, 4(k-2) Toffolis.
    fn vchain(&mut self, c: &[usize], a: &[usize], t: usize) {
        let k = c.len();
        let ladder = |lw: &mut Lowering, descending: bool| {
            let js: Vec<usize> = if descending { (3..k).rev().collect() } else { (3..k).collect() };
            for j in js {
                lw.toffoli(c[j - 1], a[j - 3], a[j - 2]);
            }
        };
        for round in 0..2 {
            if round == 0 {
                self.toffoli(c[k - 1], a[k - 3], t);
            }
            ladder(self, true);
            self.toffoli(c[0], c[1], a[0]);
            ladder(self, false);
            if round == 0 {
                self.toffoli(c[k - 1], a[k - 3], t);
            }
        }
    }

    fn toffoli(&mut self, a: usize, b: usize, t: usize) {
        let tg = GateKind::Phase(FRAC_PI_4);
        let tdg = GateKind::Phase(-FRAC_PI_4);
        self.one(GateKind::H, t);
        self.cx(b, t);
        self.one(tdg, t);
        self.cx(a, t);
        self.one(tg, t);
        self.cx(b, t);
        self.one(tdg, t);
        self.cx(a, t);
        self.one(tg, b);
        self.one(tg, t);
        self.one(GateKind::H, t);
        self.cx(a, b);
        self.one(tg, a);
        self.one(tdg, b);
        self.cx(a, b);
    }
}
