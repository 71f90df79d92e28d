//! Gate-level circuit IR.
//!
//! Qubit indices are little-endian: qubit `q` carries bit `q` of the basis
//! index, so `|k>` with `k = sum k_q 2^q`. Every gate is a single-target
//! base gate with an arbitrary list of polarity controls; a controlled
//! sub-circuit is stored by pushing the controls onto each of its gates.

mod json;
mod sim;
mod transpile;

pub use sim::{apply_circuit, apply_circuit_in_place, max_statevector_qubits, max_unitary_qubits, unitary_of, unitary_of_with_cap, StateVector, UnitaryMatrix};
pub use transpile::{decompose, transpile_count, DecompositionPolicy, GateCounts};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Single-qubit base operation.
///
/// `Phase(θ) = diag(1, e^{iθ})`, `Ry(θ) = exp(-iθY/2)`, `Rz(θ) = exp(-iθZ/2)`.
/// Angles are kept exactly as given; nothing is reduced modulo 2π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Phase(f64),
    Ry(f64),
    Rz(f64),
}

impl GateKind {
    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Phase(a) | GateKind::Ry(a) | GateKind::Rz(a) => Some(a),
            _ => None,
        }
    }

    pub fn adjoint(&self) -> GateKind {
        match *self {
            GateKind::Phase(a) => GateKind::Phase(-a),
            GateKind::Ry(a) => GateKind::Ry(-a),
            GateKind::Rz(a) => GateKind::Rz(-a),
            k => k,
        }
    }

    /// Row-major 2x2 matrix `[m00, m01, m10, m11]`.
    pub fn matrix(&self) -> [Complex64; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match *self {
            GateKind::H => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [s, s, s, -s]
            }
            GateKind::X => [zero, one, one, zero],
            GateKind::Y => [zero, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), zero],
            GateKind::Phase(a) => [one, zero, zero, Complex64::from_polar(1.0, a)],
            GateKind::Ry(a) => {
                let (s, c) = (a / 2.0).sin_cos();
                [Complex64::new(c, 0.0), Complex64::new(-s, 0.0), Complex64::new(s, 0.0), Complex64::new(c, 0.0)]
            }
            GateKind::Rz(a) => [Complex64::from_polar(1.0, -a / 2.0), zero, zero, Complex64::from_polar(1.0, a / 2.0)],
        }
    }

    pub(crate) fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Phase(_) => "p",
            GateKind::Ry(_) => "ry",
            GateKind::Rz(_) => "rz",
        }
    }
}

/// A control line: the gate fires when `qubit` reads `polarity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, polarity: true }
    }

    pub fn off(qubit: usize) -> Self {
        Control { qubit, polarity: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Gate { kind, target, controls: Vec::new() }
    }

    pub fn controlled(kind: GateKind, target: usize, controls: Vec<Control>) -> Self {
        Gate { kind, target, controls }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().map(|c| c.qubit))
    }

    pub fn adjoint(&self) -> Gate {
        Gate { kind: self.kind.adjoint(), target: self.target, controls: self.controls.clone() }
    }

    /// Checks index range and distinctness against a register of `num_qubits`.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let mut seen = Vec::with_capacity(self.controls.len() + 1);
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
            }
            if seen.contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
            seen.push(q);
        }
        if let Some(a) = self.kind.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidParameter(format!("non-finite angle {a}")));
            }
        }
        Ok(())
    }

    /// Structural equality with angles compared to within `tol`.
    pub fn approx_eq(&self, other: &Gate, tol: f64) -> bool {
        let kinds_match = match (self.kind.angle(), other.kind.angle()) {
            (Some(a), Some(b)) => std::mem::discriminant(&self.kind) == std::mem::discriminant(&other.kind) && (a - b).abs() <= tol,
            (None, None) => self.kind == other.kind,
            _ => false,
        };
        kinds_match && self.target == other.target && self.controls == other.controls
    }
}

/// Ordered gate list over `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new() }
    }

    /// Builds a circuit from untrusted parts, validating every gate.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(num_qubits)?;
        }
        Ok(Circuit { num_qubits, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends a gate whose indices the caller guarantees.
    ///
    /// Panics if the gate does not fit the register; builders inside this
    /// crate only construct in-range gates.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        if let Err(e) = gate.validate(self.num_qubits) {
            panic!("invalid gate {gate:?}: {e}");
        }
        self.gates.push(gate);
        self
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.push(Gate::new(GateKind::H, q))
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.push(Gate::new(GateKind::X, q))
    }

    pub fn y(&mut self, q: usize) -> &mut Self {
        self.push(Gate::new(GateKind::Y, q))
    }

    pub fn p(&mut self, q: usize, angle: f64) -> &mut Self {
        self.push(Gate::new(GateKind::Phase(angle), q))
    }

    pub fn ry(&mut self, q: usize, angle: f64) -> &mut Self {
        self.push(Gate::new(GateKind::Ry(angle), q))
    }

    pub fn rz(&mut self, q: usize, angle: f64) -> &mut Self {
        self.push(Gate::new(GateKind::Rz(angle), q))
    }

    pub fn cx(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(Gate::controlled(GateKind::X, target, vec![Control::on(control)]))
    }

    pub fn mcx(&mut self, controls: Vec<Control>, target: usize) -> &mut Self {
        self.push(Gate::controlled(GateKind::X, target, controls))
    }

    /// Appends `other` (same width) after the gates of `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: other.num_qubits });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    /// Sequential composition: `self` first, then `next`.
    pub fn then(&self, next: &Circuit) -> Result<Circuit> {
        let mut out = Circuit::new(self.num_qubits.max(next.num_qubits));
        out.gates.extend(self.gates.iter().cloned());
        out.gates.extend(next.gates.iter().cloned());
        Ok(out)
    }

    /// Gate order reversed and every gate conjugated.
    pub fn adjoint(&self) -> Circuit {
        Circuit { num_qubits: self.num_qubits, gates: self.gates.iter().rev().map(Gate::adjoint).collect() }
    }

    /// Adds `controls` to every gate; the register is widened if needed.
    pub fn controlled(&self, controls: &[Control]) -> Result<Circuit> {
        let used = self.used_qubits();
        let mut width = self.num_qubits;
        for (i, c) in controls.iter().enumerate() {
            if used.contains(&c.qubit) {
                return Err(Error::OverlappingControls(c.qubit));
            }
            if controls[..i].iter().any(|o| o.qubit == c.qubit) {
                return Err(Error::DuplicateQubit(c.qubit));
            }
            width = width.max(c.qubit + 1);
        }
        let gates = self
            .gates
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.controls.extend_from_slice(controls);
                g
            })
            .collect();
        Ok(Circuit { num_qubits: width, gates })
    }

    /// Relabels qubit `q` to `map[q]` inside a register of `num_qubits`.
    pub fn map_qubits(&self, map: &[usize], num_qubits: usize) -> Result<Circuit> {
        if map.len() < self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: map.len() });
        }
        let mut out = Circuit::new(num_qubits);
        for g in &self.gates {
            let mapped = Gate {
                kind: g.kind,
                target: map[g.target],
                controls: g.controls.iter().map(|c| Control { qubit: map[c.qubit], polarity: c.polarity }).collect(),
            };
            out.try_push(mapped)?;
        }
        Ok(out)
    }

    /// Same gates on a register widened to `num_qubits`.
    pub fn widened(&self, num_qubits: usize) -> Circuit {
        Circuit { num_qubits: num_qubits.max(self.num_qubits), gates: self.gates.clone() }
    }

    /// Sorted list of qubits touched by any gate.
    pub fn used_qubits(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.gates.iter().flat_map(|g| g.qubits().collect::<Vec<_>>()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn approx_eq(&self, other: &Circuit, tol: f64) -> bool {
        self.num_qubits == other.num_qubits
            && self.gates.len() == other.gates.len()
            && self.gates.iter().zip(&other.gates).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.num_qubits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn controls_must_not_overlap() {
        let mut c = Circuit::new(2);
        c.h(0).cx(0, 1);
        assert!(matches!(c.controlled(&[Control::on(1)]), Err(Error::OverlappingControls(1))));
        let lifted = c.controlled(&[Control::off(3)]).unwrap();
        assert_eq!(lifted.num_qubits(), 4);
        assert!(lifted.gates().iter().all(|g| g.controls.last() == Some(&Control::off(3))));
    }

    #[test]
    fn duplicate_indices_rejected() {
        let g = Gate::controlled(GateKind::X, 1, vec![Control::on(1)]);
        assert!(matches!(g.validate(3), Err(Error::DuplicateQubit(1))));
        let g = Gate::new(GateKind::H, 3);
        assert!(matches!(g.validate(3), Err(Error::QubitOutOfRange { qubit: 3, .. })));
        let g = Gate::new(GateKind::Phase(f64::NAN), 0);
        assert!(g.validate(1).is_err());
    }

    #[test]
    fn adjoint_negates_angles_and_reverses() {
        let mut c = Circuit::new(2);
        c.h(0).p(1, 0.3).ry(0, -1.2).cx(0, 1);
        let a = c.adjoint();
        assert_eq!(a.gates()[0].kind, GateKind::X);
        assert_eq!(a.gates()[1].kind, GateKind::Ry(1.2));
        assert_eq!(a.gates()[2].kind, GateKind::Phase(-0.3));
        assert!(a.adjoint().approx_eq(&c, 1e-15));
    }
}
