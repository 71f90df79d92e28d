//! Diagonal sinusoidal encodings.
//!
//! `V(ω) = diag(e^{iωk})` is a product of one phase gate per qubit. One
//! ancilla turns it into an exact block encoding of `C(ω,φ) = diag(cos(kω+φ))`,
//! with `i S(ω,φ)` sitting in the `<1|·|0>` ancilla block.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Control, Gate, GateKind};
use crate::encoding::{AncillaRegister, BlockEncoding};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SinusoidSpec {
    pub omega: f64,
    #[serde(default)]
    pub phi: f64,
}

impl SinusoidSpec {
    pub fn new(omega: f64, phi: f64) -> Self {
        SinusoidSpec { omega, phi }
    }

    fn check(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.phi.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite sinusoid {self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UcVariant {
    /// `H`, 0-controlled `V(2ω)`, `V(-ω)`, `H`.
    #[default]
    Select,
    /// `H`, fan-out CNOTs around `V(ω)`, ancilla phase fix-up, `H`.
    CnotConjugation,
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one work qubit".into()));
    }
    Ok(())
}

/// `P(2^q ω)` on each qubit `q`; the unitary is `diag(e^{iωk})`.
pub fn build_v(n: usize, omega: f64) -> Result<Circuit> {
    check_width(n)?;
    if !omega.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite frequency {omega}")));
    }
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.p(q, omega * (1u64 << q) as f64);
    }
    Ok(c)
}

/// Folds an angle into `[-π, π]`.
pub fn fold_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// `V(ω)` with the smallest folded phases removed while their total
/// magnitude stays within `epsilon`, which bounds `‖V_trunc - V‖`.
///
/// Any `epsilon >= 2` admits the empty circuit since two diagonal unitaries
/// never differ by more than 2.
pub fn truncate_v(n: usize, omega: f64, epsilon: f64) -> Result<Circuit> {
    let full = build_v(n, omega)?;
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation error bound must be positive, got {epsilon}")));
    }
    if epsilon >= 2.0 {
        return Ok(Circuit::new(n));
    }
    let folded: Vec<f64> = full.gates().iter().map(|g| fold_angle(g.kind.angle().unwrap_or(0.0))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| folded[a].abs().total_cmp(&folded[b].abs()));
    let mut dropped = vec![false; n];
    let mut budget = 0.0;
    for q in order {
        if budget + folded[q].abs() > epsilon {
            break;
        }
        budget += folded[q].abs();
        dropped[q] = true;
    }
    let mut c = Circuit::new(n);
    for q in (0..n).filter(|&q| !dropped[q]) {
        c.p(q, folded[q]);
    }
    Ok(c)
}

/// Exact block encoding of `C(ω,φ)` with one ancilla (qubit `n`), `α = 1`.
pub fn build_uc(n: usize, spec: SinusoidSpec, variant: UcVariant) -> Result<BlockEncoding> {
    check_width(n)?;
    spec.check()?;
    let anc = n;
    let mut c = Circuit::new(n + 1);
    c.h(anc);
    match variant {
        UcVariant::Select => {
            c.append(&build_v(n, 2.0 * spec.omega)?.controlled(&[Control::off(anc)])?)?;
            if spec.phi != 0.0 {
                c.rz(anc, -2.0 * spec.phi);
            }
            c.append(&build_v(n, -spec.omega)?)?;
        }
        UcVariant::CnotConjugation => {
            for q in 0..n {
                c.cx(anc, q);
            }
            c.append(&build_v(n, spec.omega)?)?;
            for q in 0..n {
                c.cx(anc, q);
            }
            // the conjugated branch picks up V(-ω) times e^{i(N-1)ω}
            let top = ((1u64 << n) - 1) as f64;
            c.p(anc, -top * spec.omega);
            if spec.phi != 0.0 {
                c.rz(anc, -2.0 * spec.phi);
            }
        }
    }
    c.h(anc);
    BlockEncoding::new(c, n, 1.0, vec![AncillaRegister { name: "sinusoid".into(), start: n, len: 1 }])
}

/// Block encoding of `S(ω,φ)`: the cosine encoding followed by `Y` on its ancilla.
pub fn build_us(n: usize, spec: SinusoidSpec) -> Result<BlockEncoding> {
    build_us_with(n, spec, UcVariant::Select)
}

pub fn build_us_with(n: usize, spec: SinusoidSpec, variant: UcVariant) -> Result<BlockEncoding> {
    let mut be = build_uc(n, spec, variant)?;
    be.circuit.y(n);
    Ok(be)
}

/// `p0 = Σ |c_k|² cos²(kω)`: chance that the cosine encoding's ancilla reads 0.
pub fn p0_closed_form(coeffs: &[Complex64], omega: f64) -> Result<f64> {
    let norm2: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (norm2.sqrt() - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm: norm2.sqrt() });
    }
    Ok(coeffs.iter().enumerate().map(|(k, c)| c.norm_sqr() * (k as f64 * omega).cos().powi(2)).sum())
}

/// Uniformly controlled `Ry`: applies `Ry(angles[v])` to `target` when the
/// controls read `v` (bit `i` of `v` is `controls[i]`).
///
/// Gray-code construction with `2^m` rotations and `2^m` CNOTs (none for m = 0).
pub fn uniformly_controlled_ry(num_qubits: usize, controls: &[usize], target: usize, angles: &[f64]) -> Result<Circuit> {
    let m = controls.len();
    if angles.len() != 1 << m {
        return Err(Error::DimensionMismatch { expected: 1 << m, found: angles.len() });
    }
    let mut c = Circuit::new(num_qubits);
    if m == 0 {
        c.try_push(Gate::new(GateKind::Ry(angles[0]), target))?;
        return Ok(c);
    }
    let size = 1usize << m;
    let gray = |i: usize| i ^ (i >> 1);
    for i in 0..size {
        let g = gray(i);
        let theta: f64 = angles.iter().enumerate().map(|(k, a)| if (g & k).count_ones() % 2 == 0 { *a } else { -*a }).sum::<f64>() / size as f64;
        c.try_push(Gate::new(GateKind::Ry(theta), target))?;
        let flip = (g ^ gray((i + 1) % size)).trailing_zeros() as usize;
        c.try_push(Gate::controlled(GateKind::X, target, vec![Control::on(controls[flip])]))?;
    }
    Ok(c)
}

/// Dense comparison encoder for `diag(values)`: `Ry(2 arccos v_k)` on one
/// ancilla, uniformly controlled by the work register. Costs `Θ(2^n)` gates.
pub fn build_dense_baseline(values: &[f64]) -> Result<BlockEncoding> {
    let dim = values.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("need 2^n >= 2 diagonal values, got {dim}")));
    }
    if let Some(v) = values.iter().find(|v| !(v.abs() <= 1.0)) {
        return Err(Error::InvalidParameter(format!("diagonal value {v} outside [-1, 1]")));
    }
    let n = dim.trailing_zeros() as usize;
    let angles: Vec<f64> = values.iter().map(|v| 2.0 * v.acos()).collect();
    let controls: Vec<usize> = (0..n).collect();
    let c = uniformly_controlled_ry(n + 1, &controls, n, &angles)?;
    BlockEncoding::new(c, n, 1.0, vec![AncillaRegister { name: "rotation".into(), start: n, len: 1 }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{transpile_count, unitary_of, DecompositionPolicy};

    fn cplx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn v_diagonal_small_case() {
        let u = unitary_of(&build_v(2, PI / 2.0).unwrap()).unwrap();
        let want = [cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0), cplx(0.0, -1.0)];
        for (k, w) in want.iter().enumerate() {
            assert!((u.matrix()[(k, k)] - w).norm() < 1e-15);
        }
        assert!(build_v(0, 1.0).is_err());
    }

    #[test]
    fn v_entry_five() {
        let u = unitary_of(&build_v(3, 0.7).unwrap()).unwrap();
        assert!((u.matrix()[(5, 5)] - Complex64::from_polar(1.0, 3.5)).norm() < 1e-14);
    }

    #[test]
    fn adjoint_of_v_negates() {
        let a = build_v(4, 0.3).unwrap().adjoint();
        let w = build_v(4, -0.3).unwrap();
        // same phase gates, reversed order (they commute)
        let reversed: Vec<_> = w.gates().iter().rev().cloned().collect();
        assert!(a.approx_eq(&Circuit::from_gates(4, reversed).unwrap(), 1e-15));
    }

    #[test]
    fn fold_keeps_range() {
        for t in [-10.0, -PI, 0.0, 3.0, 7.0, 1e6] {
            let f = fold_angle(t);
            assert!((-PI..=PI).contains(&f));
            assert!(((t - f) / TAU - ((t - f) / TAU).round()).abs() < 1e-9);
        }
    }

    #[test]
    fn gate_count_is_linear() {
        let counts = transpile_count(&build_v(5, 0.4).unwrap(), DecompositionPolicy::default()).unwrap();
        assert_eq!((counts.single_qubit, counts.cnot), (5, 0));
    }

    #[test]
    fn uc_small_block() {
        let be = build_uc(2, SinusoidSpec::new(PI / 2.0, 0.0), UcVariant::Select).unwrap();
        let u = unitary_of(&be.circuit).unwrap();
        let want = [1.0, 0.0, -1.0, 0.0];
        for k in 0..4 {
            assert!((u.matrix()[(k, k)] - cplx(want[k], 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn cnot_variant_count_law() {
        for n in 1..=6 {
            let be = build_uc(n, SinusoidSpec::new(2.0, 0.0), UcVariant::CnotConjugation).unwrap();
            let c = transpile_count(&be.circuit, DecompositionPolicy::default()).unwrap();
            assert_eq!(c.cnot, 2 * n);
            assert_eq!(c.single_qubit, n + 3);
            assert_eq!(c.total, 3 * n + 3);
        }
    }

    #[test]
    fn p0_rejects_unnormalized() {
        assert!(p0_closed_form(&[cplx(1.0, 0.0), cplx(1.0, 0.0)], 0.1).is_err());
        let p = p0_closed_form(&[cplx(0.0, 0.0), cplx(1.0, 0.0)], 0.3).unwrap();
        assert!((p - 0.3f64.cos().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn ucry_matches_definition() {
        let angles = [0.3, -1.1, 2.0, 0.7, 0.0, 1.5, -0.2, 3.0];
        let c = uniformly_controlled_ry(4, &[0, 2, 3], 1, &angles).unwrap();
        let u = unitary_of(&c).unwrap();
        for v in 0..8usize {
            let base = (v & 1) | ((v >> 1) << 2);
            let (s, co) = (angles[v] / 2.0).sin_cos();
            assert!((u.matrix()[(base, base)].re - co).abs() < 1e-13);
            assert!((u.matrix()[(base | 2, base)].re - s).abs() < 1e-13);
        }
    }

    #[test]
    fn baseline_rejects_out_of_range() {
        assert!(build_dense_baseline(&[1.0, 1.5]).is_err());
        assert!(build_dense_baseline(&[1.0, 0.5, 0.2]).is_err());
    }
}
