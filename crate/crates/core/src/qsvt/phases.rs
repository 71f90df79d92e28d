//! Symmetric QSP in the `W_x` convention.
//!
//! `U_Φ(x) = e^{iφ₀Z} Π_{k=1..d} W(x) e^{iφ_k Z}` with
//! `W(x) = [[x, i√(1-x²)], [i√(1-x²), x]]`; the realized polynomial is
//! `Re <0|U_Φ(x)|0>`. Zero phases give `T_d`.
//!
//! Phases are kept symmetric and parameterized by a reduced vector `Ψ` of
//! length `⌈(d+1)/2⌉`, with `π/4` added at both ends; Newton's method on the
//! positive Chebyshev nodes then starts from `Ψ = 0`, where the realized
//! polynomial is identically zero and the Jacobian is well conditioned.

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{ChebyshevPoly, Parity};
use crate::error::{Error, Result};

/// Grid size of the post-solve residual gate.
pub const RESIDUAL_GRID: usize = 501;
/// Largest accepted residual on that grid.
pub const RESIDUAL_GATE: f64 = 1e-8;
const MAX_ITERATIONS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseFactors {
    pub degree: usize,
    pub parity: Parity,
    /// `φ₀..φ_d` in radians, `W_x` convention.
    pub angles: Vec<f64>,
}

impl PhaseFactors {
    pub fn validate(&self) -> Result<()> {
        if self.angles.len() != self.degree + 1 {
            return Err(Error::DimensionMismatch { expected: self.degree + 1, found: self.angles.len() });
        }
        let expected = if self.degree.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        if self.parity != expected {
            return Err(Error::InvalidParameter(format!("degree {} cannot have {:?} parity", self.degree, self.parity)));
        }
        if self.angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("non-finite phase".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: PhaseFactors = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("phase factors always serialize")
    }

    pub fn eval(&self, x: f64) -> f64 {
        qsp_eval_scalar(&self.angles, x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSolution {
    pub phases: PhaseFactors,
    /// Max `|qsp_eval_scalar - P|` on the residual grid.
    pub residual: f64,
    pub iterations: usize,
}

type M2 = [[Complex64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn rot(phi: f64) -> M2 {
    let z = Complex64::new(0.0, 0.0);
    [[Complex64::from_polar(1.0, phi), z], [z, Complex64::from_polar(1.0, -phi)]]
}

fn signal(x: f64) -> M2 {
    let s = Complex64::new(0.0, (1.0 - x * x).max(0.0).sqrt());
    let c = Complex64::new(x, 0.0);
    [[c, s], [s, c]]
}

fn identity() -> M2 {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    [[o, z], [z, o]]
}

/// `Re <0|U_Φ(x)|0>`; `x` is clamped to `[-1, 1]`.
pub fn qsp_eval_scalar(phases: &[f64], x: f64) -> f64 {
    let Some((first, rest)) = phases.split_first() else {
        return 1.0;
    };
    let w = signal(x.clamp(-1.0, 1.0));
    let mut u = rot(*first);
    for &phi in rest {
        u = mul(&mul(&u, &w), &rot(phi));
    }
    u[0][0].re
}

/// Reduced index of full phase `j`.
fn reduced_index(j: usize, d: usize) -> usize {
    if d % 2 == 1 {
        let lo = (d - 1) / 2;
        if j <= lo {
            lo - j
        } else {
            j - lo - 1
        }
    } else {
        j.abs_diff(d / 2)
    }
}

fn reduced_len(d: usize) -> usize {
    (d + 2) / 2
}

fn full_phases(psi: &[f64], d: usize) -> Vec<f64> {
    let mut full: Vec<f64> = (0..=d).map(|j| psi[reduced_index(j, d)]).collect();
    full[0] += FRAC_PI_4;
    full[d] += FRAC_PI_4;
    full
}

/// Values and reduced-parameter gradients of `g(x) = Re U00` at one node.
fn value_and_gradient(full: &[f64], d: usize, x: f64, grad: &mut [f64]) -> f64 {
    let w = signal(x);
    let mut prefix = Vec::with_capacity(d + 1);
    let mut acc = rot(full[0]);
    prefix.push(acc);
    for &phi in &full[1..] {
        acc = mul(&mul(&acc, &w), &rot(phi));
        prefix.push(acc);
    }
    grad.iter_mut().for_each(|g| *g = 0.0);
    let mut suffix = identity();
    for j in (0..=d).rev() {
        let p = &prefix[j];
        // Re[i (p00 s00 - p01 s10)]
        let z = p[0][0] * suffix[0][0] - p[0][1] * suffix[1][0];
        grad[reduced_index(j, d)] += -z.im;
        suffix = mul(&mul(&w, &rot(full[j])), &suffix);
    }
    prefix[d][0][0].re
}

/// Max `|qsp_eval_scalar - P|` over a Chebyshev grid of `points` nodes.
pub fn phase_residual(angles: &[f64], poly: &ChebyshevPoly, points: usize) -> f64 {
    let last = (points.max(2) - 1) as f64;
    (0..points.max(2))
        .map(|j| {
            let x = (PI * j as f64 / last).cos();
            (qsp_eval_scalar(angles, x) - poly.eval(x)).abs()
        })
        .fold(0.0, f64::max)
}

/// Solves for symmetric phases realizing `poly` and enforces the residual gate.
pub fn qsp_phases(poly: &ChebyshevPoly) -> Result<PhaseSolution> {
    let d = poly.degree();
    let parity = match poly.parity() {
        Parity::None => return Err(Error::MixedParity),
        p => p,
    };
    if let Some(sign) = exact_chebyshev(poly) {
        let mut angles = vec![0.0; d + 1];
        if sign < 0.0 {
            angles[0] = PI;
        }
        let residual = phase_residual(&angles, poly, RESIDUAL_GRID);
        return Ok(PhaseSolution { phases: PhaseFactors { degree: d, parity, angles }, residual, iterations: 0 });
    }
    let sup = poly.sup_norm(2001.max(4 * d));
    if sup > 1.0 - 1e-6 {
        return Err(Error::InvalidParameter(format!("polynomial sup-norm {sup} too close to 1 for QSP")));
    }
    let dt = reduced_len(d);
    let nodes: Vec<f64> = (1..=dt).map(|k| ((2 * k - 1) as f64 * PI / (4 * dt) as f64).cos()).collect();
    let target: Vec<f64> = nodes.iter().map(|&x| poly.eval(x)).collect();
    let mut psi = vec![0.0; dt];
    let mut jac = DMatrix::<f64>::zeros(dt, dt);
    let mut grad = vec![0.0; dt];

    let residual_at = |psi: &[f64], jac: Option<&mut DMatrix<f64>>, grad: &mut [f64]| -> DVector<f64> {
        let full = full_phases(psi, d);
        let mut f = DVector::zeros(dt);
        let mut jac = jac;
        for (k, &x) in nodes.iter().enumerate() {
            let g = value_and_gradient(&full, d, x, grad);
            f[k] = g - target[k];
            if let Some(j) = jac.as_deref_mut() {
                for (i, v) in grad.iter().enumerate() {
                    j[(k, i)] = *v;
                }
            }
        }
        f
    };

    let mut f = residual_at(&psi, Some(&mut jac), &mut grad);
    let mut iterations = 0;
    while f.amax() > 1e-14 && iterations < MAX_ITERATIONS {
        iterations += 1;
        let Some(step) = jac.clone().lu().solve(&f) else {
            return Err(Error::NonConvergence { iterations, residual: f.amax() });
        };
        let mut t = 1.0;
        let current = f.norm();
        let accepted = loop {
            let trial: Vec<f64> = psi.iter().zip(step.iter()).map(|(p, s)| p - t * s).collect();
            let ft = residual_at(&trial, None, &mut grad);
            if ft.norm() < current || t < 1e-4 {
                break trial;
            }
            t /= 2.0;
        };
        let previous = f.amax();
        psi = accepted;
        f = residual_at(&psi, Some(&mut jac), &mut grad);
        if f.amax() >= previous && f.amax() < 1e-12 {
            break;
        }
    }
    let angles = full_phases(&psi, d);
    let residual = phase_residual(&angles, poly, RESIDUAL_GRID);
    if !(residual <= RESIDUAL_GATE) {
        return Err(Error::NonConvergence { iterations, residual });
    }
    Ok(PhaseSolution { phases: PhaseFactors { degree: d, parity, angles }, residual, iterations })
}

fn exact_chebyshev(poly: &ChebyshevPoly) -> Option<f64> {
    let c = poly.coeffs();
    let d = poly.degree();
    let lead = c[d];
    (lead.abs() == 1.0 && c[..d].iter().all(|v| *v == 0.0)).then_some(lead)
}
