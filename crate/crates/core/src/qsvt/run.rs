use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::circuit::{build_qsvt_circuit, combine_halves};
use super::phases::qsp_phases;
use super::poly::{approx_poly, ChebyshevPoly, PolyTarget};
use crate::circuit::StateVector;
use crate::encoding::BlockEncoding;
use crate::error::{Error, Result};
use crate::lcu::{build_banded, build_lcu};
use crate::pde::{adr_shifted_lcu, build_adr_matrix, build_elliptic_matrix, classical_expm_apply, classical_solve, elliptic_lcu, gaussian_initial, relative_error, AdrProfile, AdrSpec, EllipticSpec};
use crate::verify::apply_block;

/// How the inversion window `[1/κ, 1]` is chosen from the user parameter `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionWindow {
    /// `κ = max(k, α/λ_min)`: the window always covers the spectrum of `A/α`.
    #[default]
    Covering,
    /// `κ = k` exactly; eigenvalues below `1/k` are inverted inaccurately.
    Literal,
}

/// One QSVT experiment compared against its classical reference.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QsvtRun {
    pub problem: String,
    /// `k` for inversion, `t/τ_d` for evolution.
    pub parameter: f64,
    pub degree: usize,
    pub epsilon: f64,
    pub alpha: f64,
    /// `κ` used for the inverse polynomial.
    pub kappa: Option<f64>,
    /// `τ = α t` used for the exponential.
    pub tau: Option<f64>,
    pub phase_residual: f64,
    pub success_probability: f64,
    pub relative_error: f64,
    pub qubits: usize,
    /// Post-selected output, real part, not renormalized.
    pub output: Vec<f64>,
    pub reference: Vec<f64>,
    /// `‖e^{Mt} g‖` recovered from the post-selected norm (evolution only).
    pub evolved_norm: Option<f64>,
}

struct Transform {
    be: BlockEncoding,
    residual: f64,
    /// Flag block equals `P(A/α) / scale`.
    scale: f64,
}

/// Encodes `poly(A/α)`, splitting into even and odd halves when needed.
fn polynomial_encoding(be: &BlockEncoding, poly: &ChebyshevPoly) -> Result<Transform> {
    let parts: Vec<ChebyshevPoly> = [poly.even_part(), poly.odd_part()].into_iter().filter(|p| !p.is_zero()).collect();
    let parts = if parts.is_empty() { vec![poly.clone()] } else { parts };
    let mut encoded = Vec::with_capacity(parts.len());
    let mut residual: f64 = 0.0;
    for p in &parts {
        let s = qsp_phases(p)?;
        residual = residual.max(s.residual);
        encoded.push(build_qsvt_circuit(be, &s.phases)?);
    }
    match encoded.as_slice() {
        [single] => Ok(Transform { be: single.clone(), residual, scale: 1.0 }),
        [even, odd] => Ok(Transform { be: combine_halves(even, odd)?, residual, scale: 2.0 }),
        _ => unreachable!("at most two parity halves"),
    }
}

fn real_parts(v: &[Complex64]) -> Vec<f64> {
    v.iter().map(|z| z.re).collect()
}

/// Solves the elliptic system with an inverse polynomial applied to the
/// uniform right-hand side and compares with Gaussian elimination.
pub fn run_elliptic(spec: &EllipticSpec, k: f64, epsilon: f64, window: InversionWindow) -> Result<QsvtRun> {
    let a = build_elliptic_matrix(spec)?;
    let be = build_banded(spec.n, &elliptic_lcu(spec)?)?;
    let lambda_min = SymmetricEigen::new(a.clone()).eigenvalues.min();
    if !(lambda_min > 0.0) {
        return Err(Error::InvalidParameter(format!("elliptic matrix is not positive definite (λ_min = {lambda_min})")));
    }
    if !(k.is_finite() && k >= 1.0) {
        return Err(Error::InvalidParameter(format!("k must be >= 1, got {k}")));
    }
    let kappa = match window {
        InversionWindow::Covering => k.max(be.alpha / lambda_min),
        InversionWindow::Literal => k,
    };
    let poly = approx_poly(PolyTarget::Inverse { kappa }, epsilon)?;
    let t = polynomial_encoding(&be, &poly)?;
    let rhs = StateVector::uniform(spec.n)?;
    let action = apply_block(&t.be, &rhs)?;
    let reference = classical_solve(&a, &vec![1.0; spec.grid_size()])?;
    let reference_c: Vec<Complex64> = reference.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    Ok(QsvtRun {
        problem: format!("elliptic-d{}-w{}", spec.d, spec.omega_x),
        parameter: k,
        degree: poly.degree(),
        epsilon,
        alpha: be.alpha,
        kappa: Some(kappa),
        tau: None,
        phase_residual: t.residual,
        success_probability: action.success_probability,
        relative_error: relative_error(&action.output, &reference_c)?,
        qubits: t.be.num_qubits(),
        output: real_parts(&action.output),
        reference,
        evolved_norm: None,
    })
}

/// Gaussian initial profile: center `N/2 - 1/2`, width `N/8`.
pub fn adr_initial_state(spec: &AdrSpec) -> Result<StateVector> {
    let size = spec.grid_size();
    gaussian_initial(size, size as f64 / 2.0 - 0.5, size as f64 / 8.0)
}

/// Evolves the Gaussian profile by `e^{Mt}` for each `t/τ_d` in `times`.
///
/// The constant part `μ` of the diagonal is factored out,
/// `e^{Mt} = e^{μt} e^{(M-μ)t}`, and `½ e^{τ(x-1)}` with `τ = α' t` is applied
/// to the encoding of `(M-μ)/α'`.
pub fn run_adr(spec: &AdrSpec, times: &[f64], epsilon: f64) -> Result<Vec<QsvtRun>> {
    spec.validate()?;
    if spec.c != 0.0 {
        return Err(Error::Unsupported("QSVT evolution needs a symmetric generator (c = 0)".into()));
    }
    let AdrProfile::Reaction { .. } = spec.profile else {
        return Err(Error::Unsupported("QSVT evolution is implemented for the reaction profile".into()));
    };
    let (m, _) = build_adr_matrix(spec)?;
    let (mu, lcu) = adr_shifted_lcu(spec)?;
    let be = build_lcu(&lcu)?;
    let g = adr_initial_state(spec)?;
    let g_real: Vec<f64> = g.amplitudes().iter().map(|z| z.re).collect();
    let mut runs = Vec::with_capacity(times.len());
    for &units in times {
        if !(units.is_finite() && units >= 0.0) {
            return Err(Error::InvalidParameter(format!("time must be finite and nonnegative, got {units}")));
        }
        let t = units * spec.tau_d();
        let tau = be.alpha * t;
        let poly = approx_poly(PolyTarget::Exp { tau }, epsilon)?;
        let tr = polynomial_encoding(&be, &poly)?;
        let action = apply_block(&tr.be, &g)?;
        let reference = classical_expm_apply(&m, t, &g_real)?;
        let reference_c: Vec<Complex64> = reference.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let out_norm = action.success_probability.sqrt();
        runs.push(QsvtRun {
            problem: "adr-reaction".into(),
            parameter: units,
            degree: poly.degree(),
            epsilon,
            alpha: be.alpha,
            kappa: None,
            tau: Some(tau),
            phase_residual: tr.residual,
            success_probability: action.success_probability,
            relative_error: relative_error(&action.output, &reference_c)?,
            qubits: tr.be.num_qubits(),
            output: real_parts(&action.output),
            reference,
            evolved_norm: Some(out_norm * tr.scale * 2.0 * (tau + mu * t).exp()),
        });
    }
    Ok(runs)
}
