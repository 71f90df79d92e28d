//! Periodic finite-difference model problems and classical reference solvers.
//!
//! - Elliptic: `-D u'' + a(x) u = f` on `(0,1)`, `a(x) = a0 + cos(ω x)`,
//!   nodes `x_j = (j-1) h`, `h = 1/N`.
//! - ADR: `ψ_t = D ψ_xx - (c ψ)_x - a ψ` on `(0,L)`, nodes `x_i = i Δx`,
//!   `Δx = L/N`, `i = 0..N-1`.

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::lcu::{AncillaMode, BandedSpec, FourierSpec, Harmonic, LcuSpec, LcuTerm, TermOp};
use crate::linalg::{cos_diag, shift_left, shift_right, sin_diag, RMatrix};

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > 10 {
        return Err(Error::InvalidParameter(format!("grid needs 1..=10 qubits, got {n}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticSpec {
    /// Diffusion coefficient `D`.
    pub d: f64,
    /// Reaction offset; must exceed 1 so that `a(x) > 0`.
    pub a0: f64,
    /// Spatial reaction frequency in radians per unit length.
    pub omega_x: f64,
    /// Grid qubits; `N = 2^n`.
    pub n: usize,
}

impl EllipticSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: EllipticSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_qubits(self.n)?;
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(Error::InvalidParameter(format!("diffusion must be positive, got {}", self.d)));
        }
        if !(self.a0.is_finite() && self.a0 > 1.0) {
            return Err(Error::InvalidParameter(format!("reaction offset must exceed 1, got {}", self.a0)));
        }
        if !self.omega_x.is_finite() {
            return Err(Error::InvalidParameter("non-finite reaction frequency".into()));
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        1 << self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / self.grid_size() as f64
    }

    /// `a(x_j)` for `j = 1..N`.
    pub fn reaction(&self) -> Vec<f64> {
        let h = self.h();
        (0..self.grid_size()).map(|j| self.a0 + (self.omega_x * j as f64 * h).cos()).collect()
    }
}

/// `(D/h²)(2I - L - R) + diag(a_j)`.
pub fn build_elliptic_matrix(spec: &EllipticSpec) -> Result<RMatrix> {
    spec.validate()?;
    let dim = spec.grid_size();
    let k = spec.d / (spec.h() * spec.h());
    let stencil = (RMatrix::identity(dim, dim) * 2.0 - shift_left(dim) - shift_right(dim)) * k;
    Ok(stencil + RMatrix::from_diagonal(&DVector::from_vec(spec.reaction())))
}

/// `C(ω_x h) + (2D/h² + a0) I - (D/h²)(L + R)`.
pub fn elliptic_lcu(spec: &EllipticSpec) -> Result<BandedSpec> {
    spec.validate()?;
    let k = spec.d / (spec.h() * spec.h());
    Ok(BandedSpec { omega: spec.omega_x * spec.h(), phi: 0.0, weights: [1.0, k, k, 2.0 * k + spec.a0], signs: [1, -1, -1, 1] })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AdrProfile {
    /// Constant velocity `c`; reaction `a(x)` as a Fourier series in `x`
    /// (period in length units).
    Reaction { reaction: FourierSpec },
    /// Velocity `sin(ω x)` with constant reaction `a`.
    Velocity { omega: f64, a: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdrSpec {
    pub d: f64,
    #[serde(default)]
    pub c: f64,
    /// Domain length `L`.
    pub length: f64,
    /// Grid qubits; `N = 2^n`.
    pub n: usize,
    pub profile: AdrProfile,
    /// Evolution times in units of `τ_d = Δx²/D`.
    #[serde(default = "default_times")]
    pub times: Vec<f64>,
    /// Optional explicit Euler step (absolute time).
    #[serde(default)]
    pub dt: Option<f64>,
}

fn default_times() -> Vec<f64> {
    vec![1.0, 5.0, 10.0]
}

impl AdrSpec {
    /// Reaction variant with `D/Δx² = diffusion_number`, `Δx = 1`, `L = N`.
    pub fn reaction_profile(n: usize, diffusion_number: f64, reaction: FourierSpec) -> AdrSpec {
        let length = (1usize << n) as f64;
        AdrSpec { d: diffusion_number, c: 0.0, length, n, profile: AdrProfile::Reaction { reaction }, times: default_times(), dt: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AdrSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_qubits(self.n)?;
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(Error::InvalidParameter(format!("diffusion must be positive, got {}", self.d)));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::InvalidParameter(format!("domain length must be positive, got {}", self.length)));
        }
        if !self.c.is_finite() {
            return Err(Error::InvalidParameter("non-finite velocity".into()));
        }
        if self.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::InvalidParameter("times must be finite and nonnegative".into()));
        }
        if let Some(dt) = self.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")));
            }
        }
        match &self.profile {
            AdrProfile::Reaction { reaction } => {
                reaction.validate()?;
                if let Some(a) = self.reaction_values().iter().find(|a| **a <= 0.0) {
                    return Err(Error::InvalidParameter(format!("reaction must be positive on the grid, found {a}")));
                }
            }
            AdrProfile::Velocity { omega, a } => {
                if self.c != 0.0 {
                    return Err(Error::InvalidParameter("the velocity profile replaces the constant velocity; set c = 0".into()));
                }
                if !(omega.is_finite() && a.is_finite() && *a > 0.0) {
                    return Err(Error::InvalidParameter("velocity profile needs finite ω and positive a".into()));
                }
            }
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        1 << self.n
    }

    pub fn dx(&self) -> f64 {
        self.length / self.grid_size() as f64
    }

    /// Cell diffusion time `Δx²/D`.
    pub fn tau_d(&self) -> f64 {
        self.dx() * self.dx() / self.d
    }

    /// The reaction series re-expressed per grid index.
    pub fn index_reaction(&self) -> Option<FourierSpec> {
        match &self.profile {
            AdrProfile::Reaction { reaction } => Some(FourierSpec { period: reaction.period / self.dx(), ..reaction.clone() }),
            AdrProfile::Velocity { .. } => None,
        }
    }

    /// Reaction coefficient at each node (effective reaction for the velocity profile).
    pub fn reaction_values(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.grid_size())
            .map(|i| {
                let x = i as f64 * dx;
                match &self.profile {
                    AdrProfile::Reaction { reaction } => reaction.evaluate(x),
                    AdrProfile::Velocity { omega, a } => a + omega * (omega * x).cos(),
                }
            })
            .collect()
    }

    /// `dt <= 1 / (2D/Δx² + |c|/Δx + max a)`.
    pub fn cfl_bound(&self) -> f64 {
        let dx = self.dx();
        let speed = match self.profile {
            AdrProfile::Reaction { .. } => self.c.abs(),
            AdrProfile::Velocity { .. } => 1.0,
        };
        let amax = self.reaction_values().into_iter().fold(f64::NEG_INFINITY, f64::max).max(0.0);
        1.0 / (2.0 * self.d / (dx * dx) + speed / dx + amax)
    }
}

/// The semi-discrete generator `M` and a signed LCU with `α · block = M`.
///
/// Reaction profile: `M = (D/Δx² + c/2Δx) L + (D/Δx² - c/2Δx) R - (2D/Δx²) I - diag(a)`.
/// Velocity profile: `A = -ω C(ωΔx) + (D/Δx²)(L + R) + (1/2Δx)(S L - S R) - (2D/Δx² + a) I`,
/// where `S = S(ωΔx)` scales row `i` by `sin(ω x_i)`.
pub fn build_adr_matrix(spec: &AdrSpec) -> Result<(RMatrix, LcuSpec)> {
    spec.validate()?;
    let dim = spec.grid_size();
    let dx = spec.dx();
    let k = spec.d / (dx * dx);
    let (l, r, id) = (shift_left(dim), shift_right(dim), RMatrix::identity(dim, dim));
    match &spec.profile {
        AdrProfile::Reaction { .. } => {
            let adv = spec.c / (2.0 * dx);
            let a = DVector::from_vec(spec.reaction_values());
            let m = &l * (k + adv) + &r * (k - adv) - &id * (2.0 * k) - RMatrix::from_diagonal(&a);
            let reaction = spec.index_reaction().expect("reaction profile");
            let mut terms = vec![LcuTerm::signed(k + adv, TermOp::ShiftLeft { power: 1 }), LcuTerm::signed(k - adv, TermOp::ShiftRight { power: 1 })];
            terms.push(LcuTerm::signed(-(2.0 * k + reaction.a0 / 2.0), TermOp::Identity));
            terms.extend(negated_harmonics(&reaction));
            Ok((m, LcuSpec::new(spec.n, terms).with_ancillas(AncillaMode::Shared)))
        }
        AdrProfile::Velocity { omega, a } => {
            let w = omega * dx;
            let s = sin_diag(dim, w, 0.0);
            let half = 1.0 / (2.0 * dx);
            let m = cos_diag(dim, w, 0.0) * -omega + (&l + &r) * k + (&s * &l - &s * &r) * half - &id * (2.0 * k + a);
            let sin = TermOp::Sin { omega: w, phi: 0.0 };
            let terms = vec![
                LcuTerm::signed(-omega, TermOp::Cos { omega: w, phi: 0.0 }),
                LcuTerm::signed(k, TermOp::ShiftLeft { power: 1 }),
                LcuTerm::signed(half, TermOp::Product { factors: vec![sin.clone(), TermOp::ShiftLeft { power: 1 }] }),
                LcuTerm::signed(k, TermOp::ShiftRight { power: 1 }),
                LcuTerm::signed(-half, TermOp::Product { factors: vec![sin, TermOp::ShiftRight { power: 1 }] }),
                LcuTerm::signed(-(2.0 * k + a), TermOp::Identity),
            ];
            Ok((m, LcuSpec::new(spec.n, terms)))
        }
    }
}

fn negated_harmonics(reaction: &FourierSpec) -> Vec<LcuTerm> {
    let neg = FourierSpec {
        a0: 0.0,
        period: reaction.period,
        harmonics: reaction.harmonics.iter().map(|h| Harmonic { n: h.n, a: -h.a, b: -h.b }).collect(),
    };
    neg.terms().into_iter().skip(1).collect()
}

/// Reaction profile with the constant part of the diagonal removed:
/// returns `μ = -(2D/Δx² + a0/2)` and an LCU for `M - μ I`.
pub fn adr_shifted_lcu(spec: &AdrSpec) -> Result<(f64, LcuSpec)> {
    spec.validate()?;
    let Some(reaction) = spec.index_reaction() else {
        return Err(Error::Unsupported("spectral shift is defined for the reaction profile".into()));
    };
    let dx = spec.dx();
    let k = spec.d / (dx * dx);
    let adv = spec.c / (2.0 * dx);
    let mu = -(2.0 * k + reaction.a0 / 2.0);
    let mut terms = vec![LcuTerm::signed(k + adv, TermOp::ShiftLeft { power: 1 }), LcuTerm::signed(k - adv, TermOp::ShiftRight { power: 1 })];
    terms.extend(negated_harmonics(&reaction));
    Ok((mu, LcuSpec::new(spec.n, terms).with_ancillas(AncillaMode::Shared)))
}

/// Largest eigenvalue modulus of a real square matrix.
pub fn spectral_radius(m: &RMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m == &m.transpose() {
        return SymmetricEigen::new(m.clone()).eigenvalues.iter().fold(0.0f64, |acc, e| acc.max(e.abs()));
    }
    m.complex_eigenvalues().iter().fold(0.0f64, |acc, e| acc.max(e.norm()))
}

/// `I + dt M`; logs a warning when the step is not contractive.
pub fn forward_euler_matrix(m: &RMatrix, dt: f64) -> Result<RMatrix> {
    if !(dt.is_finite() && dt >= 0.0) {
        return Err(Error::InvalidParameter(format!("time step must be nonnegative, got {dt}")));
    }
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
    }
    let a = RMatrix::identity(m.nrows(), m.ncols()) + m * dt;
    let rho = spectral_radius(&a);
    if rho > 1.0 + 1e-12 {
        log::warn!("forward Euler step dt = {dt} is unstable: spectral radius {rho}");
    }
    Ok(a)
}

/// Gaussian elimination with partial pivoting.
pub fn classical_solve(a: &RMatrix, f: &[f64]) -> Result<Vec<f64>> {
    let n = a.nrows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
    }
    if f.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.len() });
    }
    let mut m = a.clone();
    let mut b = f.to_vec();
    for col in 0..n {
        let (p, pivot) = (col..n).map(|r| (r, m[(r, col)].abs())).fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(pivot >= 1e-14) {
            return Err(Error::SingularMatrix { pivot: pivot.max(0.0) });
        }
        if p != col {
            m.swap_rows(p, col);
            b.swap(p, col);
        }
        for r in col + 1..n {
            let factor = m[(r, col)] / m[(col, col)];
            if factor != 0.0 {
                for c in col..n {
                    m[(r, c)] -= factor * m[(col, c)];
                }
                b[r] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[(r, c)] * x[c]).sum();
        x[r] = (b[r] - s) / m[(r, r)];
    }
    Ok(x)
}

/// `e^{M t} g`: eigendecomposition for symmetric `M`, scaled-and-squared
/// Taylor series otherwise.
pub fn classical_expm_apply(m: &RMatrix, t: f64, g: &[f64]) -> Result<Vec<f64>> {
    let n = m.nrows();
    if !m.is_square() || g.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.len() });
    }
    if n > 1 << 10 {
        return Err(Error::InvalidParameter(format!("dimension {n} exceeds 1024")));
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameter("non-finite time".into()));
    }
    let gv = DVector::from_column_slice(g);
    if t == 0.0 {
        return Ok(g.to_vec());
    }
    if m == &m.transpose() {
        let eig = SymmetricEigen::new(m.clone());
        let coeff = eig.eigenvectors.transpose() * &gv;
        let scaled = DVector::from_fn(n, |i, _| coeff[i] * (eig.eigenvalues[i] * t).exp());
        return Ok((&eig.eigenvectors * scaled).as_slice().to_vec());
    }
    Ok((expm(&(m * t)) * gv).as_slice().to_vec())
}

fn expm(a: &RMatrix) -> RMatrix {
    let n = a.nrows();
    let norm1 = (0..n).map(|c| a.column(c).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a / 2f64.powi(squarings);
    let mut result = RMatrix::identity(n, n);
    let mut term = RMatrix::identity(n, n);
    for k in 1..60 {
        term = &term * &scaled / k as f64;
        result += &term;
        if term.amax() <= 1e-17 * result.amax() {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Normalized `g_k ∝ exp(-(k - center)² / (2 width²))`.
pub fn gaussian_initial(size: usize, center: f64, width: f64) -> Result<StateVector> {
    if !(width > 0.0) || !center.is_finite() {
        return Err(Error::InvalidParameter(format!("Gaussian needs positive width and finite center, got {width}, {center}")));
    }
    let values: Vec<f64> = (0..size).map(|k| (-(k as f64 - center).powi(2) / (2.0 * width * width)).exp()).collect();
    StateVector::from_real(&values)
}

/// `‖û - e^{iθ} v̂‖` for unit vectors `û, v̂` and the best unimodular `e^{iθ}`.
pub fn relative_error(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    let nu = crate::linalg::vec_norm(u);
    let nv = crate::linalg::vec_norm(v);
    if nu == 0.0 || nv == 0.0 || !nu.is_finite() || !nv.is_finite() {
        return Err(Error::InvalidParameter("relative error of a zero or non-finite vector".into()));
    }
    let overlap: Complex64 = u.iter().zip(v).map(|(a, b)| b.conj() * a).sum::<Complex64>() / (nu * nv);
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    let err2: f64 = u.iter().zip(v).map(|(a, b)| (a / nu - phase * b / nv).norm_sqr()).sum();
    Ok(err2.sqrt())
}

pub fn relative_error_real(u: &[f64], v: &[f64]) -> Result<f64> {
    let lift = |x: &[f64]| x.iter().map(|&r| Complex64::new(r, 0.0)).collect::<Vec<_>>();
    relative_error(&lift(u), &lift(v))
}

/// Reaction shapes `a(x) = 0.1 + …` with period 16 used by the standard ADR runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReactionShape {
    /// `0.01 sin(2πx/16)`.
    Sine,
    /// `0.01 cos(2πx/16)`.
    Cosine,
    /// `0.01 sin(2πx/16) + (0.01/3) sin(6πx/16)`.
    Square,
    /// `-0.01 sin(2πx/16) + (0.01/9) sin(6πx/16)`.
    Triangle,
}

impl ReactionShape {
    pub const ALL: [ReactionShape; 4] = [ReactionShape::Sine, ReactionShape::Cosine, ReactionShape::Square, ReactionShape::Triangle];

    pub fn name(self) -> &'static str {
        match self {
            ReactionShape::Sine => "sine",
            ReactionShape::Cosine => "cosine",
            ReactionShape::Square => "square",
            ReactionShape::Triangle => "triangle",
        }
    }

    pub fn series(self) -> FourierSpec {
        let sin = |n, b| Harmonic { n, a: 0.0, b };
        let harmonics = match self {
            ReactionShape::Sine => vec![sin(1, 0.01)],
            ReactionShape::Cosine => vec![Harmonic { n: 1, a: 0.01, b: 0.0 }],
            ReactionShape::Square => vec![sin(1, 0.01), sin(3, 0.01 / 3.0)],
            ReactionShape::Triangle => vec![sin(1, -0.01), sin(3, 0.01 / 9.0)],
        };
        FourierSpec { a0: 0.2, period: 16.0, harmonics }
    }

    /// `D/Δx² = 0.2`, `c = 0`, on `2^n` nodes.
    pub fn adr_spec(self, n: usize) -> AdrSpec {
        AdrSpec::reaction_profile(n, 0.2, self.series())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_problem() -> EllipticSpec {
        EllipticSpec { d: 1.0, a0: 1.5, omega_x: 2.0, n: 3 }
    }

    #[test]
    fn elliptic_rows_sum_to_reaction() {
        let spec = reference_problem();
        let a = build_elliptic_matrix(&spec).unwrap();
        let r = spec.reaction();
        for i in 0..8 {
            assert!((a.row(i).sum() - r[i]).abs() < 1e-12);
        }
        assert_eq!(a, a.transpose());
        assert!((elliptic_lcu(&spec).unwrap().weights.iter().sum::<f64>() - 258.5).abs() < 1e-12);
    }

    #[test]
    fn elliptic_rejects_small_offset() {
        assert!(build_elliptic_matrix(&EllipticSpec { a0: 0.5, ..reference_problem() }).is_err());
    }

    #[test]
    fn solve_identity_and_singular() {
        let f = [1.0, -2.0, 3.0];
        assert_eq!(classical_solve(&RMatrix::identity(3, 3), &f).unwrap(), f.to_vec());
        assert!(matches!(classical_solve(&RMatrix::zeros(2, 2), &[1.0, 1.0]), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn expm_diagonal_and_general_paths_agree() {
        let m = RMatrix::from_row_slice(3, 3, &[-1.0, 0.3, 0.0, 0.1, -2.0, 0.4, 0.0, 0.2, -0.5]);
        let g = [1.0, 0.5, -0.25];
        let general = classical_expm_apply(&m, 1.7, &g).unwrap();
        let sym = (&m + m.transpose()) * 0.5;
        let s1 = classical_expm_apply(&sym, 1.7, &g).unwrap();
        let s2 = (expm(&(&sym * 1.7)) * DVector::from_column_slice(&g)).as_slice().to_vec();
        for (a, b) in s1.iter().zip(&s2) {
            assert!((a - b).abs() < 1e-12);
        }
        let d = RMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 0.5, 2.0]));
        let out = classical_expm_apply(&d, 0.3, &g).unwrap();
        for i in 0..3 {
            assert!((out[i] - g[i] * (d[(i, i)] * 0.3).exp()).abs() < 1e-14);
        }
        assert_eq!(general.len(), 3);
    }

    #[test]
    fn relative_error_cases() {
        let u = [1.0, 2.0, 3.0];
        assert!(relative_error_real(&u, &u).unwrap() < 1e-15);
        assert!(relative_error_real(&u, &[-1.0, -2.0, -3.0]).unwrap() < 1e-15);
        assert!((relative_error_real(&[1.0, 0.0], &[0.0, 1.0]).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(relative_error_real(&[0.0, 0.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn gaussian_symmetry() {
        let g = gaussian_initial(16, 7.5, 2.0).unwrap();
        for k in 0..16 {
            assert!((g.amplitudes()[k] - g.amplitudes()[15 - k]).norm() < 1e-15);
        }
        let flat = gaussian_initial(8, 3.0, f64::INFINITY).unwrap();
        assert!(flat.amplitudes().iter().all(|a| (a.re - 8f64.sqrt().recip()).abs() < 1e-15));
        assert!(gaussian_initial(8, 3.0, 0.0).is_err());
    }

    #[test]
    fn adr_json_round_trip() {
        let text = r#"{"d":0.2,"length":16,"n":4,"profile":{"kind":"reaction","reaction":{"a0":0.2,"period":16,"harmonics":[{"n":1,"b":0.01}]}}}"#;
        let spec = AdrSpec::from_json(text).unwrap();
        assert_eq!(spec.times, vec![1.0, 5.0, 10.0]);
        assert!((spec.tau_d() - 5.0).abs() < 1e-12);
        let again = AdrSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(again, spec);
        assert!(AdrSpec::from_json(r#"{"d":0.2,"length":16,"n":4,"profile":{"kind":"velocity","omega":1,"a":0.1},"c":1}"#).is_err());
    }
}
