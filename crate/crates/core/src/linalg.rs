//! Dense reference matrices and small numeric helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(c64)
}

/// Largest entrywise modulus of `a - b`; infinite on a shape mismatch.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

pub fn real_spectral_norm(m: &RMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// `C(ω,φ) = diag(cos(kω+φ))`, `k = 0..dim-1`.
pub fn cos_diag(dim: usize, omega: f64, phi: f64) -> RMatrix {
    RMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |k, _| (k as f64 * omega + phi).cos()))
}

/// `S(ω,φ) = diag(sin(kω+φ))`.
pub fn sin_diag(dim: usize, omega: f64, phi: f64) -> RMatrix {
    RMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |k, _| (k as f64 * omega + phi).sin()))
}

/// Left shift `L|k> = |k+1 mod N>`: ones on the subdiagonal and at `(0, N-1)`.
pub fn shift_left(dim: usize) -> RMatrix {
    RMatrix::from_fn(dim, dim, |i, j| if i == (j + 1) % dim { 1.0 } else { 0.0 })
}

/// Right shift `R|k> = |k-1 mod N>`: ones on the superdiagonal and at `(N-1, 0)`.
pub fn shift_right(dim: usize) -> RMatrix {
    shift_left(dim).transpose()
}

/// Euclidean norm of a complex vector slice.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
