//! Polynomial transforms of block-encoded Hermitian matrices.

mod circuit;
mod phases;
mod poly;
mod run;

pub use circuit::{build_qsvt_circuit, combine_halves, reflection_phases};
pub use phases::{phase_residual, qsp_eval_scalar, qsp_phases, PhaseFactors, PhaseSolution, RESIDUAL_GATE, RESIDUAL_GRID};
pub use poly::{approx_poly, inverse_exponent, ChebyshevPoly, Parity, PolyTarget, INVERSE_SUP_CAP};
pub use run::{adr_initial_state, run_adr, run_elliptic, InversionWindow, QsvtRun};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::{build_uc, SinusoidSpec, UcVariant};
    use crate::lcu::{build_banded, BandedSpec};
    use crate::verify::extract_block;
    use nalgebra::SymmetricEigen;

    #[test]
    fn degree_one_is_the_block() {
        let be = build_uc(2, SinusoidSpec::new(0.7, 0.2), UcVariant::Select).unwrap();
        let phases = qsp_phases(&ChebyshevPoly::chebyshev(1)).unwrap().phases;
        let q = build_qsvt_circuit(&be, &phases).unwrap();
        let got = extract_block(&q).unwrap();
        let want = extract_block(&be).unwrap();
        assert!(crate::linalg::max_abs_diff(&got, &want) < 1e-12);
    }

    #[test]
    fn block_is_polynomial_of_encoded_matrix() {
        let spec = BandedSpec { omega: 0.9, phi: 0.0, weights: [0.4, 0.3, 0.3, 0.5], signs: [1, -1, -1, 1] };
        let be = build_banded(2, &spec).unwrap();
        let a = extract_block(&be).unwrap().map(|z| z.re) / be.alpha;
        let eig = SymmetricEigen::new(a);
        for coeffs in [vec![0.0, 0.3, 0.0, -0.2, 0.0, 0.1], vec![0.2, 0.0, 0.35, 0.0, -0.1], vec![0.6]] {
            let poly = ChebyshevPoly::new(coeffs);
            let phases = qsp_phases(&poly).unwrap().phases;
            let block = extract_block(&build_qsvt_circuit(&be, &phases).unwrap()).unwrap();
            let mapped = nalgebra::DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|&l| poly.eval(l)));
            let want = &eig.eigenvectors * nalgebra::DMatrix::from_diagonal(&mapped) * eig.eigenvectors.transpose();
            let err = block.iter().zip(want.iter()).map(|(z, w)| (z - w).norm()).fold(0.0, f64::max);
            assert!(err < 1e-10, "{:?}: {err}", poly);
        }
    }
}
