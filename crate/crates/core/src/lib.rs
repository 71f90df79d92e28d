//! Block-encoding circuits for sparse matrices whose diagonals are periodic
//! (sinusoidal or Fourier-series) and whose off-diagonals are cyclic shifts,
//! together with an exact statevector simulator, block verification, and a
//! QSVT pipeline for the model PDE problems that motivate them.
//!
//! Conventions used throughout:
//! - little-endian qubits, work register on the low indices `[0, n)`;
//! - ancillas above the work register, flag state all-zeros;
//! - `P(θ) = diag(1, e^{iθ})`, `Ry(θ) = exp(-iθY/2)`, `Rz(θ) = exp(-iθZ/2)`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod diag;
pub mod encoding;
pub mod io;
pub mod lcu;
pub mod error;
pub mod linalg;
pub mod pde;
pub mod qsvt;
pub mod shift;
pub mod verify;

pub use encoding::{AncillaRegister, BlockEncoding};
pub use error::{Error, Result};
