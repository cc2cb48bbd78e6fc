//! Jones polynomials of plat-closed braids.
//!
//! Braid generators are represented through the braid limit of the six-vertex
//! R-matrix. Orientation-corrected braiding eigenvalues act diagonally on two
//! fusion-path bases of the total-spin-0 sector, and the bases are related by
//! an orthogonal duality matrix assembled from q-Racah coefficients. The plat
//! closure of a braid word is the matrix element of the resulting product
//! between cup states. An exact Kauffman-bracket state sum serves as an
//! independent oracle, and a statevector simulator replays the product as a
//! quantum circuit of block-embedded unitaries.

pub mod braid;
mod dsu;
pub mod error;
pub mod evaluator;
pub mod fusion;
pub mod oracle;
pub mod qnum;
pub mod qsim;
pub mod vertex;

pub use error::{Error, Result};
pub use qnum::{Deformation, LaurentPoly, QPoint, RealQPoint};
