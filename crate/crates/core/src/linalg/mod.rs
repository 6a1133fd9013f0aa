//! Exact rational elimination and a dense symmetric eigensolver.

mod eigen;
mod rational;

pub use eigen::{
    symmetric_eigenvalues, symmetric_eigenvalues_with, Spectrum, SymmetricMatrix,
    DEFAULT_ZERO_TOLERANCE,
};
pub use rational::{
    canonical_basis, primitive_integer_vector, ratio, rational, to_f64, Rational, RationalMatrix,
};
