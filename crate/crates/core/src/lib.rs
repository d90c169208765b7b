//! Real-linear transformations on `C^n`, their polar and Gram canonical
//! forms modulo the unitary group, and lattices in `C^n`: validation,
//! normalization to period matrices, Gaussian-integer unimodular equivalence,
//! torus point reduction and the closed-form one-dimensional theory.

pub mod cli;
pub mod dim1;
pub mod equivalence;
pub mod error;
pub mod gaussian;
pub mod json;
pub mod lattice;
pub mod numeric;
pub mod polar;
pub mod reallinear;
pub mod torus;

pub use error::{Error, Result};
pub use numeric::{Complex, ComplexMatrix, Tolerance};
