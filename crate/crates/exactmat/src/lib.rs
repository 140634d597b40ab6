//! Exact and floating-point scalar arithmetic with dense matrices.
//!
//! The same matrix algorithms run over two scalar types: Gaussian rationals
//! (exact, no tolerance) and `Complex64` (tolerance-driven pivoting). Code
//! downstream is generic over [`Coeff`] so every computation has an exact
//! mode and a float mode with identical control flow.

pub mod mat;
pub mod numio;
pub mod scalar;

pub use mat::{Mat, Rref};
pub use numio::{fmt_f64, rat_from_f64, rat_parse, rat_to_f64, rat_to_string, rationalize};
pub use scalar::{Coeff, GaussRat, Rat};

pub use num_complex::Complex64;
