//! Exact cohomology of bounded double complexes over the rationals.
//!
//! Build a [`DoubleComplex`] by hand, from a generator, or from the text
//! format, then hand it to [`Cohomology`] for Dolbeault, Bott-Chern, Aeppli
//! and de Rham groups and the maps between them.

pub mod bicomplex;
pub mod checkers;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod report;
pub mod zoo;

pub use bicomplex::{Bidegree, DoubleComplex};
pub use cohomology::{Cohomology, Functor, Theory};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
