//! Finite-depth slices of Coxeter root systems, reflection orders on
//! them, and desk-scale certifiers for the order-theoretic structure of
//! those orders: coordinate-range and density checks, block
//! decompositions, dihedral fiber coherence, affine two-sided orders, and
//! interval-growth diagnostics.

pub mod affine;
pub mod analysis;
pub mod error;
pub mod io;
pub mod matrix;
pub mod orders;
pub mod planes;
pub mod projective;
pub mod roots;
pub mod scalar;
pub mod subgroups;
pub mod svg;

pub use error::{Error, Result};
pub use matrix::{Bond, CoxeterMatrix, GramMatrix};
pub use roots::{Root, RootId, RootSlice, Word, DEFAULT_ROOT_CAP};
pub use scalar::{Appx, Rat, Scalar, ScalarMode};
