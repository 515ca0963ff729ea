//! Exact computations for flat nilpotent Lie groups with bi-invariant
//! pseudo-Riemannian metrics built from 3-vectors with isotropic support,
//! and the flat nearly (para-)Kähler structures they carry.

pub mod error;
pub mod exactlin;
pub mod flatgroup;
pub mod lattice;
pub mod model_file;
pub mod multilinear;
pub mod random;
pub mod report;
pub mod structures;

pub use error::{Error, Result};
