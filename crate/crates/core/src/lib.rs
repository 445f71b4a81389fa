#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod criteria;
pub mod embed;
pub mod error;
pub mod forms;
pub mod isometry;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
pub use forms::{discriminant_form, DiscriminantGroup, FiniteQuadraticForm};
pub use isometry::{automorphism_group, short_vectors, Isometry};
pub use lattice::{Embedding, GramLattice, Signature};
pub use linalg::IntMatrix;
