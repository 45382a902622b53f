pub mod algebra;
pub mod cli;
pub mod digraph;
pub mod error;
pub mod factory;
pub mod groups;
pub mod io;
pub mod matrix;
pub mod scalars;
pub mod snf;
pub mod solver;
pub mod verify;

pub use algebra::EvolutionAlgebra;
pub use digraph::{Digraph, Permutation};
pub use error::{Error, Result};
pub use groups::{MonomialGroup, MonomialMap};
pub use matrix::Matrix;
pub use scalars::{Field, FieldDescriptor, Scalar};
