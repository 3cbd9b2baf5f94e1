//! Quadratic Lie algebras, their Lagrangian subspaces and Courant tensors,
//! Manin triples and the double `g ⊕ ḡ`.

mod algebra;
pub mod catalog;
mod tensor;
mod triple;

pub use algebra::{AlgebraJson, AlgebraReport, QuadraticLieAlgebra};
pub use catalog::build_double;
pub use tensor::{cartan_trivector, courant_tensor, courant_tensor_on_basis, sort_triple, CourantTensor3};
pub use triple::ManinTriple;

use crate::exactlin::LinError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("invalid bracket entry ({i},{j},{k})")]
    BadBracket { i: usize, j: usize, k: usize },
    #[error("unknown basis name {0}")]
    UnknownName(String),
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("vector is not in the subspace")]
    NotInSubspace,
}
