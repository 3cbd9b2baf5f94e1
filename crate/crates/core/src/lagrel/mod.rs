//! Linear Lagrangian relations between split quadratic vector spaces and
//! the bivectors of Lagrangian splittings.

mod bivector;
mod groupoid;
pub mod random;
mod relation;
mod splitting;

pub use bivector::Bivector;
pub use groupoid::pair_groupoid_relation;
pub use relation::{BackwardImage, LinearRelation, ReducedIso, RelationJson};
pub use splitting::{
    reduce_bivector, related_lagrangian, related_splitting, LagrangianSplitting, Reason,
    Reduction, Relatedness, SplitSpace,
};

use crate::exactlin::{LinError, Q};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LagError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("form does not have split signature")]
    NotSplit,
    #[error("{0} is not Lagrangian")]
    NotLagrangian(&'static str),
    #[error("subspaces are not transverse")]
    NotTransverse,
    #[error("subspace is not coisotropic")]
    NotCoisotropic,
    #[error("source and target spaces do not match")]
    SpaceMismatch,
    #[error("transversality fails: nonzero vector of the target Lagrangian related to 0: {witness:?}")]
    Transversality { witness: Vec<Q> },
    #[error("W0 is not the sum of its intersections with E and F; witness {witness:?}")]
    Decomposition { witness: Vec<Q> },
}

#[cfg(test)]
mod tests;
