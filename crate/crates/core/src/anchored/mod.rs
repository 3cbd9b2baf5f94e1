//! The action Courant algebroid `M × 𝔡` at a single point of `M`.
//!
//! An [`AnchoredPoint`] bundles a quadratic Lie algebra with the value
//! `a_m: 𝔡 → T_mM` of the action map in some chart. Everything here is
//! linear algebra at that point: the stabilizer, the dual anchor, the
//! bivector of a Lagrangian splitting, its rank and leaf data, the
//! diagonal relation, and pointwise reduction and pull-back. The Courant
//! bracket of sections is evaluated from first jets.

mod jets;
mod point;
pub mod random;
mod reduce;

pub use jets::{courant_bracket_jets, jet_axioms, SectionJet};
pub use point::{Anchor, AnchoredPoint, CoisotropyCheck, LeafReport};
pub use reduce::{coisotropic_reduce_point, pullback_point, Pullback};

use crate::exactlin::{LinError, Q};
use crate::lagrel::LagError;
use crate::quadlie::QuadError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnchorError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Lag(#[from] LagError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("anchor has {found} columns, algebra has dimension {expected}")]
    Shape { expected: usize, found: usize },
    #[error("exact computation requested on a floating-point anchor")]
    FloatAnchor,
    #[error("the form of the algebra is degenerate")]
    SingularForm,
    #[error("stabilizer is not coisotropic; witness {witness:?}")]
    NotCoisotropic { witness: Vec<Q> },
    #[error("ran(dΦ) + ran(a) is not the whole tangent space")]
    NotTransverse,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

#[cfg(test)]
mod tests;
