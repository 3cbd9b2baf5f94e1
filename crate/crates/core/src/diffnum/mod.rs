//! Finite-difference calculus in a chart: Schouten brackets of bivector
//! fields, pushforwards of Courant tensors, Lie brackets of vector fields
//! and the bivector identities built from them.
//!
//! All derivatives are central differences with step `h`; truncation is
//! `O(h²)`.

mod schouten;
mod trivector;
mod verify;

pub use schouten::{schouten_fd, vf_bracket_fd, ChartBivectorField};
pub use trivector::{push_trivector, Trivector};
pub use verify::{
    action_axiom_check, relatedness_check, verify_main_identity, MainIdentityReport,
    PointResidual, Relatedness,
};

pub const DEFAULT_H: f64 = 1e-4;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffError {
    #[error("bivector sampler returned a non-antisymmetric matrix (defect {0:e})")]
    NotAntisymmetric(f64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("sampler failed: {0}")]
    Sampler(String),
    #[error(transparent)]
    Anchor(#[from] crate::anchored::AnchorError),
}
