//! Matrix Lie groups acting through quadratic Lie algebras.
//!
//! A [`GroupContext`] realizes a Lie algebra by matrices and carries
//! rational sample points, so that `Ad` is exact at the samples while the
//! chart calculus runs in floating point. On top of it live the action of
//! `𝔤 ⊕ 𝔤̄` on `G`, the doubles `π±` on `D`, the dressing actions on `G₁`,
//! and the linear relations attached to group multiplication.

mod chart;
mod context;
mod double;
mod morph;
pub mod suites;
mod triple;

pub use chart::{ambient_to_chart, exp_chart, ChartFrame};
pub use context::{builtin_context, GroupContext, GroupContextJson};
pub use double::{
    double_action_anchor, double_action_field, double_of_double_anchor, double_splittings,
    pi_plus_minus, DoubleSplittings, PiPlusMinus,
};
pub use morph::{
    action_morphism_check, mult_morphism_check, p_phi_fiber, q_mult_fiber, quotient_relation,
    s_relation,
};
pub use context::{abelian2_context, sl2_context, sl2_pair_context};
pub use suites::poisson_lie_suite;
pub use triple::{borel_subalgebra, builtin_triple, TripleContext};

use crate::anchored::AnchorError;
use crate::diffnum::DiffError;
use crate::exactlin::LinError;
use crate::lagrel::LagError;
use crate::quadlie::QuadError;

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Lag(#[from] LagError),
    #[error(transparent)]
    Anchor(#[from] AnchorError),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error("not a group element: {0}")]
    NotInGroup(String),
    #[error("chart failure: {0}")]
    Chart(String),
    #[error("inconsistent context: {0}")]
    Invalid(String),
    #[error("unknown context `{0}`")]
    UnknownContext(String),
    #[error("malformed context JSON: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests;

// Shape-checked products of matrices whose shapes agree by construction.
pub(crate) fn mm(a: &crate::exactlin::QMatrix, b: &crate::exactlin::QMatrix) -> crate::exactlin::QMatrix {
    a.mul(b).expect("shapes agree")
}

pub(crate) fn madd(a: &crate::exactlin::QMatrix, b: &crate::exactlin::QMatrix) -> crate::exactlin::QMatrix {
    a.add(b).expect("shapes agree")
}

pub(crate) fn msub(a: &crate::exactlin::QMatrix, b: &crate::exactlin::QMatrix) -> crate::exactlin::QMatrix {
    a.sub(b).expect("shapes agree")
}
