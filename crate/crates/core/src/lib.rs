//! Exact and numerical calculus for quadratic Lie algebras, Lagrangian
//! splittings and the bivectors they induce on spaces with Lie algebra
//! actions.

pub mod anchored;
pub mod diffnum;
pub mod exactlin;
pub mod lagrel;
pub mod liegrp;
pub mod quadlie;
pub mod report;
