//! Seeded anchored points with coisotropic stabilizers on the abelian
//! split algebra `Q^{2m}`.

use std::sync::Arc;

use rand::Rng;

use crate::exactlin::{qi, BilinearForm, QMatrix, Subspace};
use crate::lagrel::random::{random_isometry, random_splitting, small_matrix};
use crate::quadlie::catalog::abelian;
use crate::quadlie::QuadraticLieAlgebra;

use super::{Anchor, AnchoredPoint};

pub fn split_abelian(m: usize) -> Arc<QuadraticLieAlgebra> {
    Arc::new(abelian(BilinearForm::standard_split(m)))
}

/// A `k × 2m` anchor whose kernel is a random coisotropic subspace.
///
/// In standard coordinates the kernel is `span(a_1..a_m, b_{r+1}..b_m)`
/// and `b_1..b_r` map to independent vectors; a random isometry then
/// moves everything.
pub fn random_coisotropic_anchor<R: Rng>(rng: &mut R, m: usize, k: usize) -> QMatrix {
    let r = rng.gen_range(0..=m.min(k));
    let image = loop {
        let c = small_matrix(rng, k, r);
        if c.rank() == r {
            break c;
        }
    };
    let mut a0 = QMatrix::zeros(k, 2 * m);
    for i in 0..k {
        for j in 0..r {
            a0[(i, m + j)] = image[(i, j)].clone();
        }
    }
    let g = random_isometry(rng, m, 3);
    let g_inv = g.inverse().expect("isometries are invertible");
    a0.mul(&g_inv).expect("shapes agree")
}

/// A random point together with a random Lagrangian splitting.
pub fn random_point<R: Rng>(
    rng: &mut R,
    m: usize,
    k: usize,
) -> (AnchoredPoint, Subspace, Subspace) {
    let a = random_coisotropic_anchor(rng, m, k);
    let pt = AnchoredPoint::new(split_abelian(m), Anchor::Exact(a))
        .expect("kernel is coisotropic by construction");
    let (e, f) = random_splitting(rng, m);
    (pt, e, f)
}

/// `Q^6` with the standard split form, `E = span(a_i)`, `F = span(b_i)` and
/// the rank-one anchor `x ↦ ⟨w, x⟩` for `w = a_1 + b_2`. The leaf condition
/// fails here and `ran π♯ = 0` while `a(E) ∩ a(F)` is the whole line.
pub fn leaf_counterexample() -> (AnchoredPoint, Subspace, Subspace) {
    let algebra = split_abelian(3);
    let mut w = vec![qi(0); 6];
    w[0] = qi(1);
    w[4] = qi(1);
    let row = algebra.form().flat(&w);
    let a = QMatrix::from_rows(6, &[row]).expect("one row of length 6");
    let pt = AnchoredPoint::new(algebra, Anchor::Exact(a)).expect("w⊥ is coisotropic");
    let unit = |i| crate::exactlin::unit_vec(6, i);
    let e = Subspace::span(6, &[unit(0), unit(1), unit(2)]).expect("dims");
    let f = Subspace::span(6, &[unit(3), unit(4), unit(5)]).expect("dims");
    (pt, e, f)
}
