//! Seeded random instances: rationals, isometries of the standard split
//! form, Lagrangians, splittings and relations.

use num_traits::Zero;
use rand::Rng;

use crate::exactlin::{q, unit_vec, QMatrix, Subspace, Q};

use super::{LinearRelation, SplitSpace};

/// A rational `p/d` with `p ∈ {-2..2}`, `d ∈ {1..3}`.
pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    q(rng.gen_range(-2..=2), rng.gen_range(1..=3))
}

pub fn small_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = small_q(rng);
        }
    }
    m
}

pub fn invertible_matrix<R: Rng>(rng: &mut R, n: usize) -> (QMatrix, QMatrix) {
    loop {
        let m = small_matrix(rng, n, n);
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// One random isometry step of `[[0,I],[I,0]]` on `Q^{2n}`, supported on
/// the index set `idx` (pairs `(a_i, b_i)` for `i ∈ idx`).
fn isometry_step<R: Rng>(rng: &mut R, n: usize, idx: &[usize]) -> QMatrix {
    let k = idx.len();
    let mut g = QMatrix::identity(2 * n);
    match rng.gen_range(0..4) {
        0 => {
            let (a, a_inv) = invertible_matrix(rng, k);
            let a_inv_t = a_inv.transpose();
            for (r, &i) in idx.iter().enumerate() {
                for (c, &j) in idx.iter().enumerate() {
                    g[(i, j)] = a[(r, c)].clone();
                    g[(n + i, n + j)] = a_inv_t[(r, c)].clone();
                }
            }
        }
        kind @ (1 | 2) => {
            // a += S b or b += T a with S antisymmetric
            for r in 0..k {
                for c in r + 1..k {
                    let s = small_q(rng);
                    let (i, j) = (idx[r], idx[c]);
                    let (row_off, col_off) = if kind == 1 { (0, n) } else { (n, 0) };
                    g[(row_off + i, col_off + j)] = s.clone();
                    g[(row_off + j, col_off + i)] = -s;
                }
            }
        }
        _ => {
            let i = idx[rng.gen_range(0..k)];
            g[(i, i)] = Q::zero();
            g[(n + i, n + i)] = Q::zero();
            g[(i, n + i)] = q(1, 1);
            g[(n + i, i)] = q(1, 1);
        }
    }
    g
}

/// A product of `steps` random isometries of the standard split form.
pub fn random_isometry<R: Rng>(rng: &mut R, n: usize, steps: usize) -> QMatrix {
    let all: Vec<usize> = (0..n).collect();
    let mut g = QMatrix::identity(2 * n);
    for _ in 0..steps {
        g = isometry_step(rng, n, &all).mul(&g).expect("square");
    }
    g
}

/// `span(a_1..a_n)` and `span(b_1..b_n)` moved by a random isometry: a
/// transverse Lagrangian pair of the standard split form.
pub fn random_splitting<R: Rng>(rng: &mut R, n: usize) -> (Subspace, Subspace) {
    let g = random_isometry(rng, n, 3);
    let e: Vec<Vec<Q>> = (0..n).map(|i| g.column(i)).collect();
    let f: Vec<Vec<Q>> = (0..n).map(|i| g.column(n + i)).collect();
    (
        Subspace::span(2 * n, &e).expect("dims"),
        Subspace::span(2 * n, &f).expect("dims"),
    )
}

pub fn random_lagrangian<R: Rng>(rng: &mut R, n: usize) -> Subspace {
    random_splitting(rng, n).0
}

/// A random Lagrangian relation between standard split spaces of
/// dimensions `2 n_src` and `2 n_tgt`. Cross-factor mixing is sparse, so
/// kernels and ranges of every size occur.
pub fn random_relation<R: Rng>(rng: &mut R, n_src: usize, n_tgt: usize) -> LinearRelation {
    let n = n_src + n_tgt;
    // standard coordinates: indices < n_tgt belong to the target
    let mut g = QMatrix::identity(2 * n);
    let tgt: Vec<usize> = (0..n_tgt).collect();
    let src: Vec<usize> = (n_tgt..n).collect();
    let cross = rng.gen_range(0..=3);
    for step in 0..(4 + cross) {
        let idx: Vec<usize> = if step < cross {
            vec![rng.gen_range(0..n_tgt), rng.gen_range(n_tgt..n)]
        } else if step % 2 == 0 {
            tgt.clone()
        } else {
            src.clone()
        };
        g = isometry_step(rng, n, &idx).mul(&g).expect("square");
    }
    let start: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let off = if rng.gen_bool(0.5) { 0 } else { n };
            g.mul_vec(&unit_vec(2 * n, off + i)).expect("dims")
        })
        .collect();
    // (a, b) -> target (a_t, b_t) ⊕ source (a_s, -b_s)
    let rows: Vec<Vec<Q>> = start
        .iter()
        .map(|v| {
            let mut out = Vec::with_capacity(2 * n);
            out.extend(v[..n_tgt].iter().cloned());
            out.extend(v[n..n + n_tgt].iter().cloned());
            out.extend(v[n_tgt..n].iter().cloned());
            out.extend(v[n + n_tgt..].iter().map(|x| -x));
            out
        })
        .collect();
    let graph = Subspace::span(2 * n, &rows).expect("dims");
    LinearRelation::new(SplitSpace::standard(n_tgt), SplitSpace::standard(n_src), graph)
        .expect("isometries preserve Lagrangians")
}
