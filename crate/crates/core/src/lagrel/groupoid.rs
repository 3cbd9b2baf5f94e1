use num_traits::Zero;

use crate::exactlin::{unit_vec, Subspace, Q};
use crate::quadlie::QuadraticLieAlgebra;

use super::{LinearRelation, SplitSpace};

/// Pair-groupoid multiplication on `W = q ⊕ q̄`: `(x,y) ∘ (y,w) = (x,w)`, as
/// a relation `W × W ⇢ W`.
pub fn pair_groupoid_relation(q: &QuadraticLieAlgebra) -> LinearRelation {
    let n = q.dim();
    let w = SplitSpace::new(q.form().direct_sum(&q.form().negated()))
        .expect("g ⊕ ḡ is split for nondegenerate forms");
    // graph vector layout: z = (x, w) | z' = (x, y) | z'' = (y, w)
    let slots: [[usize; 2]; 3] = [[0, 2], [3, 4], [1, 5]];
    let mut rows = Vec::new();
    for s in slots {
        for i in 0..n {
            let mut v = vec![Q::zero(); 6 * n];
            for block in s {
                v[block * n..(block + 1) * n].clone_from_slice(&unit_vec(n, i));
            }
            rows.push(v);
        }
    }
    let graph = Subspace::span(6 * n, &rows).expect("consistent lengths");
    LinearRelation::new(w.clone(), w.product(&w), graph).expect("groupoid graph is Lagrangian")
}
