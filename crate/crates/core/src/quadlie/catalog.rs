//! Shipped algebras and triples.

use crate::exactlin::{concat, q, qi, scale_vec, unit_vec, BilinearForm, QMatrix, Subspace, Q};

use super::{ManinTriple, QuadraticLieAlgebra};

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// `sl2` in the basis `e, h, f` with its Killing form.
pub fn sl2() -> QuadraticLieAlgebra {
    let brackets = [(1, 0, 0, qi(2)), (1, 2, 2, qi(-2)), (0, 2, 1, qi(1))];
    let form = BilinearForm::new(QMatrix::from_i64(&[&[0, 0, 4], &[0, 8, 0], &[4, 0, 0]]))
        .expect("symmetric");
    QuadraticLieAlgebra::new(names(&["e", "h", "f"]), &brackets, form).expect("valid constants")
}

/// `so3` with `[x,y]=z` cyclically and form `-2 I`.
pub fn so3() -> QuadraticLieAlgebra {
    let brackets = [(0, 1, 2, qi(1)), (1, 2, 0, qi(1)), (2, 0, 1, qi(1))];
    let form = BilinearForm::diagonal(&[qi(-2), qi(-2), qi(-2)]);
    QuadraticLieAlgebra::new(names(&["x", "y", "z"]), &brackets, form).expect("valid constants")
}

/// Abelian algebra on `Q^n` with the given form.
pub fn abelian(form: BilinearForm) -> QuadraticLieAlgebra {
    let ns = (1..=form.dim()).map(|i| format!("x{i}")).collect();
    QuadraticLieAlgebra::abelian(ns, form).expect("dimensions agree")
}

/// `Q^2` with the form `[[0,1],[1,0]]`.
pub fn abelian_split2() -> QuadraticLieAlgebra {
    abelian(BilinearForm::standard_split(1))
}

/// `g ⊕ ḡ`: componentwise bracket, form `B ⊕ (-B)`. Barred basis names get
/// a trailing `'`.
pub fn build_double(g: &QuadraticLieAlgebra) -> QuadraticLieAlgebra {
    let n = g.dim();
    let mut ns = g.names().to_vec();
    ns.extend(g.names().iter().map(|s| format!("{s}'")));
    let mut brackets = g.brackets();
    brackets.extend(g.brackets().into_iter().map(|(i, j, k, v)| (n + i, n + j, n + k, v)));
    let form = g.form().direct_sum(&g.form().negated());
    QuadraticLieAlgebra::new(ns, &brackets, form).expect("double of a valid algebra")
}

/// `(x, y) ∈ g ⊕ g` as one coordinate vector.
pub fn pair(x: &[Q], y: &[Q]) -> Vec<Q> {
    concat(&[x, y])
}

/// The diagonal `{(x, x)}` in the double of an `n`-dimensional algebra.
pub fn diagonal(n: usize) -> Subspace {
    let vs: Vec<Vec<Q>> = (0..n).map(|i| pair(&unit_vec(n, i), &unit_vec(n, i))).collect();
    Subspace::span(2 * n, &vs).expect("consistent dims")
}

/// The anti-diagonal `{(x, -x)}`.
pub fn antidiagonal(n: usize) -> Subspace {
    Subspace::span(2 * n, &antidiagonal_half_basis(n)).expect("consistent dims")
}

/// Basis `½(b_i, -b_i)` of the anti-diagonal.
pub fn antidiagonal_half_basis(n: usize) -> Vec<Vec<Q>> {
    let half = q(1, 2);
    (0..n)
        .map(|i| {
            let b = unit_vec(n, i);
            scale_vec(&half, &pair(&b, &scale_vec(&qi(-1), &b)))
        })
        .collect()
}

/// `h_{-Δ} + (n_- ⊕ n_+)` in `sl2 ⊕ sl2̄`: span of `(h,-h)`, `(f,0)`, `(0,e)`.
pub fn sl2_triangular_complement() -> Subspace {
    let v = |r: &[i64]| r.iter().map(|&x| qi(x)).collect::<Vec<Q>>();
    Subspace::span(
        6,
        &[v(&[0, 1, 0, 0, -1, 0]), v(&[0, 0, 1, 0, 0, 0]), v(&[0, 0, 0, 1, 0, 0])],
    )
    .expect("consistent dims")
}

/// `(sl2 ⊕ sl2̄, diagonal, h_{-Δ} + (n_- ⊕ n_+))`.
pub fn sl2_triangular_triple() -> ManinTriple {
    ManinTriple::new(build_double(&sl2()), diagonal(3), sl2_triangular_complement())
}

/// `(sl2 ⊕ sl2̄, diagonal, anti-diagonal)`; the second member is not a
/// subalgebra.
pub fn sl2_quasi_triple() -> ManinTriple {
    ManinTriple::new(build_double(&sl2()), diagonal(3), antidiagonal(3))
}

/// `(Q^2, span e1, span e2)` with the split form.
pub fn abelian_triple() -> ManinTriple {
    ManinTriple::new(
        abelian_split2(),
        Subspace::span(2, &[unit_vec(2, 0)]).expect("dims"),
        Subspace::span(2, &[unit_vec(2, 1)]).expect("dims"),
    )
}
