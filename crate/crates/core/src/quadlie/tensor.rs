use num_traits::Zero;

use crate::exactlin::{Subspace, Q};

use super::{QuadError, QuadraticLieAlgebra};

/// An alternating trilinear form on a subspace, stored on a chosen basis by
/// its values at strictly increasing index triples.
#[derive(Clone, Debug, PartialEq)]
pub struct CourantTensor3 {
    subspace: Subspace,
    basis: Vec<Vec<Q>>,
    values: Vec<Q>,
}

fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    // position of (i,j,k), i<j<k, in lexicographic order
    let mut idx = 0;
    for a in 0..i {
        let m = n - a - 1;
        idx += m * (m.saturating_sub(1)) / 2;
    }
    for b in i + 1..j {
        idx += n - b - 1;
    }
    idx + (k - j - 1)
}

/// Sign and sorted form of an index triple; `None` if two indices agree.
pub fn sort_triple(i: usize, j: usize, k: usize) -> Option<(i32, [usize; 3])> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if t[b] > t[b + 1] {
                t.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    Some((sign, t))
}

impl CourantTensor3 {
    /// Tabulates `f` at all increasing triples of `basis`.
    pub fn tabulate(
        subspace: Subspace,
        basis: Vec<Vec<Q>>,
        f: impl Fn(&[Q], &[Q], &[Q]) -> Q,
    ) -> Self {
        let n = basis.len();
        let mut values = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    values.push(f(&basis[i], &basis[j], &basis[k]));
                }
            }
        }
        Self {
            subspace,
            basis,
            values,
        }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Value on basis elements `i, j, k` in any order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Q {
        match sort_triple(i, j, k) {
            None => Q::zero(),
            Some((s, [a, b, c])) => {
                let v = &self.values[triple_index(self.rank(), a, b, c)];
                if s > 0 {
                    v.clone()
                } else {
                    -v
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Evaluates on arbitrary vectors of the subspace.
    pub fn eval(&self, u1: &[Q], u2: &[Q], u3: &[Q]) -> Result<Q, QuadError> {
        let c: Vec<Vec<Q>> = [u1, u2, u3]
            .iter()
            .map(|u| self.coords(u))
            .collect::<Result<_, _>>()?;
        let n = self.rank();
        let mut acc = Q::zero();
        for i in 0..n {
            if c[0][i].is_zero() {
                continue;
            }
            for j in 0..n {
                if c[1][j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    if c[2][k].is_zero() {
                        continue;
                    }
                    acc += &c[0][i] * &c[1][j] * &c[2][k] * self.get(i, j, k);
                }
            }
        }
        Ok(acc)
    }

    fn coords(&self, u: &[Q]) -> Result<Vec<Q>, QuadError> {
        let m = crate::exactlin::QMatrix::from_rows(self.subspace.ambient(), &self.basis)?;
        m.transpose().solve(u)?.ok_or(QuadError::NotInSubspace)
    }
}

/// `Υ(u1,u2,u3) = <u1, [u2, u3]>` on the canonical basis of a Lagrangian `l`.
pub fn courant_tensor(d: &QuadraticLieAlgebra, l: &Subspace) -> Result<CourantTensor3, QuadError> {
    courant_tensor_on_basis(d, l.basis())
}

/// As [`courant_tensor`], on a user-chosen basis of the Lagrangian.
pub fn courant_tensor_on_basis(
    d: &QuadraticLieAlgebra,
    basis: &[Vec<Q>],
) -> Result<CourantTensor3, QuadError> {
    let l = d.span(basis)?;
    if l.dim() != basis.len() {
        return Err(QuadError::DependentBasis);
    }
    if !d.is_lagrangian(&l)? {
        return Err(QuadError::NotLagrangian);
    }
    Ok(CourantTensor3::tabulate(l, basis.to_vec(), |a, b, c| {
        d.pairing(a, &d.bracket(b, c))
    }))
}

/// `Ξ(x1,x2,x3) = ¼ B(x1, [x2, x3])` on the standard basis.
pub fn cartan_trivector(g: &QuadraticLieAlgebra) -> CourantTensor3 {
    let n = g.dim();
    let quarter = crate::exactlin::q(1, 4);
    let basis: Vec<Vec<Q>> = (0..n).map(|i| crate::exactlin::unit_vec(n, i)).collect();
    CourantTensor3::tabulate(Subspace::full(n), basis, |a, b, c| {
        &quarter * g.pairing(a, &g.bracket(b, c))
    })
}
