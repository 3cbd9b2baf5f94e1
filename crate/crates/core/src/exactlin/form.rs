use num_traits::{One, Signed, Zero};

use super::matrix::{dot, QMatrix};
use super::{LinError, Q};

/// Symmetric bilinear form on `Q^n`, given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BilinearForm {
    matrix: QMatrix,
}

impl BilinearForm {
    pub fn new(matrix: QMatrix) -> Result<Self, LinError> {
        if !matrix.is_symmetric() {
            return Err(LinError::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    /// `[[0, I], [I, 0]]` on `Q^{2n}`: the standard split form pairing the
    /// first `n` coordinates with the last `n`.
    pub fn standard_split(n: usize) -> Self {
        let mut m = QMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m[(i, n + i)] = Q::one();
            m[(n + i, i)] = Q::one();
        }
        Self { matrix: m }
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let n = entries.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn eval(&self, u: &[Q], v: &[Q]) -> Q {
        let bv = self.matrix.mul_vec(v).expect("vector length matches form");
        dot(u, &bv)
    }

    /// `G[i][j] = B(a_i, b_j)`.
    pub fn gram(&self, a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
        let mut g = QMatrix::zeros(a.len(), b.len());
        for (i, x) in a.iter().enumerate() {
            let bx = self.matrix.mul_vec(x).expect("vector length matches form");
            for (j, y) in b.iter().enumerate() {
                g[(i, j)] = dot(&bx, y);
            }
        }
        g
    }

    /// The covector `B(v, .)` as a coordinate vector.
    pub fn flat(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(v).expect("vector length matches form")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    pub fn negated(&self) -> Self {
        Self {
            matrix: self.matrix.scale(&-Q::one()),
        }
    }

    pub fn direct_sum(&self, other: &BilinearForm) -> Self {
        Self {
            matrix: QMatrix::block_diag(&[&self.matrix, &other.matrix]),
        }
    }

    pub fn direct_sum_all(forms: &[&BilinearForm]) -> Self {
        let blocks: Vec<&QMatrix> = forms.iter().map(|f| &f.matrix).collect();
        Self {
            matrix: QMatrix::block_diag(&blocks),
        }
    }

    /// `(positive, negative, zero)` counts of a diagonalization by
    /// congruence.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.dim();
        let mut a = self.matrix.clone();
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                    swap_sym(&mut a, k, i);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                    // e_k <- e_k + e_j makes the diagonal entry 2 a_kj.
                    add_sym(&mut a, k, j, &Q::one());
                } else {
                    continue;
                }
            }
            let p = a[(k, k)].clone();
            if p.is_zero() {
                continue;
            }
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let c = -(&a[(i, k)] / &p);
                add_sym(&mut a, i, k, &c);
            }
        }
        (pos, neg, n - pos - neg)
    }

    pub fn is_split(&self) -> bool {
        let (p, m, z) = self.signature();
        z == 0 && p == m
    }
}

fn swap_sym(a: &mut QMatrix, i: usize, j: usize) {
    let n = a.nrows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Row and column operation `e_i <- e_i + c e_j`.
fn add_sym(a: &mut QMatrix, i: usize, j: usize, c: &Q) {
    let n = a.nrows();
    for col in 0..n {
        let v = c * &a[(j, col)];
        a[(i, col)] += v;
    }
    for row in 0..n {
        let v = c * &a[(row, j)];
        a[(row, i)] += v;
    }
}
