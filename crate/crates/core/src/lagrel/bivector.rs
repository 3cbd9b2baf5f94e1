use num_traits::Zero;

use crate::exactlin::{q, BilinearForm, LinError, QMatrix, Q};

/// An element of `∧²V` as an antisymmetric coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bivector {
    matrix: QMatrix,
}

impl Bivector {
    pub fn new(matrix: QMatrix) -> Result<Self, LinError> {
        if !matrix.is_antisymmetric() {
            return Err(LinError::NotAntisymmetric);
        }
        Ok(Self { matrix })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: QMatrix::zeros(n, n),
        }
    }

    /// `u ∧ v` with components `u_j v_k - u_k v_j`.
    pub fn wedge(u: &[Q], v: &[Q]) -> Self {
        let n = u.len();
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(j, k)] = &u[j] * &v[k] - &u[k] * &v[j];
            }
        }
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> QMatrix {
        self.matrix
    }

    pub fn add(&self, other: &Bivector) -> Bivector {
        Self {
            matrix: self.matrix.add(&other.matrix).expect("equal dims"),
        }
    }

    pub fn scale(&self, s: &Q) -> Bivector {
        Self {
            matrix: self.matrix.scale(s),
        }
    }

    pub fn negated(&self) -> Bivector {
        self.scale(&q(-1, 1))
    }

    /// Image under a linear map: `a Π aᵀ`.
    pub fn push(&self, a: &QMatrix) -> Result<Bivector, LinError> {
        Ok(Self {
            matrix: a.mul(&self.matrix)?.mul(&a.transpose())?,
        })
    }

    /// Contraction with a covector: component `k` is `Σ_j μ_j Π^{jk}`.
    pub fn contract(&self, mu: &[Q]) -> Vec<Q> {
        self.matrix.transpose().mul_vec(mu).expect("covector length")
    }

    /// Contraction with `<w, .>`.
    pub fn contract_form(&self, form: &BilinearForm, w: &[Q]) -> Vec<Q> {
        self.contract(&form.flat(w))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        self.matrix.to_f64()
    }

    /// `Σ_i u_i ∧ v_i` scaled by `s`.
    pub fn sum_of_wedges(n: usize, s: &Q, pairs: &[(Vec<Q>, Vec<Q>)]) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for (u, v) in pairs {
            for j in 0..n {
                if u[j].is_zero() && v[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    m[(j, k)] += s * (&u[j] * &v[k] - &u[k] * &v[j]);
                }
            }
        }
        Self { matrix: m }
    }
}
