use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::exactlin::{vec_to_f64, Q};
use crate::quadlie::CourantTensor3;

use super::DiffError;

/// A fully antisymmetric 3-tensor on `R^n`, stored densely.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trivector {
    dim: usize,
    values: Vec<f64>,
}

impl Trivector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            values: vec![0.0; dim * dim * dim],
        }
    }

    /// Antisymmetrizes the values `f(i, j, k)` given for `i < j < k`.
    pub fn from_increasing(dim: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    t.set_antisymmetric(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    /// Raw values `f(i, j, k)` at every index triple, without symmetrizing.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    values.push(f(i, j, k));
                }
            }
        }
        Self { dim, values }
    }

    /// `u ∧ v ∧ w`, the determinant of the rows `(i, j, k)`.
    pub fn wedge(u: &DVector<f64>, v: &DVector<f64>, w: &DVector<f64>) -> Self {
        Self::from_fn(u.len(), |i, j, k| {
            u[i] * (v[j] * w[k] - v[k] * w[j]) - u[j] * (v[i] * w[k] - v[k] * w[i])
                + u[k] * (v[i] * w[j] - v[j] * w[i])
        })
    }

    fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: f64) {
        for (a, b, c, s) in [
            (i, j, k, 1.0),
            (j, k, i, 1.0),
            (k, i, j, 1.0),
            (j, i, k, -1.0),
            (i, k, j, -1.0),
            (k, j, i, -1.0),
        ] {
            let idx = self.index(a, b, c);
            self.values[idx] = s * v;
        }
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[self.index(i, j, k)]
    }

    pub fn add(&self, o: &Trivector) -> Trivector {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Trivector) -> Trivector {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Trivector {
        Trivector {
            dim: self.dim,
            values: self.values.iter().map(|v| s * v).collect(),
        }
    }

    fn zip(&self, o: &Trivector, f: impl Fn(f64, f64) -> f64) -> Trivector {
        assert_eq!(self.dim, o.dim, "trivector dimensions differ");
        Trivector {
            dim: self.dim,
            values: self.values.iter().zip(&o.values).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest deviation from full antisymmetry.
    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut d: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    d = d.max((v + self.get(j, i, k)).abs());
                    d = d.max((v + self.get(i, k, j)).abs());
                }
            }
        }
        d
    }
}

/// `Σ_{i<j<k} Y(i,j,k) a(d_i) ∧ a(d_j) ∧ a(d_k)`, where `frame[i]` is the
/// vector identified with the `i`-th basis covector of the tensor's domain
/// (for `Υ^E` on `E`, the dual frame `f^i` of `F`).
pub fn push_trivector(
    anchor: &DMatrix<f64>,
    y: &CourantTensor3,
    frame: &[Vec<Q>],
) -> Result<Trivector, DiffError> {
    let r = y.rank();
    if frame.len() != r {
        return Err(DiffError::Shape(format!(
            "tensor has rank {r}, frame has {} vectors",
            frame.len()
        )));
    }
    let pushed = frame
        .iter()
        .map(|v| {
            if v.len() != anchor.ncols() {
                return Err(DiffError::Shape("frame vector length".into()));
            }
            Ok(anchor * DVector::from_vec(vec_to_f64(v)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Trivector::zero(anchor.nrows());
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let c = crate::exactlin::to_f64(&y.get(i, j, k));
                if c != 0.0 {
                    out = out.add(&Trivector::wedge(&pushed[i], &pushed[j], &pushed[k]).scale(c));
                }
            }
        }
    }
    Ok(out)
}
