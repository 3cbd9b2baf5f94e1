use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactlin::{q, qi, strings_to_vec, vec_to_strings, QMatrix, Q};
use crate::quadlie::catalog::{abelian, abelian_split2, sl2};
use crate::quadlie::{build_double, AlgebraJson, QuadraticLieAlgebra};
use crate::exactlin::BilinearForm;
use crate::report::{Check, Report};

use super::{madd, mm, msub, LieError};

type Field = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;

/// A matrix group `G ⊂ SL_n` through a basis of its Lie algebra, with
/// rational sample points.
#[derive(Clone, Debug)]
pub struct GroupContext {
    name: String,
    ambient: usize,
    basis: Vec<QMatrix>,
    algebra: Arc<QuadraticLieAlgebra>,
    samples: Vec<QMatrix>,
    // columns are the row-major vectorized basis matrices
    system: QMatrix,
    pinv: DMatrix<f64>,
    basis_f64: Vec<DMatrix<f64>>,
    structure: Vec<DMatrix<f64>>,
}

impl GroupContext {
    pub fn new(
        name: impl Into<String>,
        ambient: usize,
        basis: Vec<QMatrix>,
        algebra: Arc<QuadraticLieAlgebra>,
        samples: Vec<QMatrix>,
    ) -> Result<Self, LieError> {
        let k = algebra.dim();
        if basis.len() != k {
            return Err(LieError::Invalid(format!(
                "{} basis matrices for a {k}-dimensional algebra",
                basis.len()
            )));
        }
        for m in basis.iter().chain(&samples) {
            if m.nrows() != ambient || m.ncols() != ambient {
                return Err(LieError::Invalid(format!(
                    "matrix of shape {}×{}, expected {ambient}×{ambient}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let cols: Vec<Vec<Q>> = basis.iter().map(vectorize).collect();
        let system = QMatrix::from_columns(ambient * ambient, &cols)?;
        if system.rank() != k {
            return Err(LieError::Chart("basis matrices are linearly dependent".into()));
        }
        let s = system.to_f64();
        let pinv = (s.transpose() * &s)
            .try_inverse()
            .ok_or_else(|| LieError::Chart("singular normal equations".into()))?
            * s.transpose();
        let structure = (0..k)
            .map(|a| algebra.ad(&crate::exactlin::unit_vec(k, a)).to_f64())
            .collect();
        Ok(Self {
            name: name.into(),
            ambient,
            basis_f64: basis.iter().map(QMatrix::to_f64).collect(),
            basis,
            algebra,
            samples,
            system,
            pinv,
            structure,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    pub fn basis_f64(&self) -> &[DMatrix<f64>] {
        &self.basis_f64
    }

    pub fn algebra(&self) -> &QuadraticLieAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.algebra
    }

    pub fn samples(&self) -> &[QMatrix] {
        &self.samples
    }

    pub fn with_samples(&self, samples: Vec<QMatrix>) -> Self {
        Self {
            samples,
            ..self.clone()
        }
    }

    pub fn identity(&self) -> QMatrix {
        QMatrix::identity(self.ambient)
    }

    /// Commutators against structure constants, and membership of the
    /// samples (`det = 1`, `Ad` preserves the algebra). Exact.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let k = self.dim();
        let mut bad = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let (x, y) = (&self.basis[i], &self.basis[j]);
                let comm = msub(&mm(x, y), &mm(y, x));
                let expected = self.from_coords(&self.algebra.bracket_basis(i, j));
                if comm != expected {
                    let ns = self.algebra.names();
                    bad.push(format!("[{},{}]", ns[i], ns[j]));
                }
            }
        }
        rep.push(Check::flag(
            format!("{}: commutators match structure constants", self.name),
            bad.is_empty(),
            bad.join(", "),
        ));
        let mut outside = Vec::new();
        for (s, g) in self.samples.iter().enumerate() {
            let ok = g.determinant() == Some(Q::one()) && self.ad(g).is_ok();
            if !ok {
                outside.push(s.to_string());
            }
        }
        rep.push(Check::flag(
            format!("{}: samples lie in the group", self.name),
            outside.is_empty(),
            format!("samples {}", outside.join(", ")),
        ));
        rep
    }

    /// `Σ x_a X_a`.
    pub fn from_coords(&self, x: &[Q]) -> QMatrix {
        let mut out = QMatrix::zeros(self.ambient, self.ambient);
        for (c, b) in x.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = madd(&out, &b.scale(c));
            }
        }
        out
    }

    /// Exact coordinates of a matrix in the algebra.
    pub fn coords(&self, x: &QMatrix) -> Result<Vec<Q>, LieError> {
        self.system
            .solve(&vectorize(x))?
            .ok_or_else(|| LieError::Invalid("matrix is not in the Lie algebra".into()))
    }

    /// Least-squares coordinates of a float matrix.
    pub fn coords_f64(&self, x: &DMatrix<f64>) -> DVector<f64> {
        &self.pinv * vectorize_f64(x)
    }

    /// Exact `Ad_g` in the basis.
    pub fn ad(&self, g: &QMatrix) -> Result<QMatrix, LieError> {
        let inv = g
            .inverse()
            .ok_or_else(|| LieError::NotInGroup("singular matrix".into()))?;
        let cols = self
            .basis
            .iter()
            .map(|x| self.coords(&mm(&mm(g, x), &inv)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| LieError::NotInGroup("Ad_g does not preserve the algebra".into()))?;
        Ok(QMatrix::from_columns(self.dim(), &cols)?)
    }

    pub fn ad_f64(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        let inv = g.clone().try_inverse().expect("group elements are invertible");
        let cols: Vec<DVector<f64>> = self
            .basis_f64
            .iter()
            .map(|x| self.coords_f64(&(g * x * &inv)))
            .collect();
        DMatrix::from_columns(&cols)
    }

    pub fn algebra_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.ambient, self.ambient);
        for (c, b) in x.iter().zip(&self.basis_f64) {
            out += b * *c;
        }
        out
    }

    /// `ad_x` from the structure constants.
    pub fn ad_algebra(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let k = self.dim();
        let mut out = DMatrix::zeros(k, k);
        for (c, m) in x.iter().zip(&self.structure) {
            out += m * *c;
        }
        out
    }

    /// `exp(Σ x_a X_a)`.
    pub fn exp(&self, x: &DVector<f64>) -> DMatrix<f64> {
        expm(&self.algebra_matrix(x))
    }

    /// Left-trivialized derivative of `t ↦ exp(Σ t_a X_a)`:
    /// `Σ_m (-1)^m ad_X^m / (m+1)!`.
    pub fn dexp_left(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let k = self.dim();
        let ad = self.ad_algebra(x);
        let mut term = DMatrix::<f64>::identity(k, k);
        let mut sum = term.clone();
        for m in 1..60 {
            term = -(&ad * &term) / (m as f64 + 1.0);
            sum += &term;
            if term.amax() < 1e-18 {
                break;
            }
        }
        sum
    }

    /// `g0 · exp(Σ t_a X_a)`.
    pub fn chart_point(&self, g0: &DMatrix<f64>, t: &DVector<f64>) -> DMatrix<f64> {
        g0 * self.exp(t)
    }

    /// Expresses a field given in left-trivialized coordinates (a function
    /// of the group element) in the exponential chart centred at `g0`.
    pub fn chart_field<F>(self: &Arc<Self>, g0: DMatrix<f64>, left: F) -> Arc<Field>
    where
        F: Fn(&DMatrix<f64>) -> DMatrix<f64> + Send + Sync + 'static,
    {
        let ctx = self.clone();
        Arc::new(move |t: &DVector<f64>| {
            let m = ctx.chart_point(&g0, t);
            let w = left(&m);
            ctx.dexp_left(t)
                .lu()
                .solve(&w)
                .expect("dexp is invertible near the chart centre")
        })
    }

    pub fn to_json(&self) -> GroupContextJson {
        let mat = |m: &QMatrix| m.rows_vec().iter().map(|r| vec_to_strings(r)).collect();
        GroupContextJson {
            name: Some(self.name.clone()),
            ambient_size: self.ambient,
            basis: self.basis.iter().map(mat).collect(),
            algebra: self.algebra.to_json(),
            samples: self.samples.iter().map(mat).collect(),
        }
    }

    pub fn from_json(j: &GroupContextJson) -> Result<Self, LieError> {
        let n = j.ambient_size;
        let mat = |rows: &Vec<Vec<String>>| -> Result<QMatrix, LieError> {
            let rs = rows
                .iter()
                .map(|r| strings_to_vec(r))
                .collect::<Result<Vec<_>, _>>()?;
            if rs.len() != n {
                return Err(LieError::Json(format!("matrix with {} rows, expected {n}", rs.len())));
            }
            Ok(QMatrix::from_rows(n, &rs)?)
        };
        let basis = j.basis.iter().map(mat).collect::<Result<Vec<_>, _>>()?;
        let samples = j.samples.iter().map(mat).collect::<Result<Vec<_>, _>>()?;
        let algebra = QuadraticLieAlgebra::from_json(&j.algebra)?;
        Self::new(
            j.name.clone().unwrap_or_else(|| "custom".into()),
            n,
            basis,
            Arc::new(algebra),
            samples,
        )
    }
}

/// JSON form of a [`GroupContext`]; matrices are lists of rows of `"p/q"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupContextJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_size: usize,
    pub basis: Vec<Vec<Vec<String>>>,
    pub algebra: AlgebraJson,
    pub samples: Vec<Vec<Vec<String>>>,
}

fn vectorize(m: &QMatrix) -> Vec<Q> {
    m.rows_vec().concat()
}

fn vectorize_f64(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.transpose().iter().copied())
}

/// Scaling and squaring with a Taylor polynomial.
pub(crate) fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.iter().map(|x| x.abs()).sum::<f64>();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let b = a / 2f64.powi(s);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for m in 1..40 {
        term = &term * &b / m as f64;
        sum += &term;
        if term.amax() < 1e-17 {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

fn qm(rows: &[&[Q]]) -> QMatrix {
    let n = rows[0].len();
    QMatrix::from_rows(n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .expect("rectangular")
}

fn sl2_basis() -> Vec<QMatrix> {
    vec![
        QMatrix::from_i64(&[&[0, 1], &[0, 0]]),
        QMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        QMatrix::from_i64(&[&[0, 0], &[1, 0]]),
    ]
}

fn small_q<R: Rng>(rng: &mut R) -> Q {
    q(rng.gen_range(-2..=2), rng.gen_range(1..=3))
}

/// A product of upper and lower unipotents and a diagonal matrix.
pub(crate) fn random_sl2<R: Rng>(rng: &mut R) -> QMatrix {
    let (z, o) = (Q::zero(), Q::one());
    let u = qm(&[&[o.clone(), small_q(rng)], &[z.clone(), o.clone()]]);
    let l = qm(&[&[o.clone(), z.clone()], &[small_q(rng), o.clone()]]);
    let scales = [q(1, 2), q(2, 3), qi(1), q(3, 2), qi(2)];
    let s = scales[rng.gen_range(0..scales.len())].clone();
    let d = qm(&[&[s.clone(), z.clone()], &[z, s.recip()]]);
    mm(&mm(&u, &l), &d)
}

/// `SL₂` with the Killing form on `sl₂`.
pub fn sl2_context(samples: usize, seed: u64) -> GroupContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..samples).map(|_| random_sl2(&mut rng)).collect();
    GroupContext::new("SL2", 2, sl2_basis(), Arc::new(sl2()), pts).expect("valid context")
}

/// `D = SL₂ × SL₂` as block-diagonal `4×4` matrices, Lie algebra `sl₂ ⊕ sl₂̄`.
pub fn sl2_pair_context(samples: usize, seed: u64) -> GroupContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = QMatrix::zeros(2, 2);
    let mut basis: Vec<QMatrix> = sl2_basis().iter().map(|x| QMatrix::block_diag(&[x, &z])).collect();
    basis.extend(sl2_basis().iter().map(|x| QMatrix::block_diag(&[&z, x])));
    let pts = (0..samples)
        .map(|_| {
            let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
            QMatrix::block_diag(&[&a, &b])
        })
        .collect();
    GroupContext::new("SL2xSL2", 4, basis, Arc::new(build_double(&sl2())), pts)
        .expect("valid context")
}

fn translation(x: &Q, y: &Q) -> QMatrix {
    let mut m = QMatrix::identity(3);
    m[(0, 2)] = x.clone();
    m[(1, 2)] = y.clone();
    m
}

/// `R²` as unipotent `3×3` matrices, Lie algebra `Q²` with the split form.
pub fn abelian2_context(samples: usize, seed: u64) -> GroupContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (z, o) = (Q::zero(), Q::one());
    let basis = vec![translation(&o, &z), translation(&z, &o)]
        .into_iter()
        .map(|m| msub(&m, &QMatrix::identity(3)))
        .collect();
    let pts = (0..samples)
        .map(|_| translation(&small_q(&mut rng), &small_q(&mut rng)))
        .collect();
    GroupContext::new("R2", 3, basis, Arc::new(abelian_split2()), pts).expect("valid context")
}

/// `R` as `[[1,x],[0,1]]`.
pub(crate) fn line_context(samples: usize, seed: u64) -> GroupContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unip = |x: Q| qm(&[&[Q::one(), x], &[Q::zero(), Q::one()]]);
    let pts = (0..samples).map(|_| unip(small_q(&mut rng))).collect();
    let alg = abelian(BilinearForm::diagonal(&[qi(1)]));
    GroupContext::new("R", 2, vec![QMatrix::from_i64(&[&[0, 1], &[0, 0]])], Arc::new(alg), pts)
        .expect("valid context")
}

/// Built-in group of a named setting: `sl2-double` is `SL₂`,
/// `sl2-triangular-triple` is `SL₂ × SL₂`, `abelian-2` is `R²`.
pub fn builtin_context(name: &str, samples: usize, seed: u64) -> Result<GroupContext, LieError> {
    match name {
        "sl2-double" => Ok(sl2_context(samples, seed)),
        "sl2-triangular-triple" => Ok(sl2_pair_context(samples, seed)),
        "abelian-2" => Ok(abelian2_context(samples, seed)),
        other => Err(LieError::UnknownContext(other.into())),
    }
}
