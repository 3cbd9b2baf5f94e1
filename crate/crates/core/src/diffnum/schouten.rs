use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{DiffError, Trivector};

type Sampler = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;

/// A bivector field given pointwise in a chart, with the step used to
/// differentiate it.
#[derive(Clone)]
pub struct ChartBivectorField {
    pub chart_dim: usize,
    pub sampler: Arc<Sampler>,
    pub h: f64,
}

impl ChartBivectorField {
    pub fn new(
        chart_dim: usize,
        h: f64,
        sampler: impl Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            chart_dim,
            sampler: Arc::new(sampler),
            h,
        }
    }

    fn sample(&self, p: &DVector<f64>) -> Result<DMatrix<f64>, DiffError> {
        let m = (self.sampler)(p);
        if m.shape() != (self.chart_dim, self.chart_dim) {
            return Err(DiffError::Shape(format!("bivector sample is {:?}", m.shape())));
        }
        let defect = (&m + m.transpose()).amax();
        if defect > 1e-12 {
            return Err(DiffError::NotAntisymmetric(defect));
        }
        Ok(m)
    }
}

fn shifted(p: &DVector<f64>, l: usize, s: f64) -> DVector<f64> {
    let mut q = p.clone();
    q[l] += s;
    q
}

/// `[π,π]^{ijk} = 2 Σ_l (π^{il} ∂_l π^{jk} + π^{jl} ∂_l π^{ki} + π^{kl} ∂_l π^{ij})`
/// with central differences. With this convention `½[π,π]` is the Courant
/// tensor of `Gr_π = {(ι_μπ, μ)}` and `ι_μπ = πᵀμ`.
pub fn schouten_fd(field: &ChartBivectorField, point: &DVector<f64>) -> Result<Trivector, DiffError> {
    let n = field.chart_dim;
    if point.len() != n {
        return Err(DiffError::Shape(format!("point has length {}", point.len())));
    }
    let pi = field.sample(point)?;
    let h = field.h;
    let dpi = (0..n)
        .map(|l| {
            let plus = field.sample(&shifted(point, l, h))?;
            let minus = field.sample(&shifted(point, l, -h))?;
            Ok((plus - minus) / (2.0 * h))
        })
        .collect::<Result<Vec<_>, DiffError>>()?;
    let term = |i: usize, j: usize, k: usize| -> f64 {
        (0..n).map(|l| pi[(i, l)] * dpi[l][(j, k)]).sum()
    };
    Ok(Trivector::from_fn(n, |i, j, k| {
        2.0 * (term(i, j, k) + term(j, k, i) + term(k, i, j))
    }))
}

/// `[v, w]^i = Σ_l (v^l ∂_l w^i − w^l ∂_l v^i)` with central differences.
pub fn vf_bracket_fd<V, W>(v: V, w: W, point: &DVector<f64>, h: f64) -> DVector<f64>
where
    V: Fn(&DVector<f64>) -> DVector<f64>,
    W: Fn(&DVector<f64>) -> DVector<f64>,
{
    let n = point.len();
    let v0 = v(point);
    let w0 = w(point);
    let mut out = DVector::zeros(n);
    for l in 0..n {
        let (pp, pm) = (shifted(point, l, h), shifted(point, l, -h));
        let dw = (w(&pp) - w(&pm)) / (2.0 * h);
        let dv = (v(&pp) - v(&pm)) / (2.0 * h);
        out += dw * v0[l] - dv * w0[l];
    }
    out
}
