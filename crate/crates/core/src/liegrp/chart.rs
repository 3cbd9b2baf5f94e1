use nalgebra::{DMatrix, DVector};

use super::{GroupContext, LieError};

/// The exponential chart `t ↦ g0 · exp(Σ t_a X_a)` at `t = 0`.
#[derive(Clone, Debug)]
pub struct ChartFrame {
    pub base_point: DMatrix<f64>,
    /// Columns are the row-major vectorizations of `g0 · X_a`.
    pub jacobian: DMatrix<f64>,
    pub pseudo_inverse: DMatrix<f64>,
}

pub fn exp_chart(ctx: &GroupContext, g0: &DMatrix<f64>) -> Result<ChartFrame, LieError> {
    let cols: Vec<DVector<f64>> = ctx
        .basis_f64()
        .iter()
        .map(|x| vectorize(&(g0 * x)))
        .collect();
    let jacobian = DMatrix::from_columns(&cols);
    let pseudo_inverse = jacobian
        .clone()
        .svd(true, true)
        .pseudo_inverse(1e-12)
        .map_err(|e| LieError::Chart(format!("rank-deficient frame: {e}")))?;
    let k = ctx.dim();
    let defect = (&pseudo_inverse * &jacobian - DMatrix::<f64>::identity(k, k)).amax();
    if defect > 1e-9 {
        return Err(LieError::Chart(format!("frame is ill-conditioned (defect {defect:e})")));
    }
    Ok(ChartFrame {
        base_point: g0.clone(),
        jacobian,
        pseudo_inverse,
    })
}

/// Chart coordinates of a tangent matrix at the frame's base point.
pub fn ambient_to_chart(frame: &ChartFrame, tangent: &DMatrix<f64>) -> DVector<f64> {
    &frame.pseudo_inverse * vectorize(tangent)
}

fn vectorize(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.transpose().iter().copied())
}
