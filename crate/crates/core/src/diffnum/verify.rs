use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactlin::{vec_to_f64, Subspace};
use crate::lagrel::LagrangianSplitting;
use crate::quadlie::{courant_tensor, QuadraticLieAlgebra};
use crate::report::{Check, Report};

use super::{push_trivector, schouten_fd, vf_bracket_fd, ChartBivectorField, DiffError};

type AnchorField = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResidual {
    pub point: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MainIdentityReport {
    pub h: f64,
    pub tol: f64,
    pub residuals: Vec<PointResidual>,
    pub max_residual: f64,
    pub passed: bool,
}

/// Checks `½[π,π] = a(Υ^E) + a(Υ^F)` at each point, with `π = a Π aᵀ`
/// for the anchor field `a` (chart coordinates to a `dim M × dim 𝔡` matrix).
pub fn verify_main_identity(
    algebra: &QuadraticLieAlgebra,
    e: &Subspace,
    f: &Subspace,
    anchor: Arc<AnchorField>,
    chart_dim: usize,
    points: &[DVector<f64>],
    h: f64,
    tol: f64,
) -> Result<MainIdentityReport, DiffError> {
    let form = algebra.form();
    let s = LagrangianSplitting::new(form, e, f).map_err(crate::anchored::AnchorError::from)?;
    let s_rev = s.swapped();
    let big_pi = s.bivector().to_f64();
    let ups_e = courant_tensor(algebra, e).map_err(crate::anchored::AnchorError::from)?;
    let ups_f = courant_tensor(algebra, f).map_err(crate::anchored::AnchorError::from)?;

    let a_field = anchor.clone();
    let field = ChartBivectorField::new(chart_dim, h, move |p| {
        let a = a_field(p);
        let m = &a * &big_pi * a.transpose();
        (&m - m.transpose()) * 0.5
    });

    let residuals = points
        .par_iter()
        .map(|p| {
            let lhs = schouten_fd(&field, p)?.scale(0.5);
            let a = anchor(p);
            let rhs = push_trivector(&a, &ups_e, s.f_dual())?
                .add(&push_trivector(&a, &ups_f, s_rev.f_dual())?);
            Ok(PointResidual {
                point: p.iter().copied().collect(),
                residual: lhs.sub(&rhs).max_abs(),
            })
        })
        .collect::<Result<Vec<_>, DiffError>>()?;
    let max_residual = residuals.iter().fold(0.0, |m: f64, r| m.max(r.residual));
    Ok(MainIdentityReport {
        h,
        tol,
        passed: max_residual <= tol,
        residuals,
        max_residual,
    })
}

/// Checks `[ρ(b_i), ρ(b_j)] = ρ([b_i, b_j])` for all basis pairs, where the
/// columns of `rho(p)` are the fields of the basis elements.
pub fn action_axiom_check<F>(
    rho: F,
    algebra: &QuadraticLieAlgebra,
    points: &[DVector<f64>],
    h: f64,
    tol: f64,
) -> Report
where
    F: Fn(&DVector<f64>) -> DMatrix<f64> + Sync,
{
    let n = algebra.dim();
    let mut rep = Report::new();
    for i in 0..n {
        for j in i + 1..n {
            let target = DVector::from_vec(vec_to_f64(&algebra.bracket_basis(i, j)));
            let worst = points
                .par_iter()
                .map(|p| {
                    let br = vf_bracket_fd(
                        |x| rho(x).column(i).into_owned(),
                        |x| rho(x).column(j).into_owned(),
                        p,
                        h,
                    );
                    (br - rho(p) * &target).amax()
                })
                .reduce(|| 0.0, f64::max);
            let names = algebra.names();
            rep.push(Check::residual(format!("[{},{}]", names[i], names[j]), worst, tol));
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relatedness {
    pub residual: f64,
    pub passed: bool,
}

/// `‖dΦ π dΦᵀ − π'‖_max ≤ tol`.
pub fn relatedness_check(
    dphi: &DMatrix<f64>,
    pi_source: &DMatrix<f64>,
    pi_target: &DMatrix<f64>,
    tol: f64,
) -> Result<Relatedness, DiffError> {
    if dphi.ncols() != pi_source.nrows() || dphi.nrows() != pi_target.nrows() {
        return Err(DiffError::Shape(format!(
            "dΦ is {:?}, π is {:?}, π' is {:?}",
            dphi.shape(),
            pi_source.shape(),
            pi_target.shape()
        )));
    }
    let residual = (dphi * pi_source * dphi.transpose() - pi_target).amax();
    Ok(Relatedness {
        residual,
        passed: residual <= tol,
    })
}

