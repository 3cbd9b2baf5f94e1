use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::anchored::AnchoredPoint;
use crate::exactlin::{qi, QMatrix, Subspace};
use crate::lagrel::{Bivector, LagrangianSplitting};
use crate::quadlie::catalog::pair;
use crate::quadlie::{build_double, ManinTriple};

use super::{GroupContext, LieError, TripleContext};

type Field = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;

/// `[−Ad_{g⁻¹} | I]`: the action `a(u,v) = vᴸ − uᴿ` of `𝔤 ⊕ 𝔤̄` on `G` in
/// left-trivialized coordinates.
fn left_anchor(ad_inv: &QMatrix) -> QMatrix {
    let k = ad_inv.nrows();
    let mut a = QMatrix::zeros(k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            a[(i, j)] = -ad_inv[(i, j)].clone();
        }
        a[(i, k + i)] = qi(1);
    }
    a
}

/// The action of `𝔤 ⊕ 𝔤̄` on `G` at a rational point, in the exponential
/// chart at `g`. The stabilizer is checked to be the Lagrangian
/// `{(Ad_g v, v)}`.
pub fn double_action_anchor(ctx: &GroupContext, g: &QMatrix) -> Result<AnchoredPoint, LieError> {
    let ad = ctx.ad(g)?;
    let ad_inv = ad.inverse().expect("Ad is invertible");
    let algebra = Arc::new(build_double(ctx.algebra()));
    let pt = AnchoredPoint::exact(algebra, left_anchor(&ad_inv))?;
    let k = ctx.dim();
    let expected: Vec<_> = (0..k)
        .map(|j| {
            let v = crate::exactlin::unit_vec(k, j);
            pair(&ad.mul_vec(&v).expect("shape"), &v)
        })
        .collect();
    let expected = Subspace::span(2 * k, &expected)?;
    let stab = pt.stabilizer()?;
    if stab != expected {
        return Err(LieError::Invalid("stabilizer differs from {(Ad_g v, v)}".into()));
    }
    if !stab.is_lagrangian(pt.form())? {
        return Err(LieError::Invalid("stabilizer is not Lagrangian".into()));
    }
    Ok(pt)
}

/// The same anchor as a field on the exponential chart centred at `g0`.
pub fn double_action_field(ctx: &Arc<GroupContext>, g0: &DMatrix<f64>) -> Arc<Field> {
    let c = ctx.clone();
    ctx.chart_field(g0.clone(), move |m| {
        let k = c.dim();
        let ad_inv = c.ad_f64(&m.clone().try_inverse().expect("invertible"));
        let mut a = DMatrix::zeros(k, 2 * k);
        a.view_mut((0, 0), (k, k)).copy_from(&-ad_inv);
        a.view_mut((0, k), (k, k)).fill_with_identity();
        a
    })
}

/// The action of `𝔡 ⊕ 𝔡̄` on `D` for a triple context.
pub fn double_of_double_anchor(tc: &TripleContext, d: &QMatrix) -> Result<AnchoredPoint, LieError> {
    double_action_anchor(&tc.d, d)
}

/// `𝔢₊ = 𝔤₁ ⊕ 𝔤₂`, `𝔣₊ = 𝔤₂ ⊕ 𝔤₁`, `𝔢₋ = 𝔤₁ ⊕ 𝔤₁`, `𝔣₋ = 𝔤₂ ⊕ 𝔤₂` in
/// `𝔡 ⊕ 𝔡̄`.
#[derive(Clone, Debug)]
pub struct DoubleSplittings {
    pub e_plus: Subspace,
    pub f_plus: Subspace,
    pub e_minus: Subspace,
    pub f_minus: Subspace,
}

pub fn double_splittings(t: &ManinTriple) -> DoubleSplittings {
    DoubleSplittings {
        e_plus: t.g1.product(&t.g2),
        f_plus: t.g2.product(&t.g1),
        e_minus: t.g1.product(&t.g1),
        f_minus: t.g2.product(&t.g2),
    }
}

/// `π±` at a point of `D`, from the splittings and from `𝔯ᴿ ± 𝔯ᴸ`.
#[derive(Clone, Debug, Serialize)]
pub struct PiPlusMinus {
    #[serde(skip)]
    pub plus: Bivector,
    #[serde(skip)]
    pub minus: Bivector,
    #[serde(skip)]
    pub r_plus: Bivector,
    #[serde(skip)]
    pub r_minus: Bivector,
    pub residual: f64,
}

impl PiPlusMinus {
    pub fn agree(&self) -> bool {
        self.plus == self.r_plus && self.minus == self.r_minus
    }
}

pub fn pi_plus_minus(tc: &TripleContext, d: &QMatrix) -> Result<PiPlusMinus, LieError> {
    let pt = double_of_double_anchor(tc, d)?;
    let s = double_splittings(&tc.triple);
    let plus = pt.bivector_at(&s.e_plus, &s.f_plus)?;
    let minus = pt.bivector_at(&s.e_minus, &s.f_minus)?;
    let r = LagrangianSplitting::new(tc.triple.d.form(), &tc.triple.g1, &tc.triple.g2)?.bivector();
    let ad_inv = tc.d.ad(d)?.inverse().expect("Ad is invertible");
    let r_right = r.push(&ad_inv)?;
    let r_plus = r_right.add(&r);
    let r_minus = r_right.add(&r.negated());
    let residual = (plus.to_f64() - r_plus.to_f64())
        .amax()
        .max((minus.to_f64() - r_minus.to_f64()).amax());
    Ok(PiPlusMinus {
        plus,
        minus,
        r_plus,
        r_minus,
        residual,
    })
}
