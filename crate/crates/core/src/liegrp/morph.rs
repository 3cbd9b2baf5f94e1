use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::exactlin::{concat, unit_vec, QMatrix, Subspace, Q};
use crate::lagrel::{pair_groupoid_relation, LinearRelation, SplitSpace};
use crate::quadlie::{build_double, QuadraticLieAlgebra};
use crate::report::{Check, Report};

use super::{ambient_to_chart, exp_chart, mm, GroupContext, LieError, TripleContext};

/// Jacobian of `map` at the base points, in the exponential charts of the
/// factors (columns, concatenated) and of the target (rows). Central
/// differences with step `h`.
pub(crate) fn product_jacobian<F>(
    factors: &[(&GroupContext, &DMatrix<f64>)],
    target: (&GroupContext, &DMatrix<f64>),
    map: F,
    h: f64,
) -> Result<DMatrix<f64>, LieError>
where
    F: Fn(&[DMatrix<f64>]) -> DMatrix<f64>,
{
    let frame = exp_chart(target.0, target.1)?;
    let base: Vec<DMatrix<f64>> = factors.iter().map(|(_, g)| (*g).clone()).collect();
    let mut cols = Vec::new();
    for (i, (ctx, g)) in factors.iter().enumerate() {
        for a in 0..ctx.dim() {
            let step = DVector::from_fn(ctx.dim(), |b, _| if b == a { h } else { 0.0 });
            let mut plus = base.clone();
            plus[i] = ctx.chart_point(g, &step);
            let mut minus = base.clone();
            minus[i] = ctx.chart_point(g, &-&step);
            let y = (map(&plus) - map(&minus)) / (2.0 * h);
            cols.push(ambient_to_chart(&frame, &y));
        }
    }
    Ok(DMatrix::from_columns(&cols))
}

/// `[−Ad_{g⁻¹} | I]` in floating point.
pub(crate) fn left_anchor_f64(ctx: &GroupContext, g: &DMatrix<f64>) -> DMatrix<f64> {
    let k = ctx.dim();
    let ad_inv = ctx.ad_f64(&g.clone().try_inverse().expect("invertible"));
    let mut a = DMatrix::zeros(k, 2 * k);
    a.view_mut((0, 0), (k, k)).copy_from(&-ad_inv);
    a.view_mut((0, k), (k, k)).fill_with_identity();
    a
}

fn qcol(v: &[Q]) -> DVector<f64> {
    DVector::from_vec(crate::exactlin::vec_to_f64(v))
}

/// `z = z' ∘ z'' ⇒ dMult(a(z'), a(z'')) = a(z)` for the action of
/// `𝔤 ⊕ 𝔤̄` on `G`, over a basis of the pair-groupoid relation.
pub fn mult_morphism_check(
    ctx: &GroupContext,
    g1: &QMatrix,
    g2: &QMatrix,
    h: f64,
    tol: f64,
) -> Result<Report, LieError> {
    let (a1, a2) = (g1.to_f64(), g2.to_f64());
    let prod = &a1 * &a2;
    let jac = product_jacobian(&[(ctx, &a1), (ctx, &a2)], (ctx, &prod), |m| &m[0] * &m[1], h)?;
    let (x1, x2, x) = (
        left_anchor_f64(ctx, &a1),
        left_anchor_f64(ctx, &a2),
        left_anchor_f64(ctx, &prod),
    );
    let w = 2 * ctx.dim();
    let rel = pair_groupoid_relation(ctx.algebra());
    let mut worst: f64 = 0.0;
    for g in rel.graph().basis() {
        let (z, z1, z2) = (qcol(&g[..w]), qcol(&g[w..2 * w]), qcol(&g[2 * w..]));
        let lhs = &jac * concat_f64(&(&x1 * z1), &(&x2 * z2));
        worst = worst.max((lhs - &x * z).amax());
    }
    let mut rep = Report::new();
    rep.push(Check::residual("multiplication relates the actions", worst, tol));
    Ok(rep)
}

fn concat_f64(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(a.len() + b.len(), a.iter().chain(b.iter()).copied())
}

/// `S: (𝔡 ⊕ 𝔡̄) × 𝔡 ⇢ 𝔡`, `((z, z'), z') ∼ z`.
pub fn s_relation(alg: &QuadraticLieAlgebra) -> Result<LinearRelation, LieError> {
    let n = alg.dim();
    let target = SplitSpace::new(alg.form().clone())?;
    let source = SplitSpace::new(build_double(alg).form().clone())?.product(&target);
    let zero = vec![Q::zero(); n];
    let mut rows = Vec::new();
    for i in 0..n {
        let b = unit_vec(n, i);
        rows.push(concat(&[&b, &b, &zero, &zero]));
        rows.push(concat(&[&zero, &zero, &b, &b]));
    }
    Ok(LinearRelation::new(target, source, Subspace::span(4 * n, &rows)?)?)
}

/// Checks `dΨ(a_D(z, z'), a_M(z')) = a_M(z)` for the action map
/// `Ψ: D × M → M`, where `𝔡` (the Lie algebra of `D`) acts on `M` as the
/// double of the algebra of `M`.
pub fn action_morphism_check(
    group: &GroupContext,
    space: &GroupContext,
    d: &DMatrix<f64>,
    m: &DMatrix<f64>,
    act: fn(&DMatrix<f64>, &DMatrix<f64>) -> DMatrix<f64>,
    h: f64,
    tol: f64,
) -> Result<Report, LieError> {
    let alg = group.algebra();
    if *alg != build_double(space.algebra()) {
        return Err(LieError::Invalid("the group's algebra is not the double of the space's".into()));
    }
    let n = alg.dim();
    let target = act(d, m);
    let jac = product_jacobian(&[(group, d), (space, m)], (space, &target), |x| act(&x[0], &x[1]), h)?;
    let (a_d, a_m, a_t) = (
        left_anchor_f64(group, d),
        left_anchor_f64(space, m),
        left_anchor_f64(space, &target),
    );
    let mut worst: f64 = 0.0;
    for g in s_relation(alg)?.graph().basis() {
        let (z, zz, z1) = (qcol(&g[..n]), qcol(&g[n..3 * n]), qcol(&g[3 * n..]));
        let lhs = &jac * concat_f64(&(&a_d * zz), &(&a_m * z1));
        worst = worst.max((lhs - &a_t * z).amax());
    }
    let mut rep = Report::new();
    rep.push(Check::residual("action map relates the anchors", worst, tol));
    Ok(rep)
}

/// `T: 𝔡 ⊕ 𝔡̄ ⇢ 𝔡`, `(z, u) ∼ z` for `u ∈ 𝔥`.
pub fn quotient_relation(alg: &QuadraticLieAlgebra, h: &Subspace) -> Result<LinearRelation, LieError> {
    let n = alg.dim();
    let target = SplitSpace::new(alg.form().clone())?;
    let source = SplitSpace::new(build_double(alg).form().clone())?;
    let zero = vec![Q::zero(); n];
    let mut rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let b = unit_vec(n, i);
            concat(&[&b, &b, &zero])
        })
        .collect();
    rows.extend(h.basis().iter().map(|u| concat(&[&zero, &zero, u])));
    Ok(LinearRelation::new(target, source, Subspace::span(3 * n, &rows)?)?)
}

/// `P_Φ: 𝔡̄ ⇢ 𝔡 ⊕ 𝔡̄` over `g ∈ G₁`: `ζ ∼ φ(ξ, ζ)` for `ξ ∈ 𝔤₁`, with
/// `φ(ξ, ζ) = (p₂(Ad_{Φ(g)} ζ) − ξ, ζ − Ad_{Φ(g⁻¹)} ξ)`.
pub fn p_phi_fiber(tc: &TripleContext, g: &QMatrix) -> Result<LinearRelation, LieError> {
    let alg = tc.algebra();
    let n = alg.dim();
    let ad = tc.d.ad(&tc.phi(g))?;
    let ad_inv = ad.inverse().expect("Ad is invertible");
    let p2ad = mm(tc.p2(), &ad);
    let zero = vec![Q::zero(); n];
    let mut rows = Vec::new();
    for xi in tc.triple.g1.basis() {
        let neg = |v: Vec<Q>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        let back = neg(ad_inv.mul_vec(xi)?);
        rows.push(concat(&[&neg(xi.clone()), &back, &zero]));
    }
    for i in 0..n {
        let z = unit_vec(n, i);
        rows.push(concat(&[&p2ad.column(i), &z, &z]));
    }
    let target = SplitSpace::new(build_double(&alg).form().clone())?;
    let source = SplitSpace::new(alg.form().negated())?;
    Ok(LinearRelation::new(target, source, Subspace::span(3 * n, &rows)?)?)
}

/// `Q_Mult: 𝔡̄ × 𝔡̄ ⇢ 𝔡̄` over `(g', g'')`: `(ζ', ζ'') ∼ ζ` when
/// `ζ = ζ'' + Ad_{Φ(g''⁻¹)} p₁(ζ')` and `p₂(Ad_{Φ(g'')} ζ'') = p₂(ζ')`.
/// The fiber depends on `g''` only.
pub fn q_mult_fiber(tc: &TripleContext, g2: &QMatrix) -> Result<LinearRelation, LieError> {
    let alg = tc.algebra();
    let n = alg.dim();
    let ad = tc.d.ad(&tc.phi(g2))?;
    let ad_inv = ad.inverse().expect("Ad is invertible");
    let p2ad = mm(tc.p2(), &ad);
    let mut cons = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            cons[(i, j)] = tc.p2()[(i, j)].clone();
            cons[(i, n + j)] = -p2ad[(i, j)].clone();
        }
    }
    let back = mm(&ad_inv, tc.p1());
    let rows: Vec<Vec<Q>> = cons
        .nullspace()
        .into_iter()
        .map(|w| {
            let (z1, z2) = w.split_at(n);
            let z: Vec<Q> = back
                .mul_vec(z1)
                .expect("shape")
                .iter()
                .zip(z2)
                .map(|(a, b)| a + b)
                .collect();
            concat(&[&z, z1, z2])
        })
        .collect();
    let bar = SplitSpace::new(alg.form().negated())?;
    Ok(LinearRelation::new(bar.clone(), bar.product(&bar), Subspace::span(3 * n, &rows)?)?)
}
