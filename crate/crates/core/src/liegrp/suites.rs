//! End-to-end checks over the sample points of a context.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rayon::prelude::*;

use crate::anchored::{courant_bracket_jets, pullback_point, Anchor, AnchoredPoint, SectionJet};
use crate::diffnum::{action_axiom_check, verify_main_identity, MainIdentityReport, PointResidual};
use crate::exactlin::{vec_to_f64, BilinearForm, QMatrix, Subspace, Q};
use crate::lagrel::{pair_groupoid_relation, related_splitting, LinearRelation, Relatedness};
use crate::quadlie::build_double;
use crate::report::{Check, Report};

use super::morph::product_jacobian;
use super::{
    action_morphism_check, double_action_anchor, double_action_field, double_splittings,
    mm, mult_morphism_check, p_phi_fiber, pi_plus_minus, q_mult_fiber, quotient_relation,
    s_relation, GroupContext, LieError, TripleContext,
};

fn relatedness(name: impl Into<String>, r: &Relatedness) -> Check {
    Check::flag(name, r.related(), format!("{:?}", r.reasons))
}

fn worst(name: impl Into<String>, residuals: impl IntoIterator<Item = f64>, tol: f64) -> Check {
    let r = residuals.into_iter().fold(0.0, f64::max);
    Check::residual(name, r, tol)
}

fn all_flags(name: impl Into<String>, flags: &[(bool, String)]) -> Check {
    let bad: Vec<&str> = flags.iter().filter(|f| !f.0).map(|f| f.1.as_str()).collect();
    Check::flag(name, bad.is_empty(), bad.join("; "))
}

fn samples(ctx: &GroupContext, count: usize) -> Vec<QMatrix> {
    ctx.samples().iter().take(count).cloned().collect()
}

/// `½[π,π] = a(Υᴱ) + a(Υᶠ)` for the action of `𝔤 ⊕ 𝔤̄` on `G`, one
/// exponential chart per sample, evaluated at its centre.
pub fn main_identity_suite(
    ctx: &Arc<GroupContext>,
    e: &Subspace,
    f: &Subspace,
    count: usize,
    h: f64,
    tol: f64,
) -> Result<MainIdentityReport, LieError> {
    let alg = build_double(ctx.algebra());
    let k = ctx.dim();
    let residuals = samples(ctx, count)
        .par_iter()
        .map(|g| {
            let g = g.to_f64();
            let field = double_action_field(ctx, &g);
            let rep = verify_main_identity(&alg, e, f, field, k, &[DVector::zeros(k)], h, tol)?;
            Ok(PointResidual {
                point: g.transpose().iter().copied().collect(),
                residual: rep.max_residual,
            })
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    let max_residual = residuals.iter().fold(0.0, |m: f64, r| m.max(r.residual));
    Ok(MainIdentityReport {
        h,
        tol,
        passed: max_residual <= tol,
        residuals,
        max_residual,
    })
}

/// The doubles `π±` on `D`, the group-multiplication relations among them,
/// the morphism `P_Φ` and the bivector map `Φ: G₁ → D`. The triple is
/// validated first; on failure nothing numeric runs.
pub fn poisson_lie_suite(tc: &TripleContext, count: usize, h: f64, tol: f64) -> Result<Report, LieError> {
    let mut rep = tc.validate();
    if !rep.passed() {
        rep.push(Check::fail("Manin triple", "validation failed; later phases skipped"));
        return Ok(rep);
    }
    let t = &tc.triple;
    let s = double_splittings(t);
    let x = |a: &Subspace, b: &Subspace| a.product(b);

    // algebraic tables
    let r = pair_groupoid_relation(&t.d);
    let lines = [
        ("(𝔢₋,𝔣₋)×(𝔢₋,𝔣₋) ∼ (𝔢₋,𝔣₋)", (&s.e_minus, &s.f_minus), (&s.e_minus, &s.f_minus), (&s.e_minus, &s.f_minus)),
        ("(𝔢₊,𝔣₊)×(𝔣₊,𝔢₊) ∼ (𝔢₋,𝔣₋)", (&s.e_plus, &s.f_plus), (&s.f_plus, &s.e_plus), (&s.e_minus, &s.f_minus)),
        ("(𝔢₊,𝔣₊)×(𝔣₋,𝔢₋) ∼ (𝔢₊,𝔣₊)", (&s.e_plus, &s.f_plus), (&s.f_minus, &s.e_minus), (&s.e_plus, &s.f_plus)),
        ("(𝔢₋,𝔣₋)×(𝔢₊,𝔣₊) ∼ (𝔢₊,𝔣₊)", (&s.e_minus, &s.f_minus), (&s.e_plus, &s.f_plus), (&s.e_plus, &s.f_plus)),
    ];
    for (name, a, b, c) in lines {
        let rel = related_splitting((&x(a.0, b.0), &x(a.1, b.1)), c, &r)?;
        rep.push(relatedness(format!("R_Mult: {name}"), &rel));
    }

    // multiplicativity of π± under dMult
    let ds = samples(&tc.d, count);
    let pairs: Vec<(QMatrix, QMatrix)> = (0..ds.len())
        .map(|i| (ds[i].clone(), ds[(i + 1) % ds.len()].clone()))
        .collect();
    let mult: Vec<[f64; 5]> = pairs
        .par_iter()
        .map(|(d1, d2)| {
            let prod = mm(d1, d2);
            let (p1, p2, p) = (pi_plus_minus(tc, d1)?, pi_plus_minus(tc, d2)?, pi_plus_minus(tc, &prod)?);
            let (a1, a2) = (d1.to_f64(), d2.to_f64());
            let jac = product_jacobian(
                &[(&tc.d, &a1), (&tc.d, &a2)],
                (&tc.d, &prod.to_f64()),
                |m| &m[0] * &m[1],
                h,
            )?;
            let (pl1, mi1) = (p1.plus.to_f64(), p1.minus.to_f64());
            let (pl2, mi2) = (p2.plus.to_f64(), p2.minus.to_f64());
            let (pl, mi) = (p.plus.to_f64(), p.minus.to_f64());
            let res = |a: &DMatrix<f64>, b: DMatrix<f64>, c: &DMatrix<f64>| {
                let n = a.nrows();
                let mut blk = DMatrix::zeros(2 * n, 2 * n);
                blk.view_mut((0, 0), (n, n)).copy_from(a);
                blk.view_mut((n, n), (n, n)).copy_from(&b);
                (&jac * blk * jac.transpose() - c).amax()
            };
            let anchors = mult_morphism_check(&tc.d, d1, d2, h, tol)?;
            Ok([
                res(&mi1, mi2.clone(), &mi),
                res(&pl1, -pl2.clone(), &mi),
                res(&pl1, -mi2, &pl),
                res(&mi1, pl2, &pl),
                anchors.checks[0].residual.unwrap_or(f64::INFINITY),
            ])
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    let names = ["π₋ × π₋ ∼ π₋", "π₊ × (−π₊) ∼ π₋", "π₊ × (−π₋) ∼ π₊", "π₋ × π₊ ∼ π₊"];
    for (i, name) in names.iter().enumerate() {
        rep.push(worst(format!("dMult: {name}"), mult.iter().map(|m| m[i]), tol));
    }
    rep.push(worst("dMult relates the actions on D", mult.iter().map(|m| m[4]), tol));

    // P_Φ and the bivector map G₁ → D
    let bar = t.d.with_form(t.d.form().negated())?;
    let bar = Arc::new(bar);
    let fibers: Vec<[(bool, String); 4]> = samples(&tc.g1, count)
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let p = p_phi_fiber(tc, g)?;
            let rel = related_splitting((&t.g1, &t.g2), (&s.e_minus, &s.f_minus), &p)?;
            let rho = AnchoredPoint::new_unchecked(bar.clone(), Anchor::Exact(tc.dressing_right(g)?))?;
            let pi = rho.bivector_at(&t.g1, &t.g2)?;
            let pi_d = pi_plus_minus(tc, &tc.phi(g))?.minus;
            let tag = |what: &str| format!("sample {i}: {what}");
            Ok([
                (p.backward_set(&s.e_minus)? == t.g1, tag("backward set of 𝔢₋")),
                (p.backward_set(&s.f_minus)? == t.g2, tag("backward set of 𝔣₋")),
                (rel.related(), tag(&format!("{:?}", rel.reasons))),
                (pi.push(&tc.inclusion)? == pi_d, tag("π_G₁ pushed by dΦ")),
            ])
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    let col = |j: usize| fibers.iter().map(|f| f[j].clone()).collect::<Vec<_>>();
    rep.push(all_flags("P_Φ: backward image of 𝔢₋ is 𝔤₁", &col(0)));
    rep.push(all_flags("P_Φ: backward image of 𝔣₋ is 𝔤₂", &col(1)));
    rep.push(all_flags("P_Φ: (𝔤₁,𝔤₂) ∼ (𝔢₋,𝔣₋)", &col(2)));
    rep.push(all_flags("Φ: G₁ → D relates π to π₋", &col(3)));
    Ok(rep)
}

/// Stabilizers of both dressing actions, their bracket relations, the
/// pull-back of the `D` action along `Φ` through `φᴿ`, and `φᴿ` as a
/// bracket homomorphism.
pub fn dressing_suite(tc: &TripleContext, count: usize, h: f64, tol: f64) -> Result<Report, LieError> {
    let alg = tc.algebra();
    let n = alg.dim();
    let k = tc.g1.dim();
    let dd = tc.d.dim();
    let per: Vec<(Vec<(bool, String)>, [f64; 3])> = samples(&tc.g1, count)
        .par_iter()
        .enumerate()
        .map(|(idx, g)| {
            let tag = |what: &str| format!("sample {idx}: {what}");
            let mut flags = Vec::new();
            let (right, left) = tc.dressing_anchor(g)?;
            flags.push((right.check_coisotropic_stabilizer()?.coisotropic, tag("right stabilizer")));
            flags.push((left.check_coisotropic_stabilizer()?.coisotropic, tag("left stabilizer")));

            let g0 = g.to_f64();
            let origin = [DVector::zeros(k)];
            let axiom = |right: bool| {
                let field = tc.dressing_field(&g0, right);
                let r = action_axiom_check(|p| field(p), &alg, &origin, h, tol);
                r.checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
            };
            let (ax_r, ax_l) = (axiom(true), axiom(false));

            // pull-back along Φ at g
            let d = tc.phi(g);
            let pt = double_action_anchor(&tc.d, &d)?;
            let pb = pullback_point(&pt, &tc.inclusion)?;
            let phi_r = tc.phi_r(&d)?;
            let rho = tc.dressing_right(g)?;
            let zero = vec![Q::zero(); k];
            let ws: Vec<Vec<Q>> = (0..n)
                .map(|i| crate::exactlin::concat(&[&phi_r.column(i), &rho.column(i), &zero]))
                .collect();
            let in_c = ws.iter().all(|w| pb.quotient.numerator().contains(w).unwrap_or(false));
            flags.push((in_c, tag("φᴿ(ζ) ⊕ ρᴿ(ζ) lies in the pull-back coisotropic")));
            if in_c {
                let cols = ws
                    .iter()
                    .map(|w| pb.quotient.coords(w))
                    .collect::<Result<Vec<_>, _>>()?;
                let m = QMatrix::from_columns(pb.quotient.dim(), &cols)?;
                flags.push((m.is_square() && m.inverse().is_some(), tag("φᴿ spans the reduction")));
                let ambient = pt.form().direct_sum(&BilinearForm::standard_split(k));
                let gram = ambient.gram(&ws, &ws);
                flags.push((gram == alg.form().negated().matrix().clone(), tag("φᴿ is an anti-isometry")));
                flags.push((mm(&pb.anchor, &m) == rho, tag("reduced anchor is the dressing action")));
            }

            // φᴿ homomorphism via jets at Φ(g)
            let d0 = d.to_f64();
            let jac = |zeta: &DVector<f64>| {
                let cols: Vec<DVector<f64>> = (0..dd)
                    .map(|a| {
                        let step = DVector::from_fn(dd, |b, _| if b == a { h } else { 0.0 });
                        let plus = tc.phi_r_f64(&tc.d.chart_point(&d0, &step)) * zeta;
                        let minus = tc.phi_r_f64(&tc.d.chart_point(&d0, &-&step)) * zeta;
                        (plus - minus) / (2.0 * h)
                    })
                    .collect();
                DMatrix::from_columns(&cols)
            };
            let phi0 = tc.phi_r_f64(&d0);
            let mut hom: f64 = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    let (zi, zj) = (basis_f64(n, i), basis_f64(n, j));
                    let x = SectionJet { value: &phi0 * &zi, jacobian: jac(&zi) };
                    let y = SectionJet { value: &phi0 * &zj, jacobian: jac(&zj) };
                    let br = courant_bracket_jets(&pt, &x, &y)?;
                    let target = &phi0 * DVector::from_vec(vec_to_f64(&alg.bracket_basis(i, j)));
                    hom = hom.max((br - target).amax());
                }
            }
            Ok((flags, [ax_r, ax_l, hom]))
        })
        .collect::<Result<Vec<_>, LieError>>()?;

    let mut rep = Report::new();
    let flags: Vec<(bool, String)> = per.iter().flat_map(|p| p.0.clone()).collect();
    let pick = |s: &str| flags.iter().filter(|f| f.1.ends_with(s)).cloned().collect::<Vec<_>>();
    rep.push(all_flags("dressing stabilizers are coisotropic", &[pick("right stabilizer"), pick("left stabilizer")].concat()));
    rep.push(worst("right dressing is a Lie algebra action", per.iter().map(|p| p.1[0]), tol));
    rep.push(worst("left dressing is a Lie algebra action", per.iter().map(|p| p.1[1]), tol));
    let pull: Vec<(bool, String)> = flags
        .iter()
        .filter(|f| !f.1.ends_with("stabilizer"))
        .cloned()
        .collect();
    rep.push(all_flags("pull-back along Φ is the dressing action through φᴿ", &pull));
    rep.push(worst("φᴿ preserves brackets", per.iter().map(|p| p.1[2]), tol));
    Ok(rep)
}

fn basis_f64(n: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(n, |j, _| if i == j { 1.0 } else { 0.0 })
}

/// `Q_Mult`: kernel, range, images of `E × E` and `F × F`, and the square
/// `R_Mult ∘ (P_Φ × P_Φ) = P_Φ ∘ Q_Mult`.
pub fn q_mult_suite(tc: &TripleContext, count: usize) -> Result<Report, LieError> {
    let t = &tc.triple;
    let n = t.d.dim();
    let r = pair_groupoid_relation(&t.d);
    let mut pts = vec![tc.g1.identity()];
    pts.extend(samples(&tc.g1, count));
    let per: Vec<[(bool, String); 5]> = pts
        .par_iter()
        .enumerate()
        .map(|(i, g2)| {
            let tag = |what: &str| format!("point {i}: {what}");
            let q = q_mult_fiber(tc, g2)?;
            let ad_inv = tc.d.ad(&tc.phi(g2))?.inverse().expect("Ad is invertible");
            let kernel: Vec<Vec<Q>> = t
                .g1
                .basis()
                .iter()
                .map(|xi| {
                    let back: Vec<Q> = ad_inv.mul_vec(xi).expect("shape").into_iter().map(|x| -x).collect();
                    crate::exactlin::concat(&[xi, &back])
                })
                .collect();
            let kernel = Subspace::span(2 * n, &kernel)?;
            let rel = related_splitting((&t.g1.product(&t.g1), &t.g2.product(&t.g2)), (&t.g1, &t.g2), &q)?;
            let g1 = &pts[(i + 1) % pts.len()];
            let lhs = r.compose(&LinearRelation::product(&p_phi_fiber(tc, g1)?, &p_phi_fiber(tc, g2)?))?;
            let rhs = p_phi_fiber(tc, &mm(g1, g2))?.compose(&q)?;
            Ok([
                (q.kernel() == kernel, tag("kernel")),
                (q.range().is_full(), tag("range")),
                (
                    q.forward_set(&t.g1.product(&t.g1))? == t.g1
                        && q.forward_set(&t.g2.product(&t.g2))? == t.g2,
                    tag("forward images"),
                ),
                (rel.related(), tag(&format!("{:?}", rel.reasons))),
                (lhs == rhs, tag("square")),
            ])
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    let col = |j: usize| per.iter().map(|f| f[j].clone()).collect::<Vec<_>>();
    let mut rep = Report::new();
    rep.push(all_flags("Q_Mult: kernel is {(ξ, −Ad_{Φ(g''⁻¹)} ξ) : ξ ∈ 𝔤₁}", &col(0)));
    rep.push(all_flags("Q_Mult: range is everything", &col(1)));
    rep.push(all_flags("Q_Mult: forward images of E×E and F×F are E and F", &col(2)));
    rep.push(all_flags("Q_Mult: (E×E, F×F) ∼ (E, F)", &col(3)));
    rep.push(all_flags("R_Mult ∘ (P_Φ × P_Φ) = P_Φ ∘ Q_Mult", &col(4)));
    Ok(rep)
}

/// `T: 𝔡 ⊕ 𝔡̄ ⇢ 𝔡` for a Lagrangian subalgebra `𝔥 ⊂ 𝔡`: when
/// `𝔥 = (𝔥 ∩ 𝔤₁) ⊕ (𝔥 ∩ 𝔤₂)`, both `(𝔢±, 𝔣±)` are related to `(𝔤₁, 𝔤₂)`.
pub fn quotient_suite(tc: &TripleContext, h_sub: &Subspace) -> Result<Report, LieError> {
    let t = &tc.triple;
    let mut rep = Report::new();
    let lag = t.d.is_lagrangian(h_sub)? && t.d.is_subalgebra(h_sub)?;
    rep.push(Check::flag("𝔥 is a Lagrangian subalgebra", lag, "not Lagrangian or not closed"));
    let split = h_sub.intersect(&t.g1)?.dim() + h_sub.intersect(&t.g2)?.dim() == h_sub.dim();
    rep.push(Check::flag("𝔥 = (𝔥∩𝔤₁) ⊕ (𝔥∩𝔤₂)", split, "𝔥 does not split"));
    let tr = quotient_relation(&t.d, h_sub)?;
    let s = double_splittings(t);
    rep.push(relatedness(
        "T: (𝔢₊,𝔣₊) ∼ (𝔤₁,𝔤₂)",
        &related_splitting((&s.e_plus, &s.f_plus), (&t.g1, &t.g2), &tr)?,
    ));
    rep.push(relatedness(
        "T: (𝔢₋,𝔣₋) ∼ (𝔤₁,𝔤₂)",
        &related_splitting((&s.e_minus, &s.f_minus), (&t.g1, &t.g2), &tr)?,
    ));
    Ok(rep)
}

/// `(a, b) · g = a g b⁻¹` for block-diagonal `(a, b)`.
pub fn pair_action(d: &DMatrix<f64>, m: &DMatrix<f64>) -> DMatrix<f64> {
    let k = m.nrows();
    let a = d.view((0, 0), (k, k));
    let b = d.view((k, k), (k, k)).into_owned();
    a * m * b.try_inverse().expect("invertible")
}

/// `S` is Lagrangian and the action map `D × G → G` relates the anchors.
pub fn action_suite(
    group: &GroupContext,
    space: &GroupContext,
    count: usize,
    h: f64,
    tol: f64,
) -> Result<Report, LieError> {
    let mut rep = Report::new();
    rep.push(Check::flag(
        "S is a Lagrangian relation",
        s_relation(group.algebra()).is_ok(),
        "graph is not Lagrangian",
    ));
    let ds = samples(group, count);
    let ms = samples(space, count);
    let res = ds
        .par_iter()
        .zip(ms.par_iter())
        .map(|(d, m)| {
            let r = action_morphism_check(group, space, &d.to_f64(), &m.to_f64(), pair_action, h, tol)?;
            Ok(r.checks[0].residual.unwrap_or(f64::INFINITY))
        })
        .collect::<Result<Vec<_>, LieError>>()?;
    rep.push(worst("D × G → G relates the anchors", res, tol));
    Ok(rep)
}
