use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::suites::{action_suite, dressing_suite, main_identity_suite, q_mult_suite, quotient_suite};
use super::*;
use crate::exactlin::{qi, qvec, QMatrix, Subspace};
use crate::lagrel::LagrangianSplitting;
use crate::quadlie::catalog::{antidiagonal, diagonal, sl2_triangular_complement};
use crate::quadlie::catalog::pair;

fn sl2() -> Arc<GroupContext> {
    Arc::new(sl2_context(10, 3))
}

fn triangular() -> TripleContext {
    builtin_triple("sl2-triangular-triple", 10, 5).unwrap()
}

#[test]
fn shipped_contexts_validate() {
    for name in ["sl2-double", "sl2-triangular-triple", "abelian-2"] {
        let ctx = builtin_context(name, 6, 1).unwrap();
        let rep = ctx.validate();
        assert!(rep.passed(), "{name}: {:?}", rep.failures().collect::<Vec<_>>());
        let back = GroupContext::from_json(&ctx.to_json()).unwrap();
        assert_eq!(back.samples(), ctx.samples());
        assert_eq!(back.algebra(), ctx.algebra());
        let t = builtin_triple(name, 6, 1);
        if name != "sl2-double" {
            assert!(t.unwrap().validate().passed());
        }
    }
    assert!(matches!(builtin_context("so3", 1, 1), Err(LieError::UnknownContext(_))));
}

#[test]
fn wrong_structure_constants_are_caught() {
    let good = sl2_context(2, 1);
    let mut basis = good.basis().to_vec();
    basis.swap(0, 2);
    let bad = GroupContext::new("bad", 2, basis, good.algebra_arc().clone(), vec![]).unwrap();
    assert!(!bad.validate().passed());
    let off = GroupContext::new("off", 2, good.basis().to_vec(), good.algebra_arc().clone(), vec![QMatrix::from_i64(&[&[2, 0], &[0, 1]])])
        .unwrap();
    assert!(!off.validate().passed());
}

#[test]
fn exponential_chart() {
    let ctx = sl2();
    let id = DMatrix::identity(2, 2);
    let frame = exp_chart(&ctx, &id).unwrap();
    for (a, x) in ctx.basis_f64().iter().enumerate() {
        let col = DVector::from_iterator(4, x.transpose().iter().copied());
        assert_eq!(frame.jacobian.column(a), col);
    }
    // 2e − h + 3f as a tangent matrix at the identity
    let y = DMatrix::from_row_slice(2, 2, &[-1.0, 2.0, 3.0, 1.0]);
    let c = ambient_to_chart(&frame, &y);
    assert!((c - DVector::from_vec(vec![2.0, -1.0, 3.0])).amax() < 1e-12);
    assert_eq!(ctx.chart_point(&id, &DVector::zeros(3)), id);

    // ∂m/∂t_a = g0 X_a at t = 0, and dexp against finite differences away from 0
    let g0 = ctx.samples()[0].to_f64();
    let frame = exp_chart(&ctx, &g0).unwrap();
    let t = DVector::from_vec(vec![0.3, -0.2, 0.1]);
    let m = ctx.chart_point(&g0, &t);
    let j = ctx.dexp_left(&t);
    let eps = 1e-6;
    for a in 0..3 {
        let mut tp = t.clone();
        tp[a] += eps;
        let mut tm = t.clone();
        tm[a] -= eps;
        let dm = (ctx.chart_point(&g0, &tp) - ctx.chart_point(&g0, &tm)) / (2.0 * eps);
        let left = ctx.coords_f64(&(m.clone().try_inverse().unwrap() * dm));
        assert!((left - j.column(a)).amax() < 1e-8);
        let mut s = DVector::zeros(3);
        s[a] = eps;
        let d0 = (ctx.chart_point(&g0, &s) - ctx.chart_point(&g0, &-&s)) / (2.0 * eps);
        assert!((ambient_to_chart(&frame, &d0) - DVector::from_fn(3, |b, _| (a == b) as u8 as f64)).amax() < 1e-8);
    }
    // exp agrees with a closed form: exp(θ(e − f)) is a rotation
    let r = ctx.exp(&DVector::from_vec(vec![0.7, 0.0, -0.7]));
    let (c, s) = (0.7f64.cos(), 0.7f64.sin());
    assert!((r - DMatrix::from_row_slice(2, 2, &[c, s, -s, c])).amax() < 1e-13);
}

#[test]
fn double_action_at_identity_and_unipotent() {
    let ctx = sl2();
    let pt = double_action_anchor(&ctx, &ctx.identity()).unwrap();
    assert_eq!(pt.stabilizer().unwrap(), diagonal(3));
    let a = pt.anchor_exact().unwrap();
    for i in 0..3 {
        for j in 0..6 {
            let expected = if j == i + 3 { 1 } else if j == i { -1 } else { 0 };
            assert_eq!(a[(i, j)], qi(expected));
        }
    }
    assert!(pt.bivector_at(&diagonal(3), &antidiagonal(3)).unwrap().is_zero());

    // g = [[1,1],[0,1]]: Ad_g e = e, Ad_g h = h − 2e, Ad_g f = f + h − e
    let g = QMatrix::from_i64(&[&[1, 1], &[0, 1]]);
    let pt = double_action_anchor(&ctx, &g).unwrap();
    let images = [qvec(&[1, 0, 0]), qvec(&[-2, 1, 0]), qvec(&[-1, 1, 1])];
    let vs: Vec<_> = (0..3)
        .map(|i| pair(&images[i], &crate::exactlin::unit_vec(3, i)))
        .collect();
    assert_eq!(pt.stabilizer().unwrap(), Subspace::span(6, &vs).unwrap());
}

#[test]
fn main_identity_on_sl2() {
    let ctx = sl2();
    let (h, tol) = (1e-4, 1e-6);
    let sts = main_identity_suite(&ctx, &diagonal(3), &sl2_triangular_complement(), 10, h, tol).unwrap();
    assert_eq!(sts.residuals.len(), 10);
    assert!(sts.passed, "{}", sts.max_residual);
    let quasi = main_identity_suite(&ctx, &diagonal(3), &antidiagonal(3), 10, h, tol).unwrap();
    assert!(quasi.passed, "{}", quasi.max_residual);

    // the quasi-Poisson bivector is not Poisson away from the identity
    let field_pi = |g: &QMatrix| {
        let pt = double_action_anchor(&ctx, g).unwrap();
        pt.bivector_at(&diagonal(3), &antidiagonal(3)).unwrap()
    };
    assert!(!field_pi(&ctx.samples()[0]).is_zero());

    // second-order truncation
    let coarse = main_identity_suite(&ctx, &diagonal(3), &sl2_triangular_complement(), 10, 1e-3, tol).unwrap();
    let fine = main_identity_suite(&ctx, &diagonal(3), &sl2_triangular_complement(), 10, 5e-4, tol).unwrap();
    let ratio = coarse.max_residual / fine.max_residual;
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn doubles_on_d() {
    let tc = triangular();
    let id = tc.d.identity();
    let pm = pi_plus_minus(&tc, &id).unwrap();
    assert!(pm.minus.is_zero());
    let r = LagrangianSplitting::new(tc.triple.d.form(), &tc.triple.g1, &tc.triple.g2)
        .unwrap()
        .bivector();
    assert_eq!(pm.plus, r.scale(&qi(2)));
    for d in tc.d.samples() {
        let pm = pi_plus_minus(&tc, d).unwrap();
        assert!(pm.agree() && pm.residual <= 1e-9);
    }
}

#[test]
fn multiplication_relates_actions() {
    let ctx = sl2();
    let s = ctx.samples();
    for i in 0..5 {
        let rep = mult_morphism_check(&ctx, &s[i], &s[i + 1], 1e-4, 1e-6).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
    }
}

#[test]
fn poisson_lie_suites() {
    let rep = poisson_lie_suite(&triangular(), 10, 1e-4, 1e-6).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
    let ab = builtin_triple("abelian-2", 5, 2).unwrap();
    let rep = poisson_lie_suite(&ab, 5, 1e-4, 1e-6).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
}

#[test]
fn corrupted_form_fails_before_numerics() {
    let tc = triangular();
    let mut t = tc.triple.clone();
    let mut m = t.d.form().matrix().clone();
    m[(0, 2)] = qi(5);
    m[(2, 0)] = qi(5);
    t.d = t.d.with_form(crate::exactlin::BilinearForm::new(m).unwrap()).unwrap();
    let bad = TripleContext::new(
        "bad",
        t,
        sl2_pair_context(3, 1),
        sl2_context(3, 1),
        tc.inclusion.clone(),
        |g| QMatrix::block_diag(&[g, g]),
        |g| {
            let mut out = DMatrix::zeros(4, 4);
            out.view_mut((0, 0), (2, 2)).copy_from(g);
            out.view_mut((2, 2), (2, 2)).copy_from(g);
            out
        },
    )
    .unwrap();
    let rep = poisson_lie_suite(&bad, 3, 1e-4, 1e-6).unwrap();
    assert!(!rep.passed());
    assert_eq!(rep.checks.last().unwrap().name, "Manin triple");
    assert!(rep.checks.iter().all(|c| !c.name.starts_with("dMult")));
}

#[test]
fn dressing() {
    let tc = triangular();
    // at the identity the right dressing is p₁ read in 𝔤₁ coordinates
    let rho = tc.dressing_right(&tc.g1.identity()).unwrap();
    // ζ − dΦ(ρᴿ(ζ)) ∈ 𝔤₂
    assert_eq!(rho.mul(&tc.inclusion).unwrap(), QMatrix::identity(3));
    for j in 0..6 {
        let col = rho.column(j);
        let back = tc.inclusion.mul_vec(&col).unwrap();
        let x = crate::exactlin::unit_vec(6, j);
        let rest: Vec<_> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
        assert!(tc.triple.g2.contains(&rest).unwrap());
    }
    let rep = dressing_suite(&tc, 10, 1e-4, 1e-6).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
}

#[test]
fn q_mult() {
    let tc = triangular();
    let q = q_mult_fiber(&tc, &tc.g1.identity()).unwrap();
    let kernel: Vec<_> = tc
        .triple
        .g1
        .basis()
        .iter()
        .map(|x| pair(x, &x.iter().map(|v| -v).collect::<Vec<_>>()))
        .collect();
    assert_eq!(q.kernel(), Subspace::span(12, &kernel).unwrap());
    let rep = q_mult_suite(&tc, 5).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
}

#[test]
fn quotient_and_action() {
    let tc = triangular();
    let rep = quotient_suite(&tc, &borel_subalgebra()).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
    // the opposite Borel meets 𝔤_Δ trivially and 𝔩 in one dimension
    let opposite = Subspace::span(
        6,
        &[qvec(&[0, 1, 0, 0, -1, 0]), qvec(&[1, 0, 0, 0, 0, 0]), qvec(&[0, 0, 0, 0, 0, 1])],
    )
    .unwrap();
    let rep = quotient_suite(&tc, &opposite).unwrap();
    assert!(!rep.checks[1].passed);

    let rep = action_suite(&tc.d, &sl2(), 5, 1e-4, 1e-6).unwrap();
    assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
}

#[test]
fn quasi_type_identity_with_nonzero_trivector() {
    // On SL₂ every Lagrangian in the stabilizer family is a subalgebra, so
    // the trivector side vanishes; on SL₂ × SL₂ the anti-diagonal of 𝔡
    // mixes the factors and it does not.
    let ctx = Arc::new(sl2_pair_context(6, 9));
    let e = diagonal(3).product(&diagonal(3));
    let f = antidiagonal(3).product(&antidiagonal(3));
    let alg = crate::quadlie::build_double(ctx.algebra());
    let sp = LagrangianSplitting::new(alg.form(), &e, &f).unwrap();
    let ups = crate::quadlie::courant_tensor(&alg, &f).unwrap();
    let g = ctx.samples()[0].to_f64();
    let a = double_action_field(&ctx, &g)(&DVector::zeros(6));
    let rhs = crate::diffnum::push_trivector(&a, &ups, sp.swapped().f_dual()).unwrap();
    assert!(rhs.max_abs() > 1e-2);
    let rep = main_identity_suite(&ctx, &e, &f, 6, 1e-4, 1e-6).unwrap();
    assert!(rep.passed, "{}", rep.max_residual);

    let sl = sl2();
    let f = Subspace::span(6, &[qvec(&[0, 1, 0, 0, 1, 0]), qvec(&[0, 0, 1, 0, 0, 0]), qvec(&[0, 0, 0, 1, 0, 0])])
        .unwrap();
    let alg = crate::quadlie::build_double(sl.algebra());
    let sp = LagrangianSplitting::new(alg.form(), &antidiagonal(3), &f).unwrap();
    let ups = crate::quadlie::courant_tensor(&alg, &antidiagonal(3)).unwrap();
    assert!(!ups.is_zero());
    for g in sl.samples() {
        let a = double_action_anchor(&sl, g).unwrap().anchor_exact().unwrap().to_f64();
        assert!(crate::diffnum::push_trivector(&a, &ups, sp.f_dual()).unwrap().max_abs() < 1e-12);
    }
}
