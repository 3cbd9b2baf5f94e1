use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{leaf_counterexample, random_coisotropic_anchor, random_point, split_abelian};
use super::*;
use crate::exactlin::{q, qi, qvec, unit_vec, BilinearForm, QMatrix, Subspace};
use crate::lagrel::Bivector;
use crate::quadlie::catalog::{abelian, abelian_split2, antidiagonal, build_double, diagonal, sl2};

fn sl2_identity() -> AnchoredPoint {
    // a(u, v) = v − u
    let mut a = QMatrix::zeros(3, 6);
    for i in 0..3 {
        a[(i, i)] = qi(-1);
        a[(i, 3 + i)] = qi(1);
    }
    AnchoredPoint::exact(Arc::new(build_double(&sl2())), a).unwrap()
}

#[test]
fn stabilizer_examples() {
    let pt = sl2_identity();
    assert_eq!(pt.stabilizer().unwrap(), diagonal(3));
    assert!(pt.check_coisotropic_stabilizer().unwrap().coisotropic);

    let zero = AnchoredPoint::exact(Arc::new(sl2()), QMatrix::zeros(2, 3)).unwrap();
    assert!(zero.check_coisotropic_stabilizer().unwrap().coisotropic);
    assert!(zero.anchor_dual().unwrap().is_zero());

    let a = QMatrix::from_i64(&[&[1, 0]]);
    let split = AnchoredPoint::exact(Arc::new(abelian_split2()), a.clone()).unwrap();
    assert!(split.check_coisotropic_stabilizer().unwrap().coisotropic);
    assert_eq!(split.anchor_dual().unwrap(), QMatrix::from_i64(&[&[0], &[1]]));

    let euclid = Arc::new(abelian(BilinearForm::diagonal(&[qi(1), qi(1)])));
    let bad = AnchoredPoint::new_unchecked(euclid.clone(), Anchor::Exact(a.clone())).unwrap();
    let chk = bad.check_coisotropic_stabilizer().unwrap();
    assert!(!chk.coisotropic);
    assert_eq!(chk.witness, Some(qvec(&[1, 0])));
    assert!(matches!(
        AnchoredPoint::exact(euclid, a),
        Err(AnchorError::NotCoisotropic { .. })
    ));
}

#[test]
fn anchor_dual_annihilates_anchor() {
    let pt = sl2_identity();
    let ad = pt.anchor_dual().unwrap();
    assert!(pt.anchor_exact().unwrap().mul(&ad).unwrap().is_zero());
    assert_eq!(Subspace::column_space(&ad), diagonal(3));
}

#[test]
fn float_anchors_refuse_exact_predicates() {
    let pt = AnchoredPoint::new(Arc::new(abelian_split2()), Anchor::Float(DMatrix::identity(2, 2)))
        .unwrap();
    assert_eq!(pt.stabilizer(), Err(AnchorError::FloatAnchor));
    let e = Subspace::span(2, &[unit_vec(2, 0)]).unwrap();
    let f = Subspace::span(2, &[unit_vec(2, 1)]).unwrap();
    let pi = pt.bivector_at_f64(&e, &f).unwrap();
    assert_eq!(pi[(0, 1)], 0.5);
    assert!(pt.rank_formula(&e, &f).is_err());
}

#[test]
fn bivector_examples() {
    let pt = sl2_identity();
    let (e, f) = (diagonal(3), antidiagonal(3));
    assert!(pt.bivector_at(&e, &f).unwrap().is_zero());
    assert_eq!(pt.rank_formula(&e, &f).unwrap(), 0);
    assert_eq!(pt.drinfeld_lagrangian(&f).unwrap(), diagonal(3));

    // trivial stabilizer: not coisotropic, but the bivector is still defined
    let ab = AnchoredPoint::new_unchecked(
        Arc::new(abelian_split2()),
        Anchor::Exact(QMatrix::identity(2)),
    )
    .unwrap();
    let e1 = Subspace::span(2, &[unit_vec(2, 0)]).unwrap();
    let e2 = Subspace::span(2, &[unit_vec(2, 1)]).unwrap();
    let pi = ab.bivector_at(&e1, &e2).unwrap();
    let half = Bivector::wedge(&unit_vec(2, 0), &unit_vec(2, 1)).scale(&q(1, 2));
    assert_eq!(pi, half);
    assert_eq!(ab.bivector_at(&e2, &e1).unwrap(), half.negated());
    // a a* ≠ 0, so the diagonal graph is not Lagrangian
    assert!(ab.diagonal_backward(&e1, &e2).is_err());

    // Q^4 with Lagrangian stabilizer span(a1 + b2, a2 − b1) and the same π
    let g4 = split_abelian(2);
    let k1 = qvec(&[1, 0, 0, 1]);
    let k2 = qvec(&[0, 1, -1, 0]);
    let rows = vec![
        g4.form().flat(&k1),
        crate::exactlin::scale_vec(&q(1, 2), &g4.form().flat(&k2)),
    ];
    let desk = AnchoredPoint::exact(g4, QMatrix::from_rows(4, &rows).unwrap()).unwrap();
    let ea = Subspace::span(4, &[unit_vec(4, 0), unit_vec(4, 1)]).unwrap();
    let fb = Subspace::span(4, &[unit_vec(4, 2), unit_vec(4, 3)]).unwrap();
    assert_eq!(desk.bivector_at(&ea, &fb).unwrap(), half);
    assert_eq!(desk.diagonal_backward(&ea, &fb).unwrap(), half);
    assert_eq!(desk.diagonal_backward(&fb, &ea).unwrap(), half.negated());
    assert_eq!(desk.rank_formula(&ea, &fb).unwrap(), 2);

    let zero = AnchoredPoint::exact(Arc::new(abelian_split2()), QMatrix::zeros(3, 2)).unwrap();
    assert_eq!(zero.rank_formula(&e1, &e2).unwrap(), 0);
}

#[test]
fn leaf_examples() {
    let pt = sl2_identity();
    let rep = pt.leaf_condition(&diagonal(3), &antidiagonal(3)).unwrap();
    assert!(rep.condition);
    assert!(rep.ran_pi.is_zero());

    let (pt, e, f) = leaf_counterexample();
    let rep = pt.leaf_condition(&e, &f).unwrap();
    assert!(!rep.condition);
    assert!(rep.ran_pi.is_zero());
    assert_eq!(rep.intersection, Subspace::full(1));
    // brute force: ran(a*) + ker∩E + ker∩F has dimension 4 inside the 5-dim kernel
    let k = pt.stabilizer().unwrap();
    assert_eq!(k.dim(), 5);
    let rhs = Subspace::column_space(&pt.anchor_dual().unwrap())
        .sum(&k.intersect(&e).unwrap())
        .unwrap()
        .sum(&k.intersect(&f).unwrap())
        .unwrap();
    assert_eq!(rhs.dim(), 4);
}

#[test]
fn random_points_agree_with_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..60 {
        let m = 1 + trial % 4;
        let k = 1 + (trial / 4) % 4;
        let (pt, e, f) = random_point(&mut rng, m, k);
        let a = pt.anchor_exact().unwrap().clone();
        let ad = pt.anchor_dual().unwrap();
        assert!(a.mul(&ad).unwrap().is_zero());

        let pi = pt.bivector_at(&e, &f).unwrap();
        // ι_μ π = a(pr_F(a* μ)) on every basis covector
        let s = pt.splitting(&e, &f).unwrap();
        for j in 0..k {
            let mu = unit_vec(k, j);
            let lhs = pi.contract(&mu);
            let rhs = a.mul_vec(&s.pr_f(&ad.mul_vec(&mu).unwrap())).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(pt.bivector_at(&f, &e).unwrap(), pi.negated());

        let rk = pt.rank_formula(&e, &f).unwrap();
        assert_eq!(rk, pi.matrix().rank());
        assert!(pt.drinfeld_lagrangian(&f).unwrap().is_lagrangian(pt.algebra().form()).unwrap());
        assert_eq!(pt.diagonal_backward(&e, &f).unwrap(), pi);

        let leaf = pt.leaf_condition(&e, &f).unwrap();
        let k_sub = pt.stabilizer().unwrap();
        if k_sub == Subspace::column_space(&ad) {
            assert!(leaf.condition);
        }
    }
}

fn random_jet(rng: &mut ChaCha8Rng, n: usize, k: usize) -> SectionJet {
    use rand::Rng;
    SectionJet {
        value: DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0)),
        jacobian: DMatrix::from_fn(n, k, |_, _| rng.gen_range(-1.0..1.0)),
    }
}

#[test]
fn bracket_on_constant_sections_is_the_lie_bracket() {
    let pt = sl2_identity();
    let x = SectionJet::constant(DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0, 2.0, 0.0]), 3);
    let y = SectionJet::constant(DVector::from_vec(vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0]), 3);
    let b = courant_bracket_jets(&pt, &x, &y).unwrap();
    // [e, f] = h; [2h', f'] = -4 f'
    assert_eq!(b.as_slice(), &[0.0, 1.0, 0.0, 0.0, 0.0, -4.0]);
    let rep = jet_axioms(&pt, [&x, &y, &x], 1e-12).unwrap();
    assert_eq!(rep.checks.len(), 3);
    assert!(rep.passed());
}

#[test]
fn leibniz_rule_for_functions() {
    let pt = sl2_identity();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = SectionJet::constant(random_jet(&mut rng, 6, 3).value, 3);
    let c = random_jet(&mut rng, 6, 3).value;
    let (f0, df) = (0.7, DVector::from_vec(vec![0.3, -1.2, 0.5]));
    // y = f c, so y(m) = f0 c and dy = c ⊗ df
    let y = SectionJet {
        value: &c * f0,
        jacobian: &c * df.transpose(),
    };
    let lhs = courant_bracket_jets(&pt, &x, &y).unwrap();
    let cc = SectionJet::constant(c.clone(), 3);
    let ax = pt.anchor_f64() * &x.value;
    let rhs = courant_bracket_jets(&pt, &x, &cc).unwrap() * f0 + &c * df.dot(&ax);
    assert!((lhs - rhs).amax() < 1e-12);
}

#[test]
fn pointwise_axioms_on_random_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g = Arc::new(build_double(&sl2()));
    for _ in 0..20 {
        let a = DMatrix::from_fn(3, 6, |_, _| rand::Rng::gen_range(&mut rng, -1.0..1.0));
        let pt = AnchoredPoint::new(g.clone(), Anchor::Float(a)).unwrap();
        let js: Vec<_> = (0..3).map(|_| random_jet(&mut rng, 6, 3)).collect();
        let rep = jet_axioms(&pt, [&js[0], &js[1], &js[2]], 1e-10).unwrap();
        assert_eq!(rep.checks.len(), 2);
        assert!(rep.passed(), "{rep:?}");
    }
}

#[test]
fn reduction_examples() {
    let form = BilinearForm::standard_split(2);
    let (qt, red) = coisotropic_reduce_point(&form, &Subspace::full(4)).unwrap();
    assert_eq!(qt.dim(), 4);
    assert_eq!(red, form);
    let line = Subspace::span(4, &[unit_vec(4, 0)]).unwrap();
    assert!(matches!(
        coisotropic_reduce_point(&form, &line),
        Err(AnchorError::NotCoisotropic { .. })
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let (pt, _, _) = random_point(&mut rng, 3, 2);
        let rank = pt.anchor_exact().unwrap().rank();
        let (qt, red) = coisotropic_reduce_point(pt.algebra().form(), &pt.stabilizer().unwrap()).unwrap();
        assert_eq!(qt.dim(), 6 - 2 * rank);
        assert!(red.is_nondegenerate());
    }
}

#[test]
fn pullback_along_embedding_matches_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 15 {
        let m = 2;
        let k = 2;
        let a = random_coisotropic_anchor(&mut rng, m, k);
        let dphi = crate::lagrel::random::small_matrix(&mut rng, k, 1);
        let pt = AnchoredPoint::exact(split_abelian(m), a.clone()).unwrap();
        let pb = match pullback_point(&pt, &dphi) {
            Ok(pb) => pb,
            Err(AnchorError::NotTransverse) => continue,
            Err(AnchorError::Lin(_)) if dphi.rank() == 0 => continue,
            Err(e) => panic!("{e}"),
        };
        if dphi.rank() == 0 {
            continue;
        }
        checked += 1;
        let n = 2 * m;
        assert_eq!(pb.quotient.dim(), n + 2 - 2 * k);

        // restriction a⁻¹(TS) / a*(ann(TS ∩ ran a))
        let ts = Subspace::column_space(&dphi);
        let c = ts.preimage(&a).unwrap();
        let ad = pt.anchor_dual().unwrap();
        let ann = ts.intersect(&Subspace::column_space(&a)).unwrap().annihilator();
        let c_perp = ann.image(&ad).unwrap();
        let restr = crate::exactlin::Quotient::new(&c, &c_perp).unwrap();
        assert_eq!(restr.dim(), pb.quotient.dim());

        // [x; v, μ] ↦ [x + a*λ] with dΦᵀλ = μ
        let dphi_t = dphi.transpose();
        let cols: Vec<_> = pb
            .quotient
            .complement()
            .iter()
            .map(|w| {
                let lam = dphi_t.solve(&w[n + 1..]).unwrap().unwrap();
                let x = crate::exactlin::add_vec(&w[..n], &ad.mul_vec(&lam).unwrap());
                (x, w[n].clone())
            })
            .collect();
        let imgs: Vec<_> = cols.iter().map(|(x, _)| restr.coords(x).unwrap()).collect();
        let iso = QMatrix::from_columns(restr.dim(), &imgs).unwrap();
        assert!(iso.inverse().is_some());
        let form = pt.algebra().form();
        for i in 0..cols.len() {
            for j in 0..cols.len() {
                assert_eq!(form.eval(&cols[i].0, &cols[j].0), pb.form.matrix()[(i, j)]);
            }
            // anchors agree: dΦ(v) = a(x)
            let ax = a.mul_vec(&cols[i].0).unwrap();
            let dv = dphi.mul_vec(&[pb.anchor[(0, i)].clone()]).unwrap();
            assert_eq!(ax, dv);
        }
    }
}
