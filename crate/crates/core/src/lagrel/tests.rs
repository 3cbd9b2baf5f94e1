use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::*;
use super::*;
use crate::exactlin::{q, qi, qvec, BilinearForm, QMatrix, Subspace};
use crate::quadlie::catalog::{abelian, build_double, sl2, sl2_triangular_triple};

fn sp(n: usize, rows: &[&[i64]]) -> Subspace {
    let v: Vec<_> = rows.iter().map(|r| qvec(r)).collect();
    Subspace::span(n, &v).unwrap()
}

fn product_relation(l_prime: &Subspace, l: &Subspace, wt: &SplitSpace, ws: &SplitSpace) -> LinearRelation {
    LinearRelation::new(wt.clone(), ws.clone(), l_prime.product(l)).unwrap()
}

#[test]
fn kernel_range_transpose_examples() {
    let w = SplitSpace::standard(2);
    let id = LinearRelation::identity(&w);
    assert!(id.kernel().is_zero());
    assert!(id.range().is_full());
    assert_eq!(id.transpose(), id);

    let l = sp(4, &[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
    let lp = sp(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let r = product_relation(&lp, &l, &w, &w);
    assert_eq!(r.kernel(), l);
    assert_eq!(r.range(), lp);
    assert_eq!(r.kernel().dim() + r.range().dim(), r.graph().dim());
    assert_eq!(r.transpose().transpose(), r);
}

#[test]
fn non_lagrangian_graph_is_rejected() {
    let w = SplitSpace::standard(1);
    let g = Subspace::full(4);
    assert_eq!(
        LinearRelation::new(w.clone(), w, g).unwrap_err(),
        LagError::NotLagrangian("graph")
    );
    assert_eq!(
        SplitSpace::new(BilinearForm::diagonal(&[qi(1), qi(1)])).unwrap_err(),
        LagError::NotSplit
    );
}

#[test]
fn pair_groupoid_kernel_on_line() {
    let line = abelian(BilinearForm::diagonal(&[qi(1)]));
    let r = pair_groupoid_relation(&line);
    assert_eq!(r.graph().dim(), 3);
    assert_eq!(r.graph().dim() * 2, r.source().dim() + r.target().dim());
    assert_eq!(r.kernel(), sp(4, &[&[0, 1, 1, 0]]));
    assert!(r.range().is_full());
}

#[test]
fn compose_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let r = random_relation(&mut rng, 2, 2);
        let id = LinearRelation::identity(r.target());
        assert_eq!(id.compose(&r).unwrap(), r);
        let s = random_relation(&mut rng, 2, 2);
        let c = s.compose(&r).unwrap();
        assert_eq!(c.graph().dim(), 4);
        assert!(c.graph().is_lagrangian(&c.graph_form()).unwrap());
        // Rᵗ ∘ R reduces to the identity on ran(Rᵗ)/ker(R)
        let rr = r.transpose().compose(&r).unwrap();
        for w in r.transpose().range().basis() {
            assert!(rr.is_related(w, w).unwrap());
        }
    }
    let a = SplitSpace::standard(1);
    let b = SplitSpace::standard(2);
    let r = LinearRelation::identity(&a);
    let s = LinearRelation::identity(&b);
    assert_eq!(s.compose(&r).unwrap_err(), LagError::SpaceMismatch);
}

#[test]
fn reduced_iso_examples() {
    let w = SplitSpace::standard(2);
    let iso = LinearRelation::identity(&w).reduced_iso().unwrap();
    assert_eq!(iso.matrix, QMatrix::identity(4));

    let l = sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let iso = product_relation(&l, &l, &w, &w).reduced_iso().unwrap();
    assert_eq!((iso.domain.dim(), iso.codomain.dim()), (0, 0));

    let r = pair_groupoid_relation(&sl2());
    let iso = r.reduced_iso().unwrap();
    assert_eq!((iso.domain.dim(), iso.codomain.dim()), (6, 6));
    assert!(iso.matrix.inverse().is_some());
    // the induced map respects relatedness: reps of the domain map to the
    // class of their partner
    for (i, w) in iso.domain.complement().iter().enumerate() {
        let wp = r.related_to(w).unwrap().unwrap();
        assert_eq!(iso.codomain.coords(&wp).unwrap(), iso.matrix.column(i));
    }
}

#[test]
fn backward_image_examples() {
    let w = SplitSpace::standard(1);
    let e1 = sp(2, &[&[1, 0]]);
    let id = LinearRelation::identity(&w);
    let bi = id.backward_image(&e1).unwrap();
    assert_eq!(bi.image, e1);
    assert_eq!(bi.alpha, vec![qvec(&[1, 0])]);

    // g swaps the two null lines and preserves [[0,1],[1,0]]
    let g = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let r = LinearRelation::from_map(w.clone(), w.clone(), &g).unwrap();
    let bi = r.backward_image(&e1).unwrap();
    assert_eq!(bi.image, sp(2, &[&[0, 1]]));
    assert_eq!(bi.apply_alpha(&qvec(&[0, 3])).unwrap(), qvec(&[3, 0]));

    // R = L' x L with E' = L' violates transversality
    let r = product_relation(&e1, &e1, &w, &w);
    match r.backward_image(&e1) {
        Err(LagError::Transversality { witness }) => assert_eq!(witness, qvec(&[1, 0])),
        other => panic!("{other:?}"),
    }
    assert_eq!(r.backward_set(&e1).unwrap(), e1);
    assert_eq!(r.backward_set(&sp(2, &[&[0, 1]])).unwrap(), r.kernel());
    assert_eq!(r.forward_set(&e1).unwrap(), e1);
}

#[test]
fn backward_image_is_lagrangian_and_alpha_relates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..40 {
        let r = random_relation(&mut rng, 2, 3);
        let ep = random_lagrangian(&mut rng, 3);
        let Ok(bi) = r.backward_image(&ep) else { continue };
        checked += 1;
        assert!(bi.image.is_lagrangian(r.source().form()).unwrap());
        for (x, a) in bi.image.basis().iter().zip(&bi.alpha) {
            assert!(ep.contains(a).unwrap());
            assert!(r.is_related(x, a).unwrap());
        }
        assert_eq!(bi.image, r.backward_set(&ep).unwrap());
    }
    assert!(checked > 10);
}

#[test]
fn splitting_bivector_examples() {
    let form = BilinearForm::standard_split(1);
    let e = sp(2, &[&[1, 0]]);
    let f = sp(2, &[&[0, 1]]);
    let s = LagrangianSplitting::new(&form, &e, &f).unwrap();
    let pi = s.bivector();
    let half = q(1, 2);
    assert_eq!(pi.matrix()[(0, 1)], half);
    assert_eq!(pi.matrix()[(1, 0)], -half.clone());
    assert_eq!(s.swapped().bivector(), pi.negated());
    assert_eq!(pi.contract_form(&form, &qvec(&[1, 0])), vec![-half, qi(0)]);
    assert_eq!(
        LagrangianSplitting::new(&form, &e, &e).unwrap_err(),
        LagError::NotTransverse
    );
}

#[test]
fn contraction_identity_on_random_splittings() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4 {
        let form = BilinearForm::standard_split(n);
        let (e, f) = random_splitting(&mut rng, n);
        let s = LagrangianSplitting::new(&form, &e, &f).unwrap();
        for (ei, fj) in s.e_basis().iter().zip(s.f_dual()) {
            assert_eq!(form.eval(ei, fj), qi(1));
        }
        for i in 0..2 * n {
            let w = crate::exactlin::unit_vec(2 * n, i);
            let lhs = s.bivector().contract_form(&form, &w);
            let rhs = crate::exactlin::scale_vec(
                &q(1, 2),
                &crate::exactlin::sub_vec(&s.pr_f(&w), &s.pr_e(&w)),
            );
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn reduce_bivector_examples() {
    // coordinates (e1, e2, f1, f2)
    let form = BilinearForm::standard_split(2);
    let e = sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let f = sp(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let s = LagrangianSplitting::new(&form, &e, &f).unwrap();

    let full = reduce_bivector(&s, &Subspace::full(4)).unwrap();
    assert_eq!(full.bivector, s.bivector());

    let w1 = sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let red = reduce_bivector(&s, &w1).unwrap();
    assert_eq!(red.quotient.dim(), 2);
    assert_eq!(red.quotient.complement(), &[qvec(&[0, 1, 0, 0]), qvec(&[0, 0, 0, 1])]);
    assert_eq!(red.bivector.matrix(), &QMatrix::from_rows(2, &[vec![qi(0), q(1, 2)], vec![q(-1, 2), qi(0)]]).unwrap());

    let w0 = sp(4, &[&[1, 0, 0, 1]]);
    let w1 = w0.orth_complement(&form).unwrap();
    match reduce_bivector(&s, &w1) {
        Err(LagError::Decomposition { witness }) => {
            assert!(!w0.contains(&s.pr_e(&witness)).unwrap());
        }
        other => panic!("{other:?}"),
    }
    let not_cois = sp(4, &[&[1, 0, 0, 0]]);
    assert_eq!(reduce_bivector(&s, &not_cois).unwrap_err(), LagError::NotCoisotropic);
}

#[test]
fn reduced_contraction_matches() {
    // ι(w_red)Π_red = (ι(w)Π)_red for w ∈ W1
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    for _ in 0..60 {
        let n = 3;
        let form = BilinearForm::standard_split(n);
        let (e, f) = random_splitting(&mut rng, n);
        let s = LagrangianSplitting::new(&form, &e, &f).unwrap();
        // W0 spanned by one vector of E and one of F, when isotropic together
        let w0 = Subspace::span(2 * n, &[e.basis()[0].clone(), f.basis()[1].clone()]).unwrap();
        if !w0.is_isotropic(&form).unwrap() {
            continue;
        }
        let w1 = w0.orth_complement(&form).unwrap();
        let red = reduce_bivector(&s, &w1).unwrap();
        let rform = red.splitting.form().clone();
        for w in w1.basis() {
            let lhs = red
                .bivector
                .contract_form(&rform, &red.quotient.coords(w).unwrap());
            let rhs = red.quotient.coords(&s.bivector().contract_form(&form, w)).unwrap();
            assert_eq!(lhs, rhs);
        }
        done += 1;
    }
    assert!(done > 5, "{done}");
}

#[test]
fn relatedness_identity() {
    let form = BilinearForm::standard_split(2);
    let w = SplitSpace::new(form.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (e, f) = random_splitting(&mut rng, 2);
    let id = LinearRelation::identity(&w);
    assert!(related_lagrangian(&e, &e, &id).unwrap());
    assert!(related_splitting((&e, &f), (&e, &f), &id).unwrap().related());
    let r = related_splitting((&e, &f), (&f, &e), &id).unwrap();
    assert_eq!(r.reasons, vec![Reason::EMismatch, Reason::FMismatch]);
}

struct DoubleSplittings {
    ep: Subspace,
    fp: Subspace,
    em: Subspace,
    fm: Subspace,
}

fn double_splittings() -> DoubleSplittings {
    let t = sl2_triangular_triple();
    DoubleSplittings {
        ep: t.g1.product(&t.g2),
        fp: t.g2.product(&t.g1),
        em: t.g1.product(&t.g1),
        fm: t.g2.product(&t.g2),
    }
}

#[test]
fn groupoid_relation_table() {
    let d = build_double(&sl2());
    let r = pair_groupoid_relation(&d);
    let s = double_splittings();
    let x = |a: &Subspace, b: &Subspace| a.product(b);
    let lines = [
        ((x(&s.em, &s.em), x(&s.fm, &s.fm)), (&s.em, &s.fm)),
        ((x(&s.ep, &s.fp), x(&s.fp, &s.ep)), (&s.em, &s.fm)),
        ((x(&s.ep, &s.fm), x(&s.fp, &s.em)), (&s.ep, &s.fp)),
        ((x(&s.em, &s.ep), x(&s.fm, &s.fp)), (&s.ep, &s.fp)),
    ];
    for ((e, f), (e2, f2)) in &lines {
        let rel = related_splitting((e, f), (e2, f2), &r).unwrap();
        assert!(rel.related(), "{:?}", rel.reasons);
        // Π_red is carried to Π'_red
        let iso = r.reduced_iso().unwrap();
        let src = LagrangianSplitting::new(r.source().form(), e, f).unwrap();
        let tgt = LagrangianSplitting::new(r.target().form(), e2, f2).unwrap();
        let a = reduce_bivector(&src, &r.transpose().range()).unwrap();
        let b = reduce_bivector(&tgt, &r.range()).unwrap();
        assert_eq!(a.bivector.push(&iso.matrix).unwrap(), b.bivector);
    }
    let bad = related_splitting(
        (&x(&s.ep, &s.ep), &x(&s.fp, &s.fp)),
        (&s.ep, &s.fp),
        &r,
    )
    .unwrap();
    assert!(bad.reasons.contains(&Reason::KernelNotSplit));
    assert!(r.kernel().intersect(&x(&s.ep, &s.ep)).unwrap().is_zero());
    assert!(r.kernel().intersect(&x(&s.fp, &s.fp)).unwrap().is_zero());
}

#[test]
fn kernel_range_duality_and_associativity_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let dims: Vec<usize> = (0..4).map(|_| rand::Rng::gen_range(&mut rng, 1..=3)).collect();
        let r = random_relation(&mut rng, dims[0], dims[1]);
        let s = random_relation(&mut rng, dims[1], dims[2]);
        let t = random_relation(&mut rng, dims[2], dims[3]);
        let rt = r.transpose();
        assert_eq!(r.kernel(), rt.range().orth_complement(r.source().form()).unwrap());
        assert_eq!(r.range(), rt.kernel().orth_complement(r.target().form()).unwrap());
        assert_eq!(r.kernel().dim() + r.range().dim(), r.graph().dim());
        let lhs = t.compose(&s.compose(&r).unwrap()).unwrap();
        let rhs = t.compose(&s).unwrap().compose(&r).unwrap();
        assert_eq!(lhs, rhs);
    }
}
