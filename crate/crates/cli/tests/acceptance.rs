//! Acceptance run: one pass/fail line per criterion. Exits nonzero if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use courantlab::exactlin::{to_f64, QMatrix, Subspace};
use courantlab::liegrp::suites::{dressing_suite, main_identity_suite, q_mult_suite};
use courantlab::liegrp::{
    builtin_triple, double_action_anchor, pi_plus_minus, poisson_lie_suite, sl2_context, TripleContext,
};
use courantlab::quadlie::catalog::{
    antidiagonal, build_double, diagonal, sl2, sl2_triangular_complement, sl2_triangular_triple,
};
use courantlab::quadlie::QuadraticLieAlgebra;
use courantlab::report::Report;
use courantlab_cli::suites::{random_chains, random_points};
use courantlab_cli::VerifyOpts;
use nalgebra::DMatrix;

// Pinned tolerances.
const H: f64 = 1e-4;
const MAIN_TOL: f64 = 1e-6;
const DOUBLE_TOL: f64 = 1e-9;
const RATIO_RANGE: (f64, f64) = (3.5, 4.5);
const POINTS: usize = 10;
const RANDOM_POINTS: usize = 100;
const RELATIONS: usize = 200;
const SEED: u64 = 1;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn check_named(rep: &Report, prefix: &str) -> Vec<(String, bool, Option<f64>)> {
    rep.checks
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .map(|c| (c.name.clone(), c.passed, c.residual))
        .collect()
}

fn within(elapsed: Duration, limit: f64) -> bool {
    elapsed.as_secs_f64() < limit
}

/// Killing form `tr(ad x ad y)` built from the structure constants.
fn killing_oracle(alg: &QuadraticLieAlgebra) -> DMatrix<f64> {
    let n = alg.dim();
    let ad: Vec<DMatrix<f64>> = (0..n)
        .map(|i| {
            let mut m = DMatrix::zeros(n, n);
            for j in 0..n {
                for (k, c) in alg.bracket_basis(i, j).iter().enumerate() {
                    m[(k, j)] = to_f64(c);
                }
            }
            m
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| (&ad[i] * &ad[j]).trace())
}

fn c1_algebra() -> Outcome {
    let t = Instant::now();
    let g = sl2();
    let d = build_double(&g);
    let killing = (killing_oracle(&g) - g.form().matrix().to_f64()).amax();
    let ok_g = g.validate().passed();
    let ok_d = d.validate().passed();
    let ok_t = sl2_triangular_triple().validate().passed();
    let el = t.elapsed();
    outcome(
        ok_g && ok_d && ok_t && killing == 0.0 && within(el, 1.0),
        format!("sl2 {ok_g}, double {ok_d}, triple {ok_t}, Killing-form defect {killing}, {el:.2?}"),
    )
}

/// Rank of a rational matrix through the singular values of its f64 image.
fn svd_rank(m: &QMatrix) -> usize {
    let f = m.to_f64();
    if f.nrows() == 0 || f.ncols() == 0 {
        return 0;
    }
    f.svd(false, false).singular_values.iter().filter(|s| **s > 1e-9).count()
}

fn c2_rank() -> Outcome {
    let t = Instant::now();
    let pts = random_points(SEED, RANDOM_POINTS);
    let mut mismatches = 0;
    let mut max_dim = 0;
    for (pt, e, f) in &pts {
        max_dim = max_dim.max(pt.algebra().dim());
        let pi = pt.bivector_at(e, f).expect("valid splitting");
        match pt.rank_formula(e, f) {
            Ok(r) if r == svd_rank(pi.matrix()) => {}
            _ => mismatches += 1,
        }
    }
    let el = t.elapsed();
    outcome(
        mismatches == 0 && max_dim <= 8 && within(el, 5.0),
        format!("{} points, dim 𝔡 ≤ {max_dim}, {mismatches} mismatches, {el:.2?}", pts.len()),
    )
}

fn c3_diagonal() -> Outcome {
    let pts = random_points(SEED, RANDOM_POINTS);
    let bad = pts
        .iter()
        .filter(|(pt, e, f)| {
            let pi = pt.bivector_at(e, f).expect("valid splitting");
            !matches!(pt.diagonal_backward(e, f), Ok(b) if b == pi)
        })
        .count();
    outcome(bad == 0, format!("{} points, {bad} disagreements", pts.len()))
}

fn sl2_ctx() -> std::sync::Arc<courantlab::liegrp::GroupContext> {
    std::sync::Arc::new(sl2_context(POINTS, SEED))
}

fn c4_poisson() -> Outcome {
    let ctx = sl2_ctx();
    let rep = main_identity_suite(&ctx, &diagonal(3), &sl2_triangular_complement(), POINTS, H, MAIN_TOL)
        .expect("suite runs");
    outcome(
        rep.residuals.len() >= 10 && rep.max_residual <= MAIN_TOL,
        format!("{} points, max residual {:.3e} ≤ {MAIN_TOL:e}", rep.residuals.len(), rep.max_residual),
    )
}

fn c5_quasi() -> Outcome {
    let ctx = sl2_ctx();
    let rep = main_identity_suite(&ctx, &diagonal(3), &antidiagonal(3), POINTS, H, MAIN_TOL).expect("suite runs");
    let at_e = double_action_anchor(&ctx, &ctx.identity())
        .and_then(|pt| Ok(pt.bivector_at(&diagonal(3), &antidiagonal(3))?))
        .expect("identity is a point");
    outcome(
        rep.residuals.len() >= 10 && rep.max_residual <= MAIN_TOL && at_e.is_zero(),
        format!(
            "{} points, max residual {:.3e} ≤ {MAIN_TOL:e}, π(e) zero: {}",
            rep.residuals.len(),
            rep.max_residual,
            at_e.is_zero()
        ),
    )
}

fn c6_convergence() -> Outcome {
    let ctx = sl2_ctx();
    let run = |h| {
        main_identity_suite(&ctx, &diagonal(3), &sl2_triangular_complement(), POINTS, h, MAIN_TOL)
            .expect("suite runs")
            .max_residual
    };
    let (coarse, fine) = (run(1e-3), run(5e-4));
    let ratio = coarse / fine;
    outcome(
        (RATIO_RANGE.0..=RATIO_RANGE.1).contains(&ratio),
        format!("{coarse:.3e} / {fine:.3e} = {ratio:.4}"),
    )
}

fn triangular() -> TripleContext {
    builtin_triple("sl2-triangular-triple", POINTS, SEED).expect("builtin triple")
}

/// `Ad_d` on `𝔡` by conjugation of the basis matrices, solved by least squares.
fn ad_oracle(tc: &TripleContext, d: &DMatrix<f64>) -> DMatrix<f64> {
    let basis = tc.d.basis_f64();
    let vec = |m: &DMatrix<f64>| DMatrix::from_iterator(m.len(), 1, m.iter().copied());
    let mut b = DMatrix::zeros(basis[0].len(), basis.len());
    for (j, x) in basis.iter().enumerate() {
        b.set_column(j, &vec(x).column(0));
    }
    let inv = d.clone().try_inverse().expect("invertible");
    let mut out = DMatrix::zeros(basis.len(), basis.len());
    for (j, x) in basis.iter().enumerate() {
        let y = vec(&(d * x * &inv));
        let c = b.clone().svd(true, true).solve(&y, 1e-12).expect("solvable");
        out.set_column(j, &c.column(0));
    }
    out
}

/// `r = ½ Σ e_i ∧ f^i` for the triple `(𝔡, 𝔤₁, 𝔤₂)`.
fn r_oracle(tc: &TripleContext) -> DMatrix<f64> {
    let form = tc.triple.d.form().matrix().to_f64();
    let cols = |s: &Subspace| {
        let n = s.ambient();
        DMatrix::from_fn(n, s.dim(), |i, j| to_f64(&s.basis()[j][i]))
    };
    let (e, f) = (cols(&tc.triple.g1), cols(&tc.triple.g2));
    let gram = e.transpose() * &form * &f;
    let fd = &f * gram.try_inverse().expect("paired");
    (&e * fd.transpose() - &fd * e.transpose()) * 0.5
}

fn c7_doubles() -> Outcome {
    let tc = triangular();
    let r = r_oracle(&tc);
    let mut worst: f64 = 0.0;
    for d in tc.d.samples() {
        let pm = pi_plus_minus(&tc, d).expect("sample in D");
        let ad_inv = ad_oracle(&tc, &d.to_f64().try_inverse().expect("invertible"));
        let r_right = &ad_inv * &r * ad_inv.transpose();
        worst = worst
            .max((pm.plus.to_f64() - (&r_right + &r)).amax())
            .max((pm.minus.to_f64() - (&r_right - &r)).amax());
    }
    let at_e = pi_plus_minus(&tc, &tc.d.identity()).expect("identity").minus.is_zero();
    outcome(
        worst <= DOUBLE_TOL && at_e && tc.d.samples().len() >= 10,
        format!("{} points, max |π± − (𝔯ᴿ ± 𝔯ᴸ)| {worst:.3e} ≤ {DOUBLE_TOL:e}, π₋(e) zero: {at_e}", tc.d.samples().len()),
    )
}

fn c8_mult() -> Outcome {
    let tc = triangular();
    let rep = poisson_lie_suite(&tc, POINTS, H, MAIN_TOL).expect("suite runs");
    let dmult = check_named(&rep, "dMult: π");
    let lines = check_named(&rep, "R_Mult:");
    let worst = dmult.iter().filter_map(|c| c.2).fold(0.0, f64::max);
    let ok = dmult.len() == 4 && lines.len() == 4 && dmult.iter().chain(&lines).all(|c| c.1) && worst <= MAIN_TOL;
    outcome(
        ok,
        format!(
            "{} dMult relations max residual {worst:.3e} ≤ {MAIN_TOL:e}, {}/{} exact relatedness lines",
            dmult.len(),
            lines.iter().filter(|c| c.1).count(),
            lines.len()
        ),
    )
}

fn c9_dressing() -> Outcome {
    let tc = triangular();
    let rep = dressing_suite(&tc, POINTS, H, MAIN_TOL).expect("suite runs");
    let stab = check_named(&rep, "dressing stabilizers are coisotropic");
    let axioms = check_named(&rep, "right dressing is a Lie algebra action");
    let pull = check_named(&rep, "pull-back along Φ");
    let worst = axioms.iter().filter_map(|c| c.2).fold(0.0, f64::max);
    let ok = [&stab, &axioms, &pull].iter().all(|v| v.len() == 1 && v[0].1) && worst <= MAIN_TOL;
    outcome(
        ok && tc.g1.samples().len() >= 10,
        format!(
            "stabilizers coisotropic: {}, action residual {worst:.3e} ≤ {MAIN_TOL:e}, pull-back iso: {}",
            stab.first().is_some_and(|c| c.1),
            pull.first().is_some_and(|c| c.1)
        ),
    )
}

fn c10_morphisms() -> Outcome {
    let tc = triangular();
    let p = poisson_lie_suite(&tc, POINTS, H, MAIN_TOL).expect("suite runs");
    let back = check_named(&p, "P_Φ: backward image");
    let q = q_mult_suite(&tc, POINTS).expect("suite runs");
    let fwd = check_named(&q, "Q_Mult: (E×E, F×F) ∼ (E, F)");
    let images = check_named(&q, "Q_Mult: forward images");
    let kernel = check_named(&q, "Q_Mult: kernel");
    let all: Vec<_> = back.iter().chain(&fwd).chain(&images).chain(&kernel).collect();
    outcome(
        back.len() == 2 && fwd.len() == 1 && kernel.len() == 1 && all.iter().all(|c| c.1) && tc.g1.samples().len() >= 5,
        format!(
            "backward images {}/2, forward relatedness {}, kernel closed form at identity and {} points: {}",
            back.iter().filter(|c| c.1).count(),
            fwd.first().is_some_and(|c| c.1),
            tc.g1.samples().len(),
            kernel.first().is_some_and(|c| c.1)
        ),
    )
}

fn c11_relations() -> Outcome {
    let chains = random_chains(SEED, RELATIONS);
    let max_dim = chains
        .iter()
        .flat_map(|c| c.iter().flat_map(|r| [r.source().dim(), r.target().dim()]))
        .max()
        .unwrap_or(0);
    let opts = VerifyOpts {
        samples: Some(RELATIONS),
        seed: SEED,
        ..VerifyOpts::default()
    };
    let rep = courantlab_cli::suites::relations(&opts).expect("suite runs");
    outcome(
        rep.passed() && max_dim <= 8,
        format!(
            "{RELATIONS} chains, dims ≤ {max_dim}, {} laws, {} failing",
            rep.checks.len(),
            rep.failures().count()
        ),
    )
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let bin = env!("CARGO_BIN_EXE_courantlab");
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(bin)
            .args(["verify", "all", "--seed", "1", "--out"])
            .arg(&path)
            .output()
            .expect("binary runs")
            .status;
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (c1, a) = run("a.json");
    let (c2, b) = run("b.json");
    outcome(
        c1 == Some(0) && c2 == Some(0) && !a.is_empty() && a == b,
        format!("exit codes {c1:?}/{c2:?}, {} bytes, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("exact algebra and Manin triple validation", c1_algebra),
        ("rank formula against brute-force rank", c2_rank),
        ("diagonal backward image equals the bivector", c3_diagonal),
        ("main identity, Poisson case", c4_poisson),
        ("main identity, quasi-Poisson case", c5_quasi),
        ("second-order convergence", c6_convergence),
        ("doubles against r-matrix formulas", c7_doubles),
        ("multiplicativity of the doubles", c8_mult),
        ("dressing action", c9_dressing),
        ("morphisms P_Φ and Q_Mult", c10_morphisms),
        ("relation calculus laws", c11_relations),
        ("deterministic reports", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2}  {}  {name}: {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {}/12 passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
