//! The built-in verification suites behind `courantlab verify`.

use std::sync::Arc;

use courantlab::anchored::random::{leaf_counterexample, random_point};
use courantlab::anchored::AnchoredPoint;
use courantlab::exactlin::Subspace;
use courantlab::lagrel::random::random_relation;
use courantlab::lagrel::LinearRelation;
use courantlab::liegrp::suites::{
    action_suite, dressing_suite, main_identity_suite, q_mult_suite, quotient_suite,
};
use courantlab::liegrp::{
    borel_subalgebra, builtin_context, builtin_triple, double_action_anchor, pi_plus_minus,
    poisson_lie_suite, sl2_context, TripleContext,
};
use courantlab::quadlie::catalog::{antidiagonal, diagonal, sl2_triangular_complement};
use courantlab::report::{Check, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{Suite, VerifyOpts};
use crate::CliError;

pub const DEFAULT_POINTS: usize = 10;
pub const DEFAULT_RANDOM_POINTS: usize = 100;
pub const DEFAULT_RELATIONS: usize = 200;
/// Tolerance for the comparison of the two closed forms of `π±`.
pub const DOUBLE_TOL: f64 = 1e-9;

pub fn run_suite(suite: Suite, o: &VerifyOpts) -> Result<Report, CliError> {
    let rep = match suite {
        Suite::Schouten => schouten(o)?,
        Suite::Rank => rank(o)?,
        Suite::Leaves => leaves(o)?,
        Suite::Mult => mult(o)?,
        Suite::Dressing => dressing(o)?,
        Suite::Relations => relations(o)?,
        Suite::All => {
            let mut rep = Report::new();
            for s in [
                Suite::Schouten,
                Suite::Rank,
                Suite::Leaves,
                Suite::Mult,
                Suite::Dressing,
                Suite::Relations,
            ] {
                rep.extend(run_suite(s, o)?);
            }
            return Ok(rep);
        }
    };
    Ok(prefixed(suite.name(), rep))
}

fn prefixed(prefix: &str, rep: Report) -> Report {
    Report {
        checks: rep
            .checks
            .into_iter()
            .map(|mut c| {
                c.name = format!("{prefix}: {}", c.name);
                c
            })
            .collect(),
    }
}

fn tally(name: &str, oks: &[bool]) -> Check {
    let bad: Vec<String> = oks
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i.to_string())
        .collect();
    let good = oks.len() - bad.len();
    let c = Check::flag(name, bad.is_empty(), format!("failing instances: {}", bad.join(", ")));
    if bad.is_empty() {
        c.with_detail(format!("{good}/{} agree", oks.len()))
    } else {
        c
    }
}

/// The group context for the numeric suites.
pub fn context_name(o: &VerifyOpts) -> &str {
    o.ctx.as_deref().unwrap_or("sl2-double")
}

/// The Manin triple that goes with a context name.
pub fn triple_name(o: &VerifyOpts) -> &str {
    match o.ctx.as_deref() {
        None | Some("sl2-double") => "sl2-triangular-triple",
        Some(other) => other,
    }
}

/// `(label, E, F)` pairs for the main identity on a context.
fn main_identity_cases(ctx: &str) -> Vec<(&'static str, Subspace, Subspace)> {
    match ctx {
        "sl2-double" => vec![
            ("(𝔤_Δ, 𝔩)", diagonal(3), sl2_triangular_complement()),
            ("(𝔤_Δ, 𝔤₋Δ)", diagonal(3), antidiagonal(3)),
        ],
        "sl2-triangular-triple" => vec![
            ("(𝔡_Δ, 𝔡₋Δ)", diagonal(6), antidiagonal(6)),
            (
                "(𝔤_Δ ⊕ 𝔤_Δ, 𝔤₋Δ ⊕ 𝔤₋Δ)",
                diagonal(3).product(&diagonal(3)),
                antidiagonal(3).product(&antidiagonal(3)),
            ),
        ],
        _ => vec![("(𝔤_Δ, 𝔤₋Δ)", diagonal(2), antidiagonal(2))],
    }
}

/// `½[π,π] = a(Υᴱ) + a(Υᶠ)` for the action of `𝔤 ⊕ 𝔤̄` on `G`, one
/// record per sample point.
pub fn schouten(o: &VerifyOpts) -> Result<Report, CliError> {
    let name = context_name(o);
    let count = o.samples.unwrap_or(DEFAULT_POINTS);
    let ctx = Arc::new(builtin_context(name, count, o.seed)?);
    let mut rep = ctx.validate();
    if !rep.passed() {
        return Ok(rep);
    }
    for (label, e, f) in main_identity_cases(name) {
        let mi = main_identity_suite(&ctx, &e, &f, count, o.h, o.tol)?;
        for (i, r) in mi.residuals.iter().enumerate() {
            rep.push(Check::residual(format!("main identity {label} at sample {i}"), r.residual, o.tol));
        }
    }
    if name == "sl2-double" {
        let at_e = double_action_anchor(&ctx, &ctx.identity())?;
        rep.push(Check::flag(
            "π(e) = 0 for (𝔤_Δ, 𝔤₋Δ)",
            at_e.bivector_at(&diagonal(3), &antidiagonal(3))?.is_zero(),
            "nonzero at the identity",
        ));
        let (e, f) = (diagonal(3), sl2_triangular_complement());
        let coarse = main_identity_suite(&ctx, &e, &f, count, 1e-3, o.tol)?.max_residual;
        let fine = main_identity_suite(&ctx, &e, &f, count, 5e-4, o.tol)?.max_residual;
        let ratio = coarse / fine;
        rep.push(
            Check::flag(
                "halving h divides the residual by 3.5 to 4.5",
                (3.5..=4.5).contains(&ratio),
                "",
            )
            .with_detail(format!("ratio {ratio:.4} ({coarse:.3e} / {fine:.3e})")),
        );
    }
    Ok(rep)
}

/// Seeded random anchored points with random Lagrangian splittings of
/// `Q^{2m}`, `m ≤ 4`.
pub fn random_points(seed: u64, count: usize) -> Vec<(AnchoredPoint, Subspace, Subspace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_point(&mut rng, 1 + i % 4, 1 + (i / 4) % 4))
        .collect()
}

/// Rank formula against the matrix rank of `π`, and `π` against the
/// backward image under the diagonal relation.
pub fn rank(o: &VerifyOpts) -> Result<Report, CliError> {
    let pts = random_points(o.seed, o.samples.unwrap_or(DEFAULT_RANDOM_POINTS));
    let rows: Vec<[bool; 3]> = pts
        .par_iter()
        .map(|(pt, e, f)| {
            let pi = pt.bivector_at(e, f)?;
            let rank_ok = matches!(pt.rank_formula(e, f), Ok(r) if r == pi.matrix().rank());
            let diag_ok = pt.diagonal_backward(e, f)? == pi;
            let swap_ok = pt.bivector_at(f, e)? == pi.negated();
            Ok([rank_ok, diag_ok, swap_ok])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    let mut rep = Report::new();
    rep.push(tally("rank formula equals the matrix rank of π", &col(0)));
    rep.push(tally("diagonal backward image equals π", &col(1)));
    rep.push(tally("swapping E and F negates π", &col(2)));
    Ok(rep)
}

/// The leaf condition and its consequence `ran π♯ = a(E) ∩ a(F)`.
pub fn leaves(o: &VerifyOpts) -> Result<Report, CliError> {
    let pts = random_points(o.seed, o.samples.unwrap_or(DEFAULT_RANDOM_POINTS));
    let rows: Vec<(bool, bool)> = pts
        .par_iter()
        .map(|(pt, e, f)| match pt.leaf_condition(e, f) {
            Ok(l) => (true, l.condition),
            Err(_) => (false, false),
        })
        .collect();
    let mut rep = Report::new();
    let consistent: Vec<bool> = rows.iter().map(|r| r.0).collect();
    let holding = rows.iter().filter(|r| r.1).count();
    rep.push(
        tally("ran π♯ ⊆ a(E) ∩ a(F), with equality under the leaf condition", &consistent)
            .with_detail(format!("leaf condition holds at {holding}/{}", rows.len())),
    );
    let (pt, e, f) = leaf_counterexample();
    let l = pt.leaf_condition(&e, &f)?;
    rep.push(Check::flag(
        "counterexample: condition fails and ran π♯ ⊊ a(E) ∩ a(F)",
        !l.condition && l.ran_pi.dim() < l.intersection.dim(),
        format!("condition {}, dims {} and {}", l.condition, l.ran_pi.dim(), l.intersection.dim()),
    ));
    Ok(rep)
}

fn triple(o: &VerifyOpts) -> Result<TripleContext, CliError> {
    Ok(builtin_triple(triple_name(o), o.samples.unwrap_or(DEFAULT_POINTS), o.seed)?)
}

/// `π±` on `D`, their multiplicativity, `Φ: G₁ → D`, `Q_Mult`, and for the
/// sl₂ triple the quotient and action relations.
pub fn mult(o: &VerifyOpts) -> Result<Report, CliError> {
    let tc = triple(o)?;
    let count = o.samples.unwrap_or(DEFAULT_POINTS);
    let mut rep = poisson_lie_suite(&tc, count, o.h, o.tol)?;
    if !rep.passed() {
        return Ok(rep);
    }
    let at_e = pi_plus_minus(&tc, &tc.d.identity())?;
    rep.push(Check::flag("π₋(e) = 0", at_e.minus.is_zero(), "nonzero at the identity"));
    let pm = tc
        .d
        .samples()
        .par_iter()
        .take(count)
        .map(|d| pi_plus_minus(&tc, d))
        .collect::<Result<Vec<_>, _>>()?;
    rep.push(Check::flag(
        "π± equal 𝔯ᴿ ± 𝔯ᴸ exactly",
        pm.iter().all(|p| p.agree()),
        "exact comparison failed",
    ));
    rep.push(Check::residual(
        "π± against 𝔯ᴿ ± 𝔯ᴸ in floating point",
        pm.iter().map(|p| p.residual).fold(0.0, f64::max),
        DOUBLE_TOL,
    ));
    rep.extend(q_mult_suite(&tc, count)?);
    if tc.name() == "sl2-triangular-triple" {
        rep.extend(quotient_suite(&tc, &borel_subalgebra())?);
        let space = sl2_context(count, o.seed);
        rep.extend(action_suite(&tc.d, &space, count, o.h, o.tol)?);
    }
    Ok(rep)
}

pub fn dressing(o: &VerifyOpts) -> Result<Report, CliError> {
    let tc = triple(o)?;
    Ok(dressing_suite(&tc, o.samples.unwrap_or(DEFAULT_POINTS), o.h, o.tol)?)
}

/// Seeded random Lagrangian relations in chains of three, all spaces of
/// dimension at most 8.
pub fn random_chains(seed: u64, count: usize) -> Vec<[LinearRelation; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=4)).collect();
            [
                random_relation(&mut rng, d[0], d[1]),
                random_relation(&mut rng, d[1], d[2]),
                random_relation(&mut rng, d[2], d[3]),
            ]
        })
        .collect()
}

/// Kernel and range duality, the dimension formula, the reduced
/// isomorphism, unit and associativity laws of composition.
pub fn relations(o: &VerifyOpts) -> Result<Report, CliError> {
    let chains = random_chains(o.seed, o.samples.unwrap_or(DEFAULT_RELATIONS));
    let rows: Vec<[bool; 5]> = chains
        .par_iter()
        .map(|[r, s, t]| relation_laws(r, s, t))
        .collect::<Result<Vec<_>, CliError>>()?;
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
    let mut rep = Report::new();
    rep.push(tally("ker R = (ran Rᵗ)⊥ and ran R = (ker Rᵗ)⊥", &col(0)));
    rep.push(tally("dim ker R + dim ran R = dim R", &col(1)));
    rep.push(tally("ran Rᵗ/ker R → ran R/ker Rᵗ is an isomorphism compatible with R", &col(2)));
    rep.push(tally("identity relations are units for composition", &col(3)));
    rep.push(tally("composition is associative", &col(4)));
    Ok(rep)
}

fn relation_laws(r: &LinearRelation, s: &LinearRelation, t: &LinearRelation) -> Result<[bool; 5], CliError> {
    let rt = r.transpose();
    let duality = r.kernel() == rt.range().orth_complement(r.source().form())?
        && r.range() == rt.kernel().orth_complement(r.target().form())?;
    let dims = r.kernel().dim() + r.range().dim() == r.graph().dim();

    let iso = r.reduced_iso()?;
    let tdim = r.target().dim();
    let mut reduced = iso.matrix.is_square() && iso.matrix.inverse().is_some();
    for v in r.graph().basis() {
        let (wp, w) = v.split_at(tdim);
        let lhs = iso.matrix.mul_vec(&iso.domain.coords(w)?)?;
        reduced &= lhs == iso.codomain.coords(wp)?;
    }

    let unit = LinearRelation::identity(r.target()).compose(r)? == *r
        && r.compose(&LinearRelation::identity(r.source()))? == *r;
    let assoc = t.compose(&s.compose(r)?)? == t.compose(s)?.compose(r)?;
    Ok([duality, dims, reduced, unit, assoc])
}
