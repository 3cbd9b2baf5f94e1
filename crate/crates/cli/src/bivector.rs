//! `courantlab bivector`: the splitting bivector at one point.

use std::sync::Arc;

use courantlab::anchored::{Anchor, AnchoredPoint};
use courantlab::exactlin::{format_q, unit_vec, QMatrix, Subspace};
use courantlab::lagrel::Bivector;
use courantlab::liegrp::{builtin_context, double_action_anchor};
use courantlab::quadlie::catalog::{abelian_split2, antidiagonal, diagonal, sl2_triangular_complement};
use courantlab::report::{Check, Report};
use num_traits::One;
use serde::Serialize;

use crate::args::BivectorOpts;
use crate::input::{parse_matrix, parse_rows};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct BivectorData {
    pub ctx: String,
    pub point: Vec<Vec<String>>,
    pub e: Vec<Vec<String>>,
    pub f: Vec<Vec<String>>,
    /// `π` in chart coordinates.
    pub bivector: Vec<Vec<String>>,
    pub rank: usize,
    /// `dim a(F) − dim(L ∩ E)`, absent when the stabilizer is not coisotropic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_formula: Option<usize>,
    /// `L = a*(T*M) + (ker a ∩ F)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaf_condition: Option<bool>,
}

fn strings(rows: &[Vec<courantlab::exactlin::Q>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(format_q).collect()).collect()
}

fn named_subspace(ctx: &str, text: &str, ambient: usize) -> Result<Subspace, CliError> {
    let half = ambient / 2;
    let unit = |i: usize| Subspace::span(ambient, &[unit_vec(ambient, i)]).expect("dims");
    Ok(match (ctx, text) {
        (_, "diag") => diagonal(half),
        (_, "antidiag") => antidiagonal(half),
        ("sl2-double", "triangular") => sl2_triangular_complement(),
        ("abelian-2", "e1") => unit(0),
        ("abelian-2", "e2") => unit(1),
        _ => {
            let rows = parse_rows(text)?;
            if rows.iter().any(|r| r.len() != ambient) {
                return Err(CliError::Usage(format!(
                    "{text:?} is neither a known subspace name nor a list of {ambient}-vectors"
                )));
            }
            Subspace::span(ambient, &rows).map_err(|e| CliError::Usage(e.to_string()))?
        }
    })
}

/// The anchored point of a context: the action of `𝔤 ⊕ 𝔤̄` on `G` at a
/// group element, or for `abelian-2` the identity anchor of `Q²`.
fn anchored_point(ctx: &str, point: Option<&str>) -> Result<(AnchoredPoint, QMatrix), CliError> {
    if ctx == "abelian-2" {
        let g = match point {
            Some(p) => parse_matrix(p)?,
            None => QMatrix::identity(2),
        };
        let pt = AnchoredPoint::new_unchecked(Arc::new(abelian_split2()), Anchor::Exact(QMatrix::identity(2)))?;
        return Ok((pt, g));
    }
    let group = builtin_context(ctx, 0, 0)?;
    let g = match point {
        Some(p) => parse_matrix(p)?,
        None => group.identity(),
    };
    let n = group.ambient_size();
    if g.nrows() != n || g.ncols() != n {
        return Err(CliError::Usage(format!("point must be a {n}×{n} matrix")));
    }
    if g.determinant() != Some(courantlab::exactlin::Q::one()) {
        return Err(CliError::Invalid(format!("point has determinant ≠ 1 in {ctx}")));
    }
    Ok((double_action_anchor(&group, &g)?, g))
}

pub fn run(o: &BivectorOpts) -> Result<(Report, BivectorData), CliError> {
    let (pt, g) = anchored_point(&o.ctx, o.point.as_deref())?;
    let n = pt.algebra().dim();
    let (de, df) = if o.ctx == "abelian-2" { ("e1", "e2") } else { ("diag", "antidiag") };
    let mut e = named_subspace(&o.ctx, o.e.as_deref().unwrap_or(de), n)?;
    let mut f = named_subspace(&o.ctx, o.f.as_deref().unwrap_or(df), n)?;
    if o.swap {
        std::mem::swap(&mut e, &mut f);
    }
    let mut rep = Report::new();
    if let Err(err) = pt.splitting(&e, &f) {
        return Err(CliError::Invalid(format!("invalid splitting: {err}")));
    }
    rep.push(Check::pass("E and F are transverse Lagrangians"));
    let pi: Bivector = pt.bivector_at(&e, &f)?;
    let rank = pi.rank();
    let rank_formula = pt.rank_formula(&e, &f).ok();
    if let Some(r) = rank_formula {
        rep.push(Check::flag("rank formula", r == rank, format!("formula {r}, matrix rank {rank}")));
    }
    let coisotropic = pt.check_coisotropic_stabilizer().map(|c| c.coisotropic).unwrap_or(false);
    let lagrangian = if coisotropic {
        Some(strings(pt.drinfeld_lagrangian(&f)?.basis()))
    } else {
        None
    };
    let leaf_condition = if coisotropic {
        Some(pt.leaf_condition(&e, &f)?.condition)
    } else {
        None
    };
    let data = BivectorData {
        ctx: o.ctx.clone(),
        point: strings(&g.rows_vec()),
        e: strings(e.basis()),
        f: strings(f.basis()),
        bivector: strings(&pi.matrix().rows_vec()),
        rank,
        rank_formula,
        lagrangian,
        leaf_condition,
    };
    Ok((rep, data))
}

pub fn render(d: &BivectorData) -> String {
    let width = d.bivector.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    let mut s = String::from("π =\n");
    for row in &d.bivector {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        s.push_str(&format!("  [ {} ]\n", cells.join("  ")));
    }
    s.push_str(&format!("rank {}", d.rank));
    if let Some(r) = d.rank_formula {
        s.push_str(&format!(" (formula {r})"));
    }
    s.push('\n');
    if let Some(l) = &d.lagrangian {
        let vs: Vec<String> = l.iter().map(|v| format!("({})", v.join(", "))).collect();
        s.push_str(&format!("L = span {}\n", vs.join(", ")));
    }
    match d.leaf_condition {
        Some(c) => s.push_str(&format!("leaf condition: {c}\n")),
        None => s.push_str("leaf condition: n/a (stabilizer not coisotropic)\n"),
    }
    s
}
