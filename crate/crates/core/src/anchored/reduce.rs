use crate::exactlin::{BilinearForm, QMatrix, Quotient, Subspace};

use super::{AnchorError, AnchoredPoint};

/// `C / C⊥` with the descended form.
pub fn coisotropic_reduce_point(
    form: &BilinearForm,
    c: &Subspace,
) -> Result<(Quotient, BilinearForm), AnchorError> {
    let c_perp = c.orth_complement(form)?;
    if let Some(witness) = c_perp.witness_not_in(c)? {
        return Err(AnchorError::NotCoisotropic { witness });
    }
    let quotient = Quotient::new(c, &c_perp)?;
    let reduced = quotient.induced_form(form);
    if !reduced.is_nondegenerate() {
        return Err(AnchorError::Inconsistent("descended form is degenerate".into()));
    }
    Ok((quotient, reduced))
}

/// Pointwise pull-back along a map with differential `dΦ: T_sS → T_mM`.
///
/// Coordinates on the ambient space are `(x; v, μ) ∈ 𝔡 × T_sS × T*_sS`
/// with form `B ⊕ ⟨(v, μ), (v', μ')⟩ = μ(v') + μ'(v)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    /// `C / C⊥` with `C = {(x; v, μ) : dΦ v = a x}`.
    pub quotient: Quotient,
    pub form: BilinearForm,
    /// Anchor `[x; v, μ] ↦ v` in the quotient basis.
    pub anchor: QMatrix,
}

pub fn pullback_point(pt: &AnchoredPoint, dphi: &QMatrix) -> Result<Pullback, AnchorError> {
    let a = pt.anchor_exact()?;
    let (n, k) = (pt.algebra().dim(), pt.chart_dim());
    if dphi.nrows() != k {
        return Err(AnchorError::Shape {
            expected: k,
            found: dphi.nrows(),
        });
    }
    let s = dphi.ncols();
    if !Subspace::column_space(dphi)
        .sum(&Subspace::column_space(a))?
        .is_full()
    {
        return Err(AnchorError::NotTransverse);
    }
    // constraint a x − dΦ v = 0
    let mut cons = QMatrix::zeros(k, n + 2 * s);
    for r in 0..k {
        for i in 0..n {
            cons[(r, i)] = a[(r, i)].clone();
        }
        for j in 0..s {
            cons[(r, n + j)] = -dphi[(r, j)].clone();
        }
    }
    let c = Subspace::kernel_of(&cons);
    let ambient = pt.algebra().form().direct_sum(&BilinearForm::standard_split(s));
    let (quotient, form) = coisotropic_reduce_point(&ambient, &c)?;
    let expected = (n + 2 * s) as isize - 2 * k as isize;
    if quotient.dim() as isize != expected {
        return Err(AnchorError::Inconsistent(format!(
            "pull-back has rank {}, expected {expected}",
            quotient.dim()
        )));
    }
    let cols: Vec<_> = quotient
        .complement()
        .iter()
        .map(|w| w[n..n + s].to_vec())
        .collect();
    let anchor = QMatrix::from_columns(s, &cols)?;
    Ok(Pullback {
        quotient,
        form,
        anchor,
    })
}
