use num_traits::Zero;
use serde::Serialize;

use crate::exactlin::{q, BilinearForm, Quotient, Subspace, Q};

use super::{Bivector, LagError, LinearRelation};

/// A vector space with a form of split signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpace {
    form: BilinearForm,
}

impl SplitSpace {
    pub fn new(form: BilinearForm) -> Result<Self, LagError> {
        if !form.dim().is_multiple_of(2) || !form.is_split() {
            return Err(LagError::NotSplit);
        }
        Ok(Self { form })
    }

    /// `Q^{2n}` with `[[0, I], [I, 0]]`.
    pub fn standard(n: usize) -> Self {
        Self {
            form: BilinearForm::standard_split(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn negated(&self) -> Self {
        Self {
            form: self.form.negated(),
        }
    }

    pub fn product(&self, other: &SplitSpace) -> Self {
        Self {
            form: self.form.direct_sum(&other.form),
        }
    }
}

/// `W = E ⊕ F` with `E`, `F` Lagrangian, and dual bases `⟨e_i, f^j⟩ = δ_ij`
/// where `e_i` is the canonical basis of `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianSplitting {
    form: BilinearForm,
    e: Subspace,
    f: Subspace,
    f_dual: Vec<Vec<Q>>,
}

impl LagrangianSplitting {
    pub fn new(form: &BilinearForm, e: &Subspace, f: &Subspace) -> Result<Self, LagError> {
        if !e.is_lagrangian(form)? {
            return Err(LagError::NotLagrangian("E"));
        }
        if !f.is_lagrangian(form)? {
            return Err(LagError::NotLagrangian("F"));
        }
        if !e.intersect(f)?.is_zero() {
            return Err(LagError::NotTransverse);
        }
        // f^j = Σ_k C_jk F_k with C = (G⁻¹)ᵀ, G_ik = <e_i, F_k>
        let g = form.gram(e.basis(), f.basis());
        let c = g.inverse().ok_or(LagError::NotTransverse)?.transpose();
        let f_dual = (0..c.nrows())
            .map(|j| {
                let mut v = vec![Q::zero(); form.dim()];
                for (k, fk) in f.basis().iter().enumerate() {
                    if c[(j, k)].is_zero() {
                        continue;
                    }
                    for (vi, x) in v.iter_mut().zip(fk) {
                        *vi += &c[(j, k)] * x;
                    }
                }
                v
            })
            .collect();
        Ok(Self {
            form: form.clone(),
            e: e.clone(),
            f: f.clone(),
            f_dual,
        })
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn e(&self) -> &Subspace {
        &self.e
    }

    pub fn f(&self) -> &Subspace {
        &self.f
    }

    pub fn e_basis(&self) -> &[Vec<Q>] {
        self.e.basis()
    }

    /// The basis of `F` dual to [`Self::e_basis`].
    pub fn f_dual(&self) -> &[Vec<Q>] {
        &self.f_dual
    }

    pub fn swapped(&self) -> Self {
        Self::new(&self.form, &self.f, &self.e).expect("same splitting, roles exchanged")
    }

    pub fn pr_e(&self, w: &[Q]) -> Vec<Q> {
        combine(
            self.form.dim(),
            self.f_dual.iter().map(|f| self.form.eval(f, w)),
            self.e.basis(),
        )
    }

    pub fn pr_f(&self, w: &[Q]) -> Vec<Q> {
        combine(
            self.form.dim(),
            self.e.basis().iter().map(|e| self.form.eval(e, w)),
            &self.f_dual,
        )
    }

    /// `Π = ½ Σ e_i ∧ f^i`.
    pub fn bivector(&self) -> Bivector {
        let pairs: Vec<(Vec<Q>, Vec<Q>)> = self
            .e
            .basis()
            .iter()
            .cloned()
            .zip(self.f_dual.iter().cloned())
            .collect();
        Bivector::sum_of_wedges(self.form.dim(), &q(1, 2), &pairs)
    }
}

fn combine(n: usize, coeffs: impl Iterator<Item = Q>, basis: &[Vec<Q>]) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    for (c, b) in coeffs.zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (vi, x) in v.iter_mut().zip(b) {
            *vi += &c * x;
        }
    }
    v
}

/// A reduced splitting on `W1 / W1⊥`, in quotient coordinates.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub quotient: Quotient,
    pub splitting: LagrangianSplitting,
    pub bivector: Bivector,
}

/// Reduces the splitting bivector to `W1 / W1⊥`. Succeeds iff
/// `W0 = (W0 ∩ E) ⊕ (W0 ∩ F)` for `W0 = W1⊥`.
pub fn reduce_bivector(s: &LagrangianSplitting, w1: &Subspace) -> Result<Reduction, LagError> {
    let form = s.form();
    if !w1.is_coisotropic(form)? {
        return Err(LagError::NotCoisotropic);
    }
    let w0 = w1.orth_complement(form)?;
    for w in w0.basis() {
        if !w0.contains(&s.pr_e(w))? {
            return Err(LagError::Decomposition { witness: w.clone() });
        }
    }
    let quotient = Quotient::new(w1, &w0)?;
    let red_form = quotient.induced_form(form);
    let e_red = quotient.image_of(s.e())?;
    let f_red = quotient.image_of(s.f())?;
    let splitting = LagrangianSplitting::new(&red_form, &e_red, &f_red)?;
    let bivector = splitting.bivector();
    Ok(Reduction {
        quotient,
        splitting,
        bivector,
    })
}

/// Which part of the relatedness definition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    /// `R_red(E_red) ≠ E'_red`.
    EMismatch,
    /// `R_red(F_red) ≠ F'_red`.
    FMismatch,
    /// `ker(R) ≠ (ker(R) ∩ E) ⊕ (ker(R) ∩ F)`.
    KernelNotSplit,
    /// `ran(R) ≠ (ran(R) ∩ E') ⊕ (ran(R) ∩ F')`.
    RangeNotSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relatedness {
    pub reasons: Vec<Reason>,
}

impl Relatedness {
    pub fn related(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Whether `R_red` takes `E_red` onto `E'_red`.
pub fn related_lagrangian(
    e: &Subspace,
    e_prime: &Subspace,
    r: &LinearRelation,
) -> Result<bool, LagError> {
    let iso = r.reduced_iso()?;
    Ok(iso.map_subspace(e)? == iso.codomain.image_of(e_prime)?)
}

fn splits(s: &Subspace, a: &Subspace, b: &Subspace) -> Result<bool, LagError> {
    Ok(s.intersect(a)?.sum(&s.intersect(b)?)? == *s)
}

pub fn related_splitting(
    (e, f): (&Subspace, &Subspace),
    (e_prime, f_prime): (&Subspace, &Subspace),
    r: &LinearRelation,
) -> Result<Relatedness, LagError> {
    let iso = r.reduced_iso()?;
    let mut reasons = Vec::new();
    if iso.map_subspace(e)? != iso.codomain.image_of(e_prime)? {
        reasons.push(Reason::EMismatch);
    }
    if iso.map_subspace(f)? != iso.codomain.image_of(f_prime)? {
        reasons.push(Reason::FMismatch);
    }
    if !splits(&r.kernel(), e, f)? {
        reasons.push(Reason::KernelNotSplit);
    }
    if !splits(&r.range(), e_prime, f_prime)? {
        reasons.push(Reason::RangeNotSplit);
    }
    Ok(Relatedness { reasons })
}
