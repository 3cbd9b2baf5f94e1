use num_traits::Zero;
use serde::Serialize;

use crate::exactlin::{concat, serde_qvecs, BilinearForm, QMatrix, Quotient, Subspace, Q};

use super::{LagError, SplitSpace};

/// A Lagrangian subspace of `W' ⊕ W̄`, read as a morphism `W ⇢ W'`. Graph
/// vectors are stored as `(w', w)`: target block first.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRelation {
    source: SplitSpace,
    target: SplitSpace,
    graph: Subspace,
}

impl LinearRelation {
    pub fn new(target: SplitSpace, source: SplitSpace, graph: Subspace) -> Result<Self, LagError> {
        let r = Self::new_unchecked(target, source, graph)?;
        if !r.graph.is_lagrangian(&r.graph_form())? {
            return Err(LagError::NotLagrangian("graph"));
        }
        Ok(r)
    }

    /// Skips the Lagrangian check; only shapes are verified.
    pub fn new_unchecked(
        target: SplitSpace,
        source: SplitSpace,
        graph: Subspace,
    ) -> Result<Self, LagError> {
        if graph.ambient() != target.dim() + source.dim() {
            return Err(LagError::SpaceMismatch);
        }
        Ok(Self {
            source,
            target,
            graph,
        })
    }

    /// Graph `{(a w, w)}` of a linear map.
    pub fn from_map(target: SplitSpace, source: SplitSpace, a: &QMatrix) -> Result<Self, LagError> {
        let n = source.dim();
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|i| concat(&[&a.column(i), &crate::exactlin::unit_vec(n, i)]))
            .collect();
        let graph = Subspace::span(target.dim() + n, &rows)?;
        Self::new(target, source, graph)
    }

    pub fn identity(w: &SplitSpace) -> Self {
        Self::from_map(w.clone(), w.clone(), &QMatrix::identity(w.dim()))
            .expect("identity preserves the form")
    }

    /// `R1 × R2: W1 × W2 ⇢ W1' × W2'`.
    pub fn product(r1: &LinearRelation, r2: &LinearRelation) -> Self {
        let (t1, s1) = (r1.target.dim(), r1.source.dim());
        let (t2, s2) = (r2.target.dim(), r2.source.dim());
        let n = t1 + t2 + s1 + s2;
        let mut rows = Vec::new();
        for g in r1.graph.basis() {
            let mut v = vec![Q::zero(); n];
            v[..t1].clone_from_slice(&g[..t1]);
            v[t1 + t2..t1 + t2 + s1].clone_from_slice(&g[t1..]);
            rows.push(v);
        }
        for g in r2.graph.basis() {
            let mut v = vec![Q::zero(); n];
            v[t1..t1 + t2].clone_from_slice(&g[..t2]);
            v[t1 + t2 + s1..].clone_from_slice(&g[t2..]);
            rows.push(v);
        }
        Self {
            target: r1.target.product(&r2.target),
            source: r1.source.product(&r2.source),
            graph: Subspace::span(n, &rows).expect("consistent lengths"),
        }
    }

    pub fn source(&self) -> &SplitSpace {
        &self.source
    }

    pub fn target(&self) -> &SplitSpace {
        &self.target
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    /// The form `<.,.>' ⊕ (-<.,.>)` on `W' ⊕ W̄`.
    pub fn graph_form(&self) -> BilinearForm {
        self.target
            .form()
            .direct_sum(&self.source.form().negated())
    }

    fn t(&self) -> usize {
        self.target.dim()
    }

    fn target_part<'a>(&self, g: &'a [Q]) -> &'a [Q] {
        &g[..self.t()]
    }

    fn source_part<'a>(&self, g: &'a [Q]) -> &'a [Q] {
        &g[self.t()..]
    }

    pub fn is_related(&self, w: &[Q], w_prime: &[Q]) -> Result<bool, LagError> {
        Ok(self.graph.contains(&concat(&[w_prime, w]))?)
    }

    /// `{w : w ~ 0}`.
    pub fn kernel(&self) -> Subspace {
        let zero_target = Subspace::zero(self.t()).product(&Subspace::full(self.source.dim()));
        self.graph
            .intersect(&zero_target)
            .expect("same ambient")
            .project_block(self.t(), self.source.dim())
    }

    /// Projection of the graph to the target.
    pub fn range(&self) -> Subspace {
        self.graph.project_block(0, self.t())
    }

    pub fn transpose(&self) -> LinearRelation {
        let (t, s) = (self.t(), self.source.dim());
        let rows: Vec<Vec<Q>> = self
            .graph
            .basis()
            .iter()
            .map(|g| concat(&[&g[t..], &g[..t]]))
            .collect();
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            graph: Subspace::span(t + s, &rows).expect("consistent lengths"),
        }
    }

    /// `self ∘ r`: `{(w'', w) : ∃ w', (w'', w') ∈ self, (w', w) ∈ r}`.
    pub fn compose(&self, r: &LinearRelation) -> Result<LinearRelation, LagError> {
        if self.source != r.target {
            return Err(LagError::SpaceMismatch);
        }
        let sb = self.graph.basis();
        let rb = r.graph.basis();
        let mid = self.source.dim();
        // columns: middle components of self's and (negated) r's generators
        let mut cols: Vec<Vec<Q>> = sb.iter().map(|g| self.source_part(g).to_vec()).collect();
        cols.extend(rb.iter().map(|g| r.target_part(g).iter().map(|x| -x).collect()));
        let m = QMatrix::from_columns(mid, &cols)?;
        let (ts, sr) = (self.t(), r.source.dim());
        let rows: Vec<Vec<Q>> = m
            .nullspace()
            .iter()
            .map(|c| {
                let mut v = vec![Q::zero(); ts + sr];
                for (ci, g) in c[..sb.len()].iter().zip(sb) {
                    if ci.is_zero() {
                        continue;
                    }
                    for (vi, gi) in v[..ts].iter_mut().zip(self.target_part(g)) {
                        *vi += ci * gi;
                    }
                }
                for (ci, g) in c[sb.len()..].iter().zip(rb) {
                    if ci.is_zero() {
                        continue;
                    }
                    for (vi, gi) in v[ts..].iter_mut().zip(r.source_part(g)) {
                        *vi += ci * gi;
                    }
                }
                v
            })
            .collect();
        Ok(Self {
            target: self.target.clone(),
            source: r.source.clone(),
            graph: Subspace::span(ts + sr, &rows)?,
        })
    }

    /// Graph generators whose target part lies in `e_prime`, as coefficient
    /// vectors on the graph basis.
    fn coefficients_into(&self, e_prime: &Subspace) -> Result<Vec<Vec<Q>>, LagError> {
        let ann = e_prime.annihilator().basis_matrix();
        let targets: Vec<Vec<Q>> = self
            .graph
            .basis()
            .iter()
            .map(|g| self.target_part(g).to_vec())
            .collect();
        let tmat = QMatrix::from_columns(self.t(), &targets)?;
        Ok(ann.mul(&tmat)?.nullspace())
    }

    fn combine(&self, c: &[Q], source: bool) -> Vec<Q> {
        let len = if source { self.source.dim() } else { self.t() };
        let mut v = vec![Q::zero(); len];
        for (ci, g) in c.iter().zip(self.graph.basis()) {
            if ci.is_zero() {
                continue;
            }
            let part = if source {
                self.source_part(g)
            } else {
                self.target_part(g)
            };
            for (vi, gi) in v.iter_mut().zip(part) {
                *vi += ci * gi;
            }
        }
        v
    }

    /// `{x : ∃ x' ∈ E', x ~ x'}`, with no transversality requirement.
    pub fn backward_set(&self, e_prime: &Subspace) -> Result<Subspace, LagError> {
        if e_prime.ambient() != self.t() {
            return Err(LagError::SpaceMismatch);
        }
        let rows: Vec<Vec<Q>> = self
            .coefficients_into(e_prime)?
            .iter()
            .map(|c| self.combine(c, true))
            .collect();
        Ok(Subspace::span(self.source.dim(), &rows)?)
    }

    /// `{x' : ∃ x ∈ E, x ~ x'}`: the backward set through the transpose.
    pub fn forward_set(&self, e: &Subspace) -> Result<Subspace, LagError> {
        self.transpose().backward_set(e)
    }

    /// Backward image of a Lagrangian `E'` under the transversality
    /// condition `x' ∈ E', 0 ~ x' ⇒ x' = 0`, together with the comparison
    /// map `α`.
    pub fn backward_image(&self, e_prime: &Subspace) -> Result<BackwardImage, LagError> {
        if e_prime.ambient() != self.t() {
            return Err(LagError::SpaceMismatch);
        }
        if !e_prime.is_lagrangian(self.target.form())? {
            return Err(LagError::NotLagrangian("target subspace"));
        }
        let bad = e_prime.intersect(&self.transpose().kernel())?;
        if let Some(w) = bad.basis().first() {
            return Err(LagError::Transversality { witness: w.clone() });
        }
        let coeffs = self.coefficients_into(e_prime)?;
        let sources: Vec<Vec<Q>> = coeffs.iter().map(|c| self.combine(c, true)).collect();
        let targets: Vec<Vec<Q>> = coeffs.iter().map(|c| self.combine(c, false)).collect();
        let image = Subspace::span(self.source.dim(), &sources)?;
        // α on the canonical basis: solve for a combination of the related
        // pairs producing each basis vector
        let smat = QMatrix::from_columns(self.source.dim(), &sources)?;
        let alpha = image
            .basis()
            .iter()
            .map(|x| {
                let c = smat.solve(x)?.expect("basis vector lies in the span");
                let mut v = vec![Q::zero(); self.t()];
                for (ci, t) in c.iter().zip(&targets) {
                    for (vi, ti) in v.iter_mut().zip(t) {
                        *vi += ci * ti;
                    }
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, LagError>>()?;
        Ok(BackwardImage { image, alpha })
    }

    /// Forward image `R ∘ E`, as the backward image through the transpose.
    pub fn forward_image(&self, e: &Subspace) -> Result<BackwardImage, LagError> {
        self.transpose().backward_image(e)
    }

    /// A vector `w'` with `w ~ w'`, if one exists.
    pub fn related_to(&self, w: &[Q]) -> Result<Option<Vec<Q>>, LagError> {
        let sources: Vec<Vec<Q>> = self
            .graph
            .basis()
            .iter()
            .map(|g| self.source_part(g).to_vec())
            .collect();
        let smat = QMatrix::from_columns(self.source.dim(), &sources)?;
        Ok(smat.solve(w)?.map(|c| self.combine(&c, false)))
    }

    /// The isomorphism `ran(Rᵗ)/ker(R) → ran(R)/ker(Rᵗ)`.
    pub fn reduced_iso(&self) -> Result<ReducedIso, LagError> {
        let rt = self.transpose();
        let domain = Quotient::new(&rt.range(), &self.kernel())?;
        let codomain = Quotient::new(&self.range(), &rt.kernel())?;
        let cols = domain
            .complement()
            .iter()
            .map(|w| {
                let wp = self
                    .related_to(w)?
                    .expect("elements of ran(Rᵗ) are related to something");
                Ok(codomain.coords(&wp)?)
            })
            .collect::<Result<Vec<_>, LagError>>()?;
        let matrix = QMatrix::from_columns(codomain.dim(), &cols)?;
        Ok(ReducedIso {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson {
            source_dim: self.source.dim(),
            target_dim: self.t(),
            graph_basis: self.graph.basis().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationJson {
    pub source_dim: usize,
    pub target_dim: usize,
    #[serde(with = "serde_qvecs")]
    pub graph_basis: Vec<Vec<Q>>,
}

/// `E = E' ∘ R` with `alpha[i]` the unique element of `E'` related to the
/// `i`-th canonical basis vector of `E`.
#[derive(Clone, Debug)]
pub struct BackwardImage {
    pub image: Subspace,
    pub alpha: Vec<Vec<Q>>,
}

impl BackwardImage {
    pub fn apply_alpha(&self, x: &[Q]) -> Result<Vec<Q>, LagError> {
        let c = self
            .image
            .coordinates(x)?
            .ok_or(crate::exactlin::LinError::NotContained)?;
        let n = self.alpha.first().map_or(0, |a| a.len());
        let mut v = vec![Q::zero(); n];
        for (ci, a) in c.iter().zip(&self.alpha) {
            for (vi, ai) in v.iter_mut().zip(a) {
                *vi += ci * ai;
            }
        }
        Ok(v)
    }
}

/// Matrix of the reduced isomorphism in the quotient bases of `domain` and
/// `codomain`.
#[derive(Clone, Debug)]
pub struct ReducedIso {
    pub domain: Quotient,
    pub codomain: Quotient,
    pub matrix: QMatrix,
}

impl ReducedIso {
    /// Image of `S ⊆ source` reduced: `(S ∩ W1)` mapped to codomain
    /// coordinates.
    pub fn map_subspace(&self, s: &Subspace) -> Result<Subspace, LagError> {
        Ok(self.domain.image_of(s)?.image(&self.matrix)?)
    }
}
