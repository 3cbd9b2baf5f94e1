use std::sync::Arc;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::exactlin::{vec_to_strings, BilinearForm, QMatrix, Subspace, Q};
use crate::lagrel::{Bivector, LagrangianSplitting, LinearRelation, SplitSpace};
use crate::quadlie::QuadraticLieAlgebra;

use super::AnchorError;

/// The matrix of `a_m: 𝔡 → T_mM` in a chart, `dim M` rows by `dim 𝔡`
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub enum Anchor {
    Exact(QMatrix),
    Float(DMatrix<f64>),
}

impl Anchor {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Anchor::Exact(m) => (m.nrows(), m.ncols()),
            Anchor::Float(m) => m.shape(),
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Anchor::Exact(m) => m.to_f64(),
            Anchor::Float(m) => m.clone(),
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Anchor::Exact(m) => m.serialize(s),
            Anchor::Float(m) => {
                let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
                rows.serialize(s)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnchoredPoint {
    algebra: Arc<QuadraticLieAlgebra>,
    anchor: Anchor,
}

/// Result of the stabilizer test; `witness` lies in `ker(a)⊥ \ ker(a)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoisotropyCheck {
    pub coisotropic: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_witness")]
    pub witness: Option<Vec<Q>>,
}

fn ser_witness<S: serde::Serializer>(w: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
    w.as_deref().map(vec_to_strings).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeafReport {
    /// `ker(a) = ran(a*) + ker(a)∩E + ker(a)∩F`.
    pub condition: bool,
    pub ran_pi: Subspace,
    /// `a(E) ∩ a(F)`.
    pub intersection: Subspace,
}

impl AnchoredPoint {
    /// Builds the point and, for exact anchors, checks that the stabilizer
    /// is coisotropic.
    pub fn new(algebra: Arc<QuadraticLieAlgebra>, anchor: Anchor) -> Result<Self, AnchorError> {
        let pt = Self::new_unchecked(algebra, anchor)?;
        if let Anchor::Exact(_) = pt.anchor {
            if let Some(witness) = pt.check_coisotropic_stabilizer()?.witness {
                return Err(AnchorError::NotCoisotropic { witness });
            }
        }
        Ok(pt)
    }

    /// Only the shape is checked.
    pub fn new_unchecked(
        algebra: Arc<QuadraticLieAlgebra>,
        anchor: Anchor,
    ) -> Result<Self, AnchorError> {
        let (_, cols) = anchor.shape();
        if cols != algebra.dim() {
            return Err(AnchorError::Shape {
                expected: algebra.dim(),
                found: cols,
            });
        }
        Ok(Self { algebra, anchor })
    }

    pub fn exact(algebra: Arc<QuadraticLieAlgebra>, a: QMatrix) -> Result<Self, AnchorError> {
        Self::new(algebra, Anchor::Exact(a))
    }

    pub fn algebra(&self) -> &QuadraticLieAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.algebra
    }

    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }

    pub fn chart_dim(&self) -> usize {
        self.anchor.shape().0
    }

    pub fn form(&self) -> &BilinearForm {
        self.algebra.form()
    }

    pub fn anchor_exact(&self) -> Result<&QMatrix, AnchorError> {
        match &self.anchor {
            Anchor::Exact(m) => Ok(m),
            Anchor::Float(_) => Err(AnchorError::FloatAnchor),
        }
    }

    pub fn anchor_f64(&self) -> DMatrix<f64> {
        self.anchor.to_f64()
    }

    /// `ker(a_m)`.
    pub fn stabilizer(&self) -> Result<Subspace, AnchorError> {
        Ok(Subspace::kernel_of(self.anchor_exact()?))
    }

    pub fn check_coisotropic_stabilizer(&self) -> Result<CoisotropyCheck, AnchorError> {
        let k = self.stabilizer()?;
        let witness = k.orth_complement(self.form())?.witness_not_in(&k)?;
        Ok(CoisotropyCheck {
            coisotropic: witness.is_none(),
            witness,
        })
    }

    fn form_inverse(&self) -> Result<QMatrix, AnchorError> {
        self.form().matrix().inverse().ok_or(AnchorError::SingularForm)
    }

    /// `a* = B⁻¹ aᵀ`, so that `⟨a*μ, x⟩ = μ(a x)`.
    pub fn anchor_dual(&self) -> Result<QMatrix, AnchorError> {
        Ok(self.form_inverse()?.mul(&self.anchor_exact()?.transpose())?)
    }

    pub fn anchor_dual_f64(&self) -> Result<DMatrix<f64>, AnchorError> {
        Ok(self.form_inverse()?.to_f64() * self.anchor_f64().transpose())
    }

    pub fn splitting(&self, e: &Subspace, f: &Subspace) -> Result<LagrangianSplitting, AnchorError> {
        Ok(LagrangianSplitting::new(self.form(), e, f)?)
    }

    /// `π = ½ Σ a(e_i) ∧ a(f^i)`.
    pub fn bivector_at(&self, e: &Subspace, f: &Subspace) -> Result<Bivector, AnchorError> {
        let s = self.splitting(e, f)?;
        Ok(s.bivector().push(self.anchor_exact()?)?)
    }

    pub fn bivector_at_f64(&self, e: &Subspace, f: &Subspace) -> Result<DMatrix<f64>, AnchorError> {
        let r = self.splitting(e, f)?.bivector().to_f64();
        let a = self.anchor_f64();
        Ok(&a * r * a.transpose())
    }

    /// `L_m = ran(a*) + ker(a) ∩ F`; checked to be Lagrangian.
    pub fn drinfeld_lagrangian(&self, f: &Subspace) -> Result<Subspace, AnchorError> {
        let ran_dual = Subspace::column_space(&self.anchor_dual()?);
        let l = ran_dual.sum(&self.stabilizer()?.intersect(f)?)?;
        if !l.is_lagrangian(self.form())? {
            return Err(AnchorError::Inconsistent("L_m is not Lagrangian".into()));
        }
        Ok(l)
    }

    /// `dim a(F) − dim(L_m ∩ E)`, checked against the rank of `π`.
    pub fn rank_formula(&self, e: &Subspace, f: &Subspace) -> Result<usize, AnchorError> {
        let a = self.anchor_exact()?;
        let l = self.drinfeld_lagrangian(f)?;
        let a_f = f.image(a)?.dim();
        let le = l.intersect(e)?.dim();
        let rk = a_f
            .checked_sub(le)
            .ok_or_else(|| AnchorError::Inconsistent("dim(L∩E) exceeds dim a(F)".into()))?;
        let direct = self.bivector_at(e, f)?.rank();
        if rk != direct {
            return Err(AnchorError::Inconsistent(format!(
                "rank formula gives {rk}, matrix rank is {direct}"
            )));
        }
        Ok(rk)
    }

    /// Tests `ker(a) = ran(a*) + ker(a)∩E + ker(a)∩F`. When it holds,
    /// `ran(π♯) = a(E) ∩ a(F)` is verified.
    pub fn leaf_condition(&self, e: &Subspace, f: &Subspace) -> Result<LeafReport, AnchorError> {
        let a = self.anchor_exact()?;
        let k = self.stabilizer()?;
        let rhs = Subspace::column_space(&self.anchor_dual()?)
            .sum(&k.intersect(e)?)?
            .sum(&k.intersect(f)?)?;
        let condition = rhs == k;
        let ran_pi = Subspace::column_space(self.bivector_at(e, f)?.matrix());
        let intersection = e.image(a)?.intersect(&f.image(a)?)?;
        if !ran_pi.is_subspace_of(&intersection)? {
            return Err(AnchorError::Inconsistent("ran π♯ ⊄ a(E) ∩ a(F)".into()));
        }
        if condition && ran_pi != intersection {
            return Err(AnchorError::Inconsistent(
                "leaf condition holds but ran π♯ ≠ a(E) ∩ a(F)".into(),
            ));
        }
        Ok(LeafReport {
            condition,
            ran_pi,
            intersection,
        })
    }

    /// `𝕋_mM ⇢ 𝔡 ⊕ 𝔡̄`, `(v, μ) ~ (x, y)` iff `v = a x` and `x − y = a*μ`.
    pub fn diagonal_relation(&self) -> Result<LinearRelation, AnchorError> {
        let a = self.anchor_exact()?;
        let a_dual = self.anchor_dual()?;
        let (n, k) = (self.algebra.dim(), self.chart_dim());
        let target = SplitSpace::new(self.form().direct_sum(&self.form().negated()))?;
        let source = SplitSpace::standard(k);
        // parameter (x, μ) ↦ (x, x − a*μ ; a x, μ)
        let mut rows = Vec::with_capacity(n + k);
        for i in 0..n {
            let mut v = vec![Q::from_integer(0.into()); 2 * n + 2 * k];
            v[i] = Q::from_integer(1.into());
            v[n + i] = Q::from_integer(1.into());
            for r in 0..k {
                v[2 * n + r] = a[(r, i)].clone();
            }
            rows.push(v);
        }
        for j in 0..k {
            let mut v = vec![Q::from_integer(0.into()); 2 * n + 2 * k];
            for i in 0..n {
                v[n + i] = -a_dual[(i, j)].clone();
            }
            v[2 * n + k + j] = Q::from_integer(1.into());
            rows.push(v);
        }
        let graph = Subspace::span(2 * n + 2 * k, &rows)?;
        Ok(LinearRelation::new(target, source, graph)?)
    }

    /// `π` read off from the backward image of `E × F` under the diagonal
    /// relation, which is the graph `{(−ι_μπ, μ)}`. Checked against
    /// [`Self::bivector_at`].
    pub fn diagonal_backward(&self, e: &Subspace, f: &Subspace) -> Result<Bivector, AnchorError> {
        let k = self.chart_dim();
        let rel = self.diagonal_relation()?;
        let image = rel.backward_image(&e.product(f))?.image;
        let tangent = Subspace::span(
            2 * k,
            &(0..k).map(|i| crate::exactlin::unit_vec(2 * k, i)).collect::<Vec<_>>(),
        )?;
        if image.dim() != k || !image.intersect(&tangent)?.is_zero() {
            return Err(AnchorError::Inconsistent(
                "backward image is not transverse to T_mM".into(),
            ));
        }
        // columns (u_j; μ_j) of a basis; v = U L⁻¹ μ on the graph
        let b = image.basis_matrix().transpose();
        let mut upper = QMatrix::zeros(k, k);
        let mut lower = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                upper[(i, j)] = b[(i, j)].clone();
                lower[(i, j)] = b[(k + i, j)].clone();
            }
        }
        let inv = lower
            .inverse()
            .ok_or_else(|| AnchorError::Inconsistent("backward image is not a graph".into()))?;
        // v = −ι_μπ = −πᵀμ = πμ
        let pi = Bivector::new(upper.mul(&inv)?)?;
        if pi != self.bivector_at(e, f)? {
            return Err(AnchorError::Inconsistent(
                "backward image differs from the graph of −π".into(),
            ));
        }
        Ok(pi)
    }
}
