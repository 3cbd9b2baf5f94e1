use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::One;

use crate::anchored::{Anchor, AnchoredPoint};
use crate::exactlin::{qi, qvec, QMatrix, Subspace, Q};
use crate::quadlie::catalog::{abelian_triple, sl2_triangular_triple};
use crate::quadlie::{ManinTriple, QuadraticLieAlgebra};
use crate::report::{Check, Report};

use super::context::{abelian2_context, line_context, sl2_context, sl2_pair_context};
use super::{mm, GroupContext, LieError};

type Field = dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync;

/// A Manin triple `(𝔡, 𝔤₁, 𝔤₂)` realized by a group `D` and a subgroup
/// `Φ: G₁ → D` integrating `𝔤₁`.
#[derive(Clone)]
pub struct TripleContext {
    name: String,
    pub triple: ManinTriple,
    pub d: Arc<GroupContext>,
    pub g1: Arc<GroupContext>,
    /// `dΦ` in the two bases: `dim 𝔡 × dim 𝔤₁`.
    pub inclusion: QMatrix,
    left_inverse: QMatrix,
    p1: QMatrix,
    p2: QMatrix,
    embed: fn(&QMatrix) -> QMatrix,
    embed_f64: fn(&DMatrix<f64>) -> DMatrix<f64>,
}

impl std::fmt::Debug for TripleContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TripleContext").field("name", &self.name).finish_non_exhaustive()
    }
}

impl TripleContext {
    pub fn new(
        name: impl Into<String>,
        triple: ManinTriple,
        d: GroupContext,
        g1: GroupContext,
        inclusion: QMatrix,
        embed: fn(&QMatrix) -> QMatrix,
        embed_f64: fn(&DMatrix<f64>) -> DMatrix<f64>,
    ) -> Result<Self, LieError> {
        let n = triple.d.dim();
        if d.dim() != n || inclusion.nrows() != n || inclusion.ncols() != g1.dim() {
            return Err(LieError::Invalid("dimensions of D, G₁ and dΦ disagree".into()));
        }
        if Subspace::column_space(&inclusion) != triple.g1 || inclusion.rank() != g1.dim() {
            return Err(LieError::Invalid("dΦ is not an isomorphism onto 𝔤₁".into()));
        }
        let k = triple.g1.dim();
        let mut cols = triple.g1.basis().to_vec();
        cols.extend(triple.g2.basis().iter().cloned());
        let m = QMatrix::from_columns(n, &cols)?;
        let m_inv = m
            .inverse()
            .ok_or_else(|| LieError::Invalid("𝔤₁ and 𝔤₂ are not complementary".into()))?;
        let mut keep = QMatrix::zeros(n, n);
        for i in 0..k {
            keep[(i, i)] = Q::one();
        }
        let p1 = mm(&mm(&m, &keep), &m_inv);
        let p2 = super::msub(&QMatrix::identity(n), &p1);
        let it = inclusion.transpose();
        let left_inverse = mm(
            &mm(&it, &inclusion).inverse().expect("injective inclusion"),
            &it,
        );
        Ok(Self {
            name: name.into(),
            triple,
            d: Arc::new(d),
            g1: Arc::new(g1),
            inclusion,
            left_inverse,
            p1,
            p2,
            embed,
            embed_f64,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Projection onto `𝔤₁` along `𝔤₂`.
    pub fn p1(&self) -> &QMatrix {
        &self.p1
    }

    /// Projection onto `𝔤₂` along `𝔤₁`.
    pub fn p2(&self) -> &QMatrix {
        &self.p2
    }

    pub fn phi(&self, g: &QMatrix) -> QMatrix {
        (self.embed)(g)
    }

    pub fn phi_f64(&self, g: &DMatrix<f64>) -> DMatrix<f64> {
        (self.embed_f64)(g)
    }

    pub fn algebra(&self) -> Arc<QuadraticLieAlgebra> {
        self.d.algebra_arc().clone()
    }

    /// Triple axioms, both group contexts, `dΦ` a homomorphism, `Φ` maps
    /// samples into `D`, and `Φ` differentiates to `dΦ`.
    pub fn validate(&self) -> Report {
        let mut rep = self.triple.validate();
        rep.extend(self.d.validate());
        rep.extend(self.g1.validate());
        let (alg1, alg) = (self.g1.algebra(), self.d.algebra());
        let k = alg1.dim();
        let col = |x: &[Q]| self.inclusion.mul_vec(x).expect("shape");
        let hom = (0..k).all(|i| {
            (0..k).all(|j| {
                col(&alg1.bracket_basis(i, j))
                    == alg.bracket(&self.inclusion.column(i), &self.inclusion.column(j))
            })
        });
        rep.push(Check::flag("dΦ is a Lie algebra homomorphism", hom, "bracket mismatch"));
        let in_d = self.g1.samples().iter().all(|g| {
            let p = self.phi(g);
            p.determinant() == Some(Q::one()) && self.d.ad(&p).is_ok()
        });
        rep.push(Check::flag("Φ maps samples into D", in_d, "sample outside D"));
        let eps = 1e-6;
        let mut worst: f64 = 0.0;
        for i in 0..k {
            let x = DVector::from_fn(k, |a, _| if a == i { eps } else { 0.0 });
            let plus = self.phi_f64(&self.g1.exp(&x));
            let minus = self.phi_f64(&self.g1.exp(&-&x));
            let fd = (plus - minus) / (2.0 * eps);
            let expected = self.d.from_coords(&self.inclusion.column(i)).to_f64();
            worst = worst.max((fd - expected).amax());
        }
        rep.push(Check::residual("Φ differentiates to dΦ", worst, 1e-6));
        rep
    }

    /// `ζ ↦ p₁(Ad_{Φ(g)} ζ)ᴿ` in left-trivialized coordinates of `G₁`.
    pub fn dressing_right(&self, g: &QMatrix) -> Result<QMatrix, LieError> {
        let ad = self.d.ad(&self.phi(g))?;
        let ad_inv = ad.inverse().expect("Ad is invertible");
        Ok(mm(&mm(&mm(&self.left_inverse, &ad_inv), &self.p1), &ad))
    }

    /// `ζ ↦ −p₁(Ad_{Φ(g⁻¹)} ζ)ᴸ` in left-trivialized coordinates of `G₁`.
    pub fn dressing_left(&self, g: &QMatrix) -> Result<QMatrix, LieError> {
        let ad_inv = self.d.ad(&self.phi(g))?.inverse().expect("Ad is invertible");
        Ok(mm(&mm(&self.left_inverse, &self.p1), &ad_inv).scale(&qi(-1)))
    }

    /// The two dressing anchors at `g`, over `𝔡`.
    pub fn dressing_anchor(&self, g: &QMatrix) -> Result<(AnchoredPoint, AnchoredPoint), LieError> {
        let alg = self.algebra();
        Ok((
            AnchoredPoint::new_unchecked(alg.clone(), Anchor::Exact(self.dressing_right(g)?))?,
            AnchoredPoint::new_unchecked(alg, Anchor::Exact(self.dressing_left(g)?))?,
        ))
    }

    /// Dressing fields in the exponential chart of `G₁` centred at `g0`.
    pub fn dressing_field(&self, g0: &DMatrix<f64>, right: bool) -> Arc<Field> {
        let d = self.d.clone();
        let embed = self.embed_f64;
        let p1 = self.p1.to_f64();
        let li = self.left_inverse.to_f64();
        self.g1.chart_field(g0.clone(), move |m| {
            let ad = d.ad_f64(&embed(m));
            let ad_inv = ad.clone().try_inverse().expect("Ad is invertible");
            if right {
                &li * ad_inv * &p1 * ad
            } else {
                -(&li * &p1 * ad_inv)
            }
        })
    }

    /// `φᴿ(ζ) = (p₂(Ad_d ζ), ζ)` as a `2n × n` matrix at `d ∈ D`.
    pub fn phi_r(&self, d: &QMatrix) -> Result<QMatrix, LieError> {
        let top = mm(&self.p2, &self.d.ad(d)?);
        Ok(QMatrix::vstack(top.ncols(), &[&top, &QMatrix::identity(top.ncols())])?)
    }

    pub fn phi_r_f64(&self, d: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.d.dim();
        let top = self.p2.to_f64() * self.d.ad_f64(d);
        let mut out = DMatrix::zeros(2 * n, n);
        out.view_mut((0, 0), (n, n)).copy_from(&top);
        out.view_mut((n, 0), (n, n)).fill_with_identity();
        out
    }
}

fn diag_embed(g: &QMatrix) -> QMatrix {
    QMatrix::block_diag(&[g, g])
}

fn diag_embed_f64(g: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(4, 4);
    out.view_mut((0, 0), (2, 2)).copy_from(g);
    out.view_mut((2, 2), (2, 2)).copy_from(g);
    out
}

fn line_embed(g: &QMatrix) -> QMatrix {
    let mut m = QMatrix::identity(3);
    m[(0, 2)] = g[(0, 1)].clone();
    m
}

fn line_embed_f64(g: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::identity(3, 3);
    m[(0, 2)] = g[(0, 1)];
    m
}

/// Built-in triples: `sl2-triangular-triple` is `(sl₂ ⊕ sl₂̄, 𝔤_Δ, 𝔩)` with
/// `G₁ = SL₂` embedded diagonally in `SL₂ × SL₂`; `abelian-2` is
/// `(Q², span e₁, span e₂)` with `G₁ = R` the first coordinate line.
pub fn builtin_triple(name: &str, samples: usize, seed: u64) -> Result<TripleContext, LieError> {
    match name {
        "sl2-triangular-triple" => {
            let inc = QMatrix::vstack(3, &[&QMatrix::identity(3), &QMatrix::identity(3)])?;
            TripleContext::new(
                name,
                sl2_triangular_triple(),
                sl2_pair_context(samples, seed ^ 0x5eed),
                sl2_context(samples, seed),
                inc,
                diag_embed,
                diag_embed_f64,
            )
        }
        "abelian-2" => TripleContext::new(
            name,
            abelian_triple(),
            abelian2_context(samples, seed ^ 0x5eed),
            line_context(samples, seed),
            QMatrix::from_columns(2, &[qvec(&[1, 0])])?,
            line_embed,
            line_embed_f64,
        ),
        other => Err(LieError::UnknownContext(other.into())),
    }
}

/// `span{(e,e), (h,−h), (0,e)} ⊂ sl₂ ⊕ sl₂̄`: pairs of upper-triangular
/// matrices with mutually inverse diagonals.
pub fn borel_subalgebra() -> Subspace {
    Subspace::span(
        6,
        &[qvec(&[1, 0, 0, 1, 0, 0]), qvec(&[0, 1, 0, 0, -1, 0]), qvec(&[0, 0, 0, 1, 0, 0])],
    )
    .expect("consistent dims")
}
