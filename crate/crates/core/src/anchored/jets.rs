use nalgebra::{DMatrix, DVector};

use crate::exactlin::to_f64;
use crate::report::{Check, Report};

use super::{AnchorError, AnchoredPoint};

/// First-order data of a `𝔡`-valued section at the point: its value and
/// the `dim 𝔡 × dim M` matrix of partial derivatives in the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionJet {
    pub value: DVector<f64>,
    pub jacobian: DMatrix<f64>,
}

impl SectionJet {
    pub fn constant(value: DVector<f64>, chart_dim: usize) -> Self {
        let n = value.len();
        Self {
            value,
            jacobian: DMatrix::zeros(n, chart_dim),
        }
    }

    fn is_constant(&self) -> bool {
        self.jacobian.iter().all(|x| *x == 0.0)
    }
}

struct Numeric {
    form: DMatrix<f64>,
    terms: Vec<(usize, usize, usize, f64)>,
    a: DMatrix<f64>,
    a_dual: DMatrix<f64>,
}

impl Numeric {
    fn new(pt: &AnchoredPoint) -> Result<Self, AnchorError> {
        let g = pt.algebra();
        Ok(Self {
            form: g.form().matrix().to_f64(),
            terms: g.terms().iter().map(|(i, j, k, v)| (*i, *j, *k, to_f64(v))).collect(),
            a: pt.anchor_f64(),
            a_dual: pt.anchor_dual_f64()?,
        })
    }

    fn lie(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(x.len());
        for &(i, j, k, v) in &self.terms {
            out[k] += x[i] * y[j] * v;
        }
        out
    }

    fn check(&self, s: &SectionJet) -> Result<(), AnchorError> {
        let n = self.form.nrows();
        if s.value.len() != n || s.jacobian.shape() != (n, self.a.nrows()) {
            return Err(AnchorError::Shape {
                expected: n,
                found: s.value.len(),
            });
        }
        Ok(())
    }

    /// `⟨dx, y⟩` as a covector on the chart.
    fn dpair(&self, x: &SectionJet, y: &SectionJet) -> DVector<f64> {
        x.jacobian.transpose() * (&self.form * &y.value)
    }

    fn bracket(&self, x: &SectionJet, y: &SectionJet) -> DVector<f64> {
        self.lie(&x.value, &y.value) + &y.jacobian * (&self.a * &x.value)
            - &x.jacobian * (&self.a * &y.value)
            + &self.a_dual * self.dpair(x, y)
    }
}

/// `⟦x, y⟧ = [x, y]_𝔡 + L_{a(x)} y − L_{a(y)} x + a*⟨dx, y⟩` at the point.
pub fn courant_bracket_jets(
    pt: &AnchoredPoint,
    x: &SectionJet,
    y: &SectionJet,
) -> Result<DVector<f64>, AnchorError> {
    let num = Numeric::new(pt)?;
    num.check(x)?;
    num.check(y)?;
    Ok(num.bracket(x, y))
}

/// Residuals of the pointwise Courant axioms on three jets: the Leibniz
/// rule for the pairing and the symmetric part of the bracket. When all
/// jets are constant the Jacobi identity is checked as well.
pub fn jet_axioms(
    pt: &AnchoredPoint,
    jets: [&SectionJet; 3],
    tol: f64,
) -> Result<Report, AnchorError> {
    let num = Numeric::new(pt)?;
    for j in jets {
        num.check(j)?;
    }
    let [x1, x2, x3] = jets;
    let pair = |u: &DVector<f64>, v: &DVector<f64>| u.dot(&(&num.form * v));
    let mut rep = Report::new();

    let d23 = num.dpair(x2, x3) + num.dpair(x3, x2);
    let lhs = d23.dot(&(&num.a * &x1.value));
    let rhs = pair(&num.bracket(x1, x2), &x3.value) + pair(&x2.value, &num.bracket(x1, x3));
    rep.push(Check::residual("pairing Leibniz rule", (lhs - rhs).abs(), tol));

    let d12 = num.dpair(x1, x2) + num.dpair(x2, x1);
    let sym = num.bracket(x1, x2) + num.bracket(x2, x1) - &num.a_dual * d12;
    rep.push(Check::residual("symmetric part", sym.amax(), tol));

    if jets.iter().all(|j| j.is_constant()) {
        let k = pt.chart_dim();
        let c = |v: DVector<f64>| SectionJet::constant(v, k);
        let lhs = num.bracket(x1, &c(num.bracket(x2, x3)));
        let rhs = num.bracket(&c(num.bracket(x1, x2)), x3) + num.bracket(x2, &c(num.bracket(x1, x3)));
        rep.push(Check::residual("Jacobi on constant sections", (lhs - rhs).amax(), tol));
    }
    Ok(rep)
}
