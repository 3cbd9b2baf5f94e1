use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactlin::{
    add_vec, format_q, parse_q, strings_to_vec, vec_to_strings, BilinearForm, LinError,
    QMatrix, Subspace, Q,
};
use crate::report::{Check, Report};

use super::QuadError;

/// A finite-dimensional Lie algebra with a symmetric bilinear form, in a
/// fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticLieAlgebra {
    names: Vec<String>,
    // every nonzero constant [b_i, b_j] = v b_k, both orders
    terms: Vec<(usize, usize, usize, Q)>,
    form: BilinearForm,
}

impl QuadraticLieAlgebra {
    /// Builds the algebra from entries `(i, j, k, v)` meaning
    /// `[b_i, b_j] += v b_k`. Entries with `i > j` are accepted and flipped;
    /// the antisymmetric partner is filled in automatically.
    pub fn new(
        names: Vec<String>,
        brackets: &[(usize, usize, usize, Q)],
        form: BilinearForm,
    ) -> Result<Self, QuadError> {
        let n = names.len();
        if form.dim() != n {
            return Err(LinError::DimensionMismatch {
                expected: n,
                found: form.dim(),
            }
            .into());
        }
        let mut dense = vec![Q::zero(); n * n * n];
        for (i, j, k, v) in brackets {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n || i == j {
                return Err(QuadError::BadBracket { i, j, k });
            }
            let (a, b, v) = if i < j { (i, j, v.clone()) } else { (j, i, -v) };
            dense[(a * n + b) * n + k] += v;
        }
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = if i < j {
                        dense[(i * n + j) * n + k].clone()
                    } else if i > j {
                        -dense[(j * n + i) * n + k].clone()
                    } else {
                        continue;
                    };
                    if !v.is_zero() {
                        terms.push((i, j, k, v));
                    }
                }
            }
        }
        Ok(Self { names, terms, form })
    }

    pub fn abelian(names: Vec<String>, form: BilinearForm) -> Result<Self, QuadError> {
        Self::new(names, &[], form)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// Same brackets, different form.
    pub fn with_form(&self, form: BilinearForm) -> Result<Self, QuadError> {
        if form.dim() != self.dim() {
            return Err(LinError::DimensionMismatch {
                expected: self.dim(),
                found: form.dim(),
            }
            .into());
        }
        Ok(Self {
            form,
            ..self.clone()
        })
    }

    /// Nonzero structure constants with `i < j`.
    pub fn brackets(&self) -> Vec<(usize, usize, usize, Q)> {
        self.terms.iter().filter(|t| t.0 < t.1).cloned().collect()
    }

    pub fn terms(&self) -> &[(usize, usize, usize, Q)] {
        &self.terms
    }

    pub fn is_abelian(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, j, k, v) in &self.terms {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            out[*k] += &x[*i] * &y[*j] * v;
        }
        out
    }

    pub fn pairing(&self, x: &[Q], y: &[Q]) -> Q {
        self.form.eval(x, y)
    }

    /// Matrix of `ad_x`, acting on column vectors.
    pub fn ad(&self, x: &[Q]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, j, k, v) in &self.terms {
            if !x[*i].is_zero() {
                m[(*k, *j)] += &x[*i] * v;
            }
        }
        m
    }

    fn basis_vec(&self, i: usize) -> Vec<Q> {
        crate::exactlin::unit_vec(self.dim(), i)
    }

    pub fn label(&self, i: usize, j: usize, k: usize) -> String {
        format!("({},{},{})", self.names[i], self.names[j], self.names[k])
    }

    /// Checks Jacobi, invariance of the form and nondegeneracy. Violations
    /// are listed per basis triple.
    pub fn validate(&self) -> AlgebraReport {
        let n = self.dim();
        let b: Vec<Vec<Q>> = (0..n).map(|i| self.basis_vec(i)).collect();
        let mut jacobi = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.bracket(&self.bracket(&b[i], &b[j]), &b[k]);
                    let t2 = self.bracket(&self.bracket(&b[j], &b[k]), &b[i]);
                    let t3 = self.bracket(&self.bracket(&b[k], &b[i]), &b[j]);
                    if !add_vec(&add_vec(&t1, &t2), &t3).iter().all(Zero::is_zero) {
                        jacobi.push([i, j, k]);
                    }
                }
            }
        }
        let mut invariance = Vec::new();
        for i in 0..n {
            let ad = self.ad(&b[i]);
            // <[x,y],z> + <y,[x,z]> = 0 for all y,z  <=>  ad^T B + B ad = 0
            let m = ad
                .transpose()
                .mul(self.form.matrix())
                .and_then(|l| l.add(&self.form.matrix().mul(&ad)?))
                .expect("square matrices of equal size");
            for j in 0..n {
                for k in 0..n {
                    if !m[(j, k)].is_zero() {
                        invariance.push([i, j, k]);
                    }
                }
            }
        }
        AlgebraReport {
            jacobi,
            invariance,
            nondegenerate: self.form.is_nondegenerate(),
            names: self.names.clone(),
        }
    }

    pub fn is_lagrangian(&self, s: &Subspace) -> Result<bool, QuadError> {
        Ok(s.is_lagrangian(&self.form)?)
    }

    pub fn is_coisotropic(&self, s: &Subspace) -> Result<bool, QuadError> {
        Ok(s.is_coisotropic(&self.form)?)
    }

    pub fn is_isotropic(&self, s: &Subspace) -> Result<bool, QuadError> {
        Ok(s.is_isotropic(&self.form)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, QuadError> {
        Ok(self.subalgebra_witness(s)?.is_none())
    }

    /// A pair of basis vectors of `s` whose bracket leaves `s`.
    pub fn subalgebra_witness(&self, s: &Subspace) -> Result<Option<(usize, usize)>, QuadError> {
        if s.ambient() != self.dim() {
            return Err(LinError::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient(),
            }
            .into());
        }
        let basis = s.basis();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if !s.contains(&self.bracket(&basis[i], &basis[j]))? {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn span(&self, vectors: &[Vec<Q>]) -> Result<Subspace, QuadError> {
        Ok(Subspace::span(self.dim(), vectors)?)
    }

    /// The subspace spanned by basis elements with the given names.
    pub fn span_named(&self, names: &[&str]) -> Result<Subspace, QuadError> {
        let vs = names
            .iter()
            .map(|nm| {
                self.names
                    .iter()
                    .position(|x| x == nm)
                    .map(|i| self.basis_vec(i))
                    .ok_or_else(|| QuadError::UnknownName(nm.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.span(&vs)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dim: self.dim(),
            basis_names: self.names.clone(),
            brackets: self
                .brackets()
                .into_iter()
                .map(|(i, j, k, v)| (i, j, k, format_q(&v)))
                .collect(),
            form: self
                .form
                .matrix()
                .rows_vec()
                .iter()
                .map(|r| vec_to_strings(r))
                .collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, QuadError> {
        if j.basis_names.len() != j.dim || j.form.len() != j.dim {
            return Err(LinError::DimensionMismatch {
                expected: j.dim,
                found: j.basis_names.len().max(j.form.len()),
            }
            .into());
        }
        let rows = j
            .form
            .iter()
            .map(|r| strings_to_vec(r))
            .collect::<Result<Vec<_>, _>>()?;
        let form = BilinearForm::new(QMatrix::from_rows(j.dim, &rows)?)?;
        let brackets = j
            .brackets
            .iter()
            .map(|(i, jj, k, v)| Ok((*i, *jj, *k, parse_q(v)?)))
            .collect::<Result<Vec<_>, LinError>>()?;
        Self::new(j.basis_names.clone(), &brackets, form)
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Q> {
        self.bracket(&self.basis_vec(i), &self.basis_vec(j))
    }
}

/// JSON form of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub form: Vec<Vec<String>>,
}

/// Outcome of [`QuadraticLieAlgebra::validate`]. Triples index the basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub jacobi: Vec<[usize; 3]>,
    pub invariance: Vec<[usize; 3]>,
    pub nondegenerate: bool,
    #[serde(skip)]
    names: Vec<String>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.jacobi.is_empty() && self.invariance.is_empty() && self.nondegenerate
    }

    fn label(&self, t: &[usize; 3]) -> String {
        format!("({},{},{})", self.names[t[0]], self.names[t[1]], self.names[t[2]])
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push(match self.jacobi.first() {
            None => Check::pass("jacobi"),
            Some(t) => Check::fail(
                "jacobi",
                format!("{} violating triples, first {}", self.jacobi.len(), self.label(t)),
            ),
        });
        r.push(match self.invariance.first() {
            None => Check::pass("invariance"),
            Some(t) => Check::fail(
                "invariance",
                format!(
                    "{} violating triples, first {}",
                    self.invariance.len(),
                    self.label(t)
                ),
            ),
        });
        r.push(Check::flag("nondegenerate", self.nondegenerate, "form is degenerate"));
        r
    }
}
