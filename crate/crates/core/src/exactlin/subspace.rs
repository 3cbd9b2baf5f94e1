use num_traits::Zero;

use super::matrix::{add_vec, is_zero_vec, scale_vec, QMatrix};
use super::{BilinearForm, LinError, Q};

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced row
/// echelon basis. Two equal subspaces always have identical representations,
/// so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(|i| super::unit_vec(ambient, i)).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Result<Self, LinError> {
        let m = QMatrix::from_rows(ambient, vectors)?;
        let (r, pivots) = m.rref();
        Ok(Self {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        })
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &QMatrix) -> Self {
        Self::span(m.nrows(), &m.transpose().rows_vec()).expect("shape is consistent")
    }

    /// `{x : m x = 0}`.
    pub fn kernel_of(m: &QMatrix) -> Self {
        Self::span(m.ncols(), &m.nullspace()).expect("shape is consistent")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// The basis as the rows of a `dim x ambient` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.ambient, &self.basis).expect("basis rows have ambient length")
    }

    fn check(&self, other: &Subspace) -> Result<(), LinError> {
        if self.ambient != other.ambient {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool, LinError> {
        if v.len() != self.ambient {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        // Reduce v against the echelon basis; pivots are the leading entries.
        let mut r = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (ri, bi) in r.iter_mut().zip(row) {
                    *ri -= &c * bi;
                }
            }
        }
        Ok(is_zero_vec(&r))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinError> {
        self.check(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &rows)
    }

    /// Vectors annihilated by the standard dot product with every element.
    pub fn annihilator(&self) -> Subspace {
        Subspace::kernel_of(&self.basis_matrix())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check(other)?;
        let mut rows = self.annihilator().basis;
        rows.extend(other.annihilator().basis);
        let constraints = QMatrix::from_rows(self.ambient, &rows)?;
        Ok(Subspace::kernel_of(&constraints))
    }

    /// `{w : B(w, s) = 0 for all s in self}`.
    pub fn orth_complement(&self, form: &BilinearForm) -> Result<Subspace, LinError> {
        if form.dim() != self.ambient {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient,
                found: form.dim(),
            });
        }
        let constraints = self.basis_matrix().mul(form.matrix())?;
        Ok(Subspace::kernel_of(&constraints))
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[Q]) -> Result<Option<Vec<Q>>, LinError> {
        self.basis_matrix().transpose().solve(v)
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn image(&self, m: &QMatrix) -> Result<Subspace, LinError> {
        if m.ncols() != self.ambient {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient,
                found: m.ncols(),
            });
        }
        let imgs = self
            .basis
            .iter()
            .map(|b| m.mul_vec(b))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(m.nrows(), &imgs)
    }

    /// Preimage `{x : m x in self}` under `m`.
    pub fn preimage(&self, m: &QMatrix) -> Result<Subspace, LinError> {
        if m.nrows() != self.ambient {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient,
                found: m.nrows(),
            });
        }
        let ann = self.annihilator().basis_matrix();
        Ok(Subspace::kernel_of(&ann.mul(m)?))
    }

    /// Direct product `self x other` in the concatenated space.
    pub fn product(&self, other: &Subspace) -> Subspace {
        let n = self.ambient + other.ambient;
        let mut rows: Vec<Vec<Q>> = self
            .basis
            .iter()
            .map(|b| {
                let mut v = b.clone();
                v.resize(n, Q::zero());
                v
            })
            .collect();
        rows.extend(other.basis.iter().map(|b| {
            let mut v = vec![Q::zero(); self.ambient];
            v.extend(b.iter().cloned());
            v
        }));
        Subspace::span(n, &rows).expect("product rows have the right length")
    }

    /// Restriction to a block of coordinates `[start, start + len)`, as a
    /// projection of the subspace onto that block.
    pub fn project_block(&self, start: usize, len: usize) -> Subspace {
        let rows: Vec<Vec<Q>> = self
            .basis
            .iter()
            .map(|b| b[start..start + len].to_vec())
            .collect();
        Subspace::span(len, &rows).expect("block rows have the right length")
    }

    pub fn is_isotropic(&self, form: &BilinearForm) -> Result<bool, LinError> {
        self.is_subspace_of(&self.orth_complement(form)?)
    }

    pub fn is_coisotropic(&self, form: &BilinearForm) -> Result<bool, LinError> {
        self.orth_complement(form)?.is_subspace_of(self)
    }

    pub fn is_lagrangian(&self, form: &BilinearForm) -> Result<bool, LinError> {
        Ok(self.orth_complement(form)? == *self)
    }

    /// First basis vector of `self` that does not lie in `other`.
    pub fn witness_not_in(&self, other: &Subspace) -> Result<Option<Vec<Q>>, LinError> {
        self.check(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(Some(b.clone()));
            }
        }
        Ok(None)
    }
}

/// The quotient `W1 / W0` together with a chosen complement of `W0` in `W1`.
#[derive(Clone, Debug)]
pub struct Quotient {
    w1: Subspace,
    w0: Subspace,
    complement: Vec<Vec<Q>>,
    // rows: w0 basis followed by complement; used to decompose elements of w1
    frame: QMatrix,
}

impl Quotient {
    pub fn new(w1: &Subspace, w0: &Subspace) -> Result<Self, LinError> {
        if !w0.is_subspace_of(w1)? {
            return Err(LinError::NotContained);
        }
        let mut acc = w0.clone();
        let mut complement = Vec::new();
        for b in w1.basis() {
            if !acc.contains(b)? {
                complement.push(b.clone());
                acc = acc.sum(&Subspace::span(w1.ambient(), std::slice::from_ref(b))?)?;
            }
        }
        let mut rows = w0.basis().to_vec();
        rows.extend(complement.iter().cloned());
        let frame = QMatrix::from_rows(w1.ambient(), &rows)?.transpose();
        Ok(Self {
            w1: w1.clone(),
            w0: w0.clone(),
            complement,
            frame,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.w1
    }

    pub fn denominator(&self) -> &Subspace {
        &self.w0
    }

    /// Representatives in `W1` of the quotient basis.
    pub fn complement(&self) -> &[Vec<Q>] {
        &self.complement
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn coords(&self, v: &[Q]) -> Result<Vec<Q>, LinError> {
        let x = self.frame.solve(v)?.ok_or(LinError::NotContained)?;
        Ok(x[self.w0.dim()..].to_vec())
    }

    /// Representative of a class given by quotient coordinates.
    pub fn lift(&self, coords: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.w1.ambient()];
        for (c, b) in coords.iter().zip(&self.complement) {
            v = add_vec(&v, &scale_vec(c, b));
        }
        v
    }

    /// Image of a subspace `S` in the quotient: `(S ∩ W1) / (S ∩ W0)` in
    /// quotient coordinates.
    pub fn image_of(&self, s: &Subspace) -> Result<Subspace, LinError> {
        let inter = s.intersect(&self.w1)?;
        let coords = inter
            .basis()
            .iter()
            .map(|b| self.coords(b))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(self.dim(), &coords)
    }

    /// The form induced on the quotient, in quotient coordinates. Only
    /// meaningful when `W0 ⊆ W1^⊥`.
    pub fn induced_form(&self, form: &BilinearForm) -> BilinearForm {
        let k = self.dim();
        let mut m = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = form.eval(&self.complement[i], &self.complement[j]);
            }
        }
        BilinearForm::new(m).expect("gram matrix of a symmetric form is symmetric")
    }
}
