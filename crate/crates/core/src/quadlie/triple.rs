use crate::exactlin::{QMatrix, Subspace};
use crate::report::{Check, Report};

use super::{QuadError, QuadraticLieAlgebra};

/// A split quadratic Lie algebra with two candidate transverse Lagrangian
/// subalgebras. Construction does not validate; see [`ManinTriple::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ManinTriple {
    pub d: QuadraticLieAlgebra,
    pub g1: Subspace,
    pub g2: Subspace,
}

impl ManinTriple {
    pub fn new(d: QuadraticLieAlgebra, g1: Subspace, g2: Subspace) -> Self {
        Self { d, g1, g2 }
    }

    pub fn validate(&self) -> Report {
        let mut r = self.d.validate().to_report();
        let n = self.d.dim();
        if self.g1.ambient() != n || self.g2.ambient() != n {
            r.push(Check::fail("ambient", "subspaces not in the algebra"));
            return r;
        }
        for (name, s) in [("g1", &self.g1), ("g2", &self.g2)] {
            let lag = self.d.is_lagrangian(s).unwrap_or(false);
            r.push(Check::flag(
                format!("{name} lagrangian"),
                lag,
                format!("dim {} with dim of complement {}", s.dim(), n - s.dim()),
            ));
            let w = self.d.subalgebra_witness(s).ok().flatten();
            r.push(Check::flag(
                format!("{name} subalgebra"),
                w.is_none(),
                format!("bracket of basis vectors {:?} leaves {name}", w.unwrap_or((0, 0))),
            ));
        }
        let inter = self.g1.intersect(&self.g2).map(|s| s.dim()).unwrap_or(usize::MAX);
        r.push(Check::flag(
            "transverse",
            inter == 0,
            format!("intersection has dim {inter}"),
        ));
        let sum = self.g1.sum(&self.g2).map(|s| s.dim()).unwrap_or(0);
        r.push(Check::flag("spanning", sum == n, format!("sum has dim {sum}")));
        r
    }

    /// Gram matrix `<e_i, f_j>` for the canonical bases of `g1`, `g2`.
    pub fn pairing_gram(&self) -> QMatrix {
        self.d.form().gram(self.g1.basis(), self.g2.basis())
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.d.clone(), self.g2.clone(), self.g1.clone())
    }

    pub fn check_dims(&self) -> Result<(), QuadError> {
        if self.g1.ambient() != self.d.dim() || self.g2.ambient() != self.d.dim() {
            return Err(crate::exactlin::LinError::DimensionMismatch {
                expected: self.d.dim(),
                found: self.g1.ambient().max(self.g2.ambient()),
            }
            .into());
        }
        Ok(())
    }
}
