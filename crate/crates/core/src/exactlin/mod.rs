//! Exact linear algebra over the rationals: dense matrices, subspaces in
//! canonical echelon form, quotients and symmetric bilinear forms.

mod form;
mod matrix;
mod subspace;

pub use form::BilinearForm;
pub use matrix::{
    add_vec, concat, dot, is_zero_vec, scale_vec, sub_vec, to_f64, unit_vec, vec_to_f64, QMatrix,
};
pub use subspace::{Quotient, Subspace};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The exact scalar field.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("cannot parse rational: {0}")]
    Parse(String),
}

/// `n / d` as an exact scalar.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q, LinError> {
    let s = s.trim();
    let err = || LinError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d == BigInt::from(0) {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    Ok(Q::from_integer(s.parse().map_err(|_| err())?))
}

/// Canonical `"p/q"` form; integers print without a denominator.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

pub fn vec_to_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

pub fn strings_to_vec(v: &[String]) -> Result<Vec<Q>, LinError> {
    v.iter().map(|s| parse_q(s)).collect()
}

/// Serde adapter for a list of vectors stored as `"p/q"` strings.
pub mod serde_qvecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = v.iter().map(|r| vec_to_strings(r)).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let strs: Vec<Vec<String>> = Vec::deserialize(d)?;
        strs.iter()
            .map(|r| strings_to_vec(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    ambient_dim: usize,
    #[serde(with = "serde_qvecs")]
    basis: Vec<Vec<Q>>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceJson {
            ambient_dim: self.ambient(),
            basis: self.basis().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SubspaceJson::deserialize(d)?;
        Subspace::span(j.ambient_dim, &j.basis).map_err(serde::de::Error::custom)
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows_vec().iter().map(|r| vec_to_strings(r)).collect();
        rows.serialize(s)
    }
}
