use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::multilinear::ScalarProduct;

use super::matrix::Matrix;
use super::vector::Vector;

/// Linear subspace of `Q^n`, stored as the reduced row-echelon basis.
///
/// The representation is canonical: two subspaces are equal as sets if and
/// only if they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Subspace {
            ambient_dim: m.cols(),
            basis: m.echelon().rows,
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        Self::row_space(&Matrix::from_row_vectors(ambient_dim, vectors))
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices
            .iter()
            .map(|&i| Vector::basis(ambient_dim, i))
            .collect();
        Self::span(ambient_dim, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors as rows (RREF).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        assert_eq!(v.dim(), self.ambient_dim);
        if v.is_zero() {
            return true;
        }
        // basis is in RREF, so reducing against the pivot columns suffices
        let mut r = v.clone();
        for (i, p) in self.pivots().into_iter().enumerate() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                r.axpy(&-c, &self.basis.row(i));
            }
        }
        r.is_zero()
    }

    /// Leading column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                (0..self.ambient_dim)
                    .find(|&j| !self.basis[(i, j)].is_zero())
                    .expect("RREF rows are nonzero")
            })
            .collect()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(Self::row_space(&self.basis.stack(&other.basis)))
    }

    /// Coordinate annihilator `{x : <u, x> = 0}` for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        super::kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(super::kernel(&a.basis.stack(&b.basis)))
    }

    /// `{v : g(v, u) = 0 for all u in self}`.
    pub fn orthogonal_complement(&self, g: &ScalarProduct) -> Result<Subspace> {
        if g.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: g.dim(),
            });
        }
        Ok(super::kernel(&(&self.basis * g.gram())))
    }

    /// Image of the subspace under the linear map `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self
            .basis_vectors()
            .iter()
            .map(|v| m.mul_vec(v))
            .collect();
        Self::span(m.rows(), &vs)
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.basis_vectors()
            .iter()
            .all(|v| self.contains(&m.mul_vec(v)))
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis_vectors().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
