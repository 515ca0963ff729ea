//! Exact rational linear algebra.
//!
//! Everything here works over `Q` with no tolerance: a solution substituted
//! back into its defining equations gives literal zero. Subspaces are kept in
//! reduced row-echelon form so that equality of spans is equality of data.

pub mod matrix;
pub mod rational;
pub mod subspace;
pub mod vector;

pub use matrix::{Echelon, Matrix};
pub use rational::Rational;
pub use subspace::Subspace;
pub use vector::Vector;

use num::Zero;

use crate::error::{Error, Result};
use crate::multilinear::ScalarProduct;

/// Solution set of `A x = b`: one particular solution plus the null space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Subspace,
}

/// Solves `A x = b` exactly. `Ok(None)` means the system is inconsistent.
pub fn solve(a: &Matrix, b: &Vector) -> Result<Option<Solution>> {
    if a.rows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.dim(),
        });
    }
    let n = a.cols();
    let rhs = Matrix::from_columns(b.dim(), std::slice::from_ref(b));
    let ech = a.augment(&rhs).echelon();
    if ech.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = Vector::zeros(n);
    for (i, &p) in ech.pivots.iter().enumerate() {
        particular[p] = ech.rows[(i, n)].clone();
    }
    // the first n columns of the augmented echelon form are an echelon form of `a`
    Ok(Some(Solution {
        particular,
        kernel: kernel_from_echelon(&ech, n),
    }))
}

/// Null space of `a` in canonical form.
pub fn kernel(a: &Matrix) -> Subspace {
    kernel_from_echelon(&a.echelon(), a.cols())
}

fn kernel_from_echelon(ech: &Echelon, n: usize) -> Subspace {
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vector> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Vector::basis(n, f);
            for (i, &p) in ech.pivots.iter().enumerate() {
                let c = &ech.rows[(i, f)];
                if !c.is_zero() {
                    v[p] = -c;
                }
            }
            v
        })
        .collect();
    Subspace::span(n, &basis)
}

pub fn orthogonal_complement(u: &Subspace, g: &ScalarProduct) -> Result<Subspace> {
    u.orthogonal_complement(g)
}

pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

/// Extends a basis of `u` to a basis of the ambient space using standard
/// basis vectors. Columns of the returned matrix are the new basis; the first
/// `u.dim()` columns span `u`.
pub fn adapted_basis(u: &Subspace) -> Matrix {
    let n = u.ambient_dim();
    let mut vectors = u.basis_vectors();
    let mut current = u.clone();
    for i in 0..n {
        if vectors.len() == n {
            break;
        }
        let e = Vector::basis(n, i);
        if !current.contains(&e) {
            current = Subspace::span(n, &[current.basis_vectors(), vec![e.clone()]].concat());
            vectors.push(e);
        }
    }
    Matrix::from_columns(n, &vectors)
}
