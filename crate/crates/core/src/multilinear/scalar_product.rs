use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{rational, Matrix, Rational, Subspace, Vector};

/// Nondegenerate symmetric bilinear form on `Q^n` with its signature `(k, l)`
/// (k positive, l negative directions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarProduct {
    gram: Matrix,
    inverse: Matrix,
    signature: (usize, usize),
}

impl ScalarProduct {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
            }
        }
        let diag = congruence_diagonal(&gram);
        let k = diag.iter().filter(|d| d.is_positive()).count();
        let l = diag.iter().filter(|d| d.is_negative()).count();
        if k + l < n {
            return Err(Error::Degenerate { rank: k + l, dim: n });
        }
        let inverse = gram
            .inverse()
            .ok_or_else(|| crate::error::inconsistency("gram-inverse", "nonzero pivots but singular"))?;
        Ok(ScalarProduct {
            gram,
            inverse,
            signature: (k, l),
        })
    }

    /// Split preset `split(k, l)`: with `m = min(k, l)` the basis is
    /// `e_1..e_m, f_1..f_m` with `<e_i, f_j> = delta_ij` and `e`, `f` null,
    /// followed by `|k - l|` orthonormal vectors of the surplus sign.
    pub fn split(k: usize, l: usize) -> Result<Self> {
        let m = k.min(l);
        let extra = k.max(l) - m;
        let n = 2 * m + extra;
        let mut g = Matrix::zeros(n, n);
        for i in 0..m {
            g[(i, m + i)] = rational::one();
            g[(m + i, i)] = rational::one();
        }
        let sign = if k >= l { rational::one() } else { -rational::one() };
        for i in 2 * m..n {
            g[(i, i)] = sign.clone();
        }
        Self::new(g)
    }

    /// Orthonormal preset `diag(k, l)`: `k` entries `+1` followed by `l`
    /// entries `-1`.
    pub fn diagonal(k: usize, l: usize) -> Result<Self> {
        let values: Vec<Rational> = std::iter::repeat(rational::one())
            .take(k)
            .chain(std::iter::repeat(-rational::one()).take(l))
            .collect();
        Self::new(Matrix::diagonal(&values))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse_gram(&self) -> &Matrix {
        &self.inverse
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn pair(&self, u: &Vector, v: &Vector) -> Rational {
        u.dot(&self.gram.mul_vec(v))
    }

    /// Gram matrix of the restriction to `u` in its stored basis.
    pub fn restriction(&self, u: &Subspace) -> Matrix {
        let b = u.basis();
        &(b * &self.gram) * &b.transpose()
    }

    pub fn is_nondegenerate_on(&self, u: &Subspace) -> bool {
        self.restriction(u).rank() == u.dim()
    }

    pub fn vanishes_on(&self, u: &Subspace) -> bool {
        self.restriction(u).is_zero()
    }

    /// `m^T G m == G`
    pub fn is_isometry(&self, m: &Matrix) -> bool {
        m.rows() == self.dim()
            && m.cols() == self.dim()
            && &(&m.transpose() * &self.gram) * m == self.gram
    }

    /// `G a + a^T G == 0`, i.e. `a` lies in `so(V)`.
    pub fn is_skew(&self, a: &Matrix) -> bool {
        (&(&self.gram * a) + &(&a.transpose() * &self.gram)).is_zero()
    }
}

/// Diagonal entries of a rational congruence diagonalization `P^T G P = D`.
fn congruence_diagonal(gram: &Matrix) -> Vec<Rational> {
    let n = gram.rows();
    let mut a = gram.clone();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(j) = ((i + 1)..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, i, j);
            } else if let Some(j) = ((i + 1)..n).find(|&j| !a[(i, j)].is_zero()) {
                // a_ii + 2 a_ij + a_jj = 2 a_ij != 0
                add_sym(&mut a, i, j);
            }
        }
        let pivot = a[(i, i)].clone();
        diag.push(pivot.clone());
        if pivot.is_zero() {
            continue;
        }
        for j in (i + 1)..n {
            if a[(j, i)].is_zero() {
                continue;
            }
            let f = &a[(j, i)] / &pivot;
            for c in 0..n {
                let v = &a[(i, c)] * &f;
                a[(j, c)] -= v;
            }
            for r in 0..n {
                let v = &a[(r, i)] * &f;
                a[(r, j)] -= v;
            }
        }
    }
    diag
}

fn swap_sym(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Row i += row j, then col i += col j.
fn add_sym(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = a[(j, c)].clone();
        a[(i, c)] += v;
    }
    for r in 0..n {
        let v = a[(r, j)].clone();
        a[(r, i)] += v;
    }
}
