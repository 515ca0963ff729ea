//! Compatible (para-)complex structures and the nearly (para-)Kähler
//! geometry of flat groups.
//!
//! A compatible structure is a g-skew `J` with `J^2 = eps Id`. For
//! `eps = +1` this is the para-Hermitian condition `g(J·, J·) = -g`; for
//! `eps = -1` it is the Hermitian one `g(J·, J·) = g`. Both reduce to
//! `G J + J^T G = 0`.

mod derham;
mod field;
mod poly;
mod regular;

pub use derham::{derham_split, DeRhamSplit};
pub use field::{make_field, JField, NpkReport};
pub use poly::{Monomial, PolyEndo};
pub use regular::{classify_regular, RegularReport};

use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{kernel, rational, Matrix, Rational, Subspace};
use crate::multilinear::ScalarProduct;

/// The sign `eps` in `J^2 = eps Id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Para-complex, `J^2 = Id`.
    Plus,
    /// Complex, `J^2 = -Id`.
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn value(self) -> Rational {
        rational::int(self.as_i8() as i64)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.as_i8())
    }
}

/// A validated g-skew endomorphism `J` with `J^2 = eps Id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleStructure {
    j: Matrix,
    epsilon: Sign,
    /// `(V+, V-)` for `eps = +1`.
    eigenspaces: Option<(Subspace, Subspace)>,
}

impl CompatibleStructure {
    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn eigenspaces(&self) -> Option<(&Subspace, &Subspace)> {
        self.eigenspaces.as_ref().map(|(p, m)| (p, m))
    }

    pub fn check_compatible(&self, g: &ScalarProduct) -> Result<()> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: self.dim(),
            });
        }
        if !g.is_skew(&self.j) {
            return Err(Error::InvalidStructure("J is not skew for g".into()));
        }
        Ok(())
    }
}

/// Validates `J` against `g` and `eps`.
pub fn make_structure(j: Matrix, g: &ScalarProduct, epsilon: Sign) -> Result<CompatibleStructure> {
    let n = g.dim();
    if j.rows() != n || j.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.rows(),
        });
    }
    let id = Matrix::identity(n);
    if &j * &j != id.scale(&epsilon.value()) {
        return Err(Error::InvalidStructure(format!("J^2 != {epsilon} Id")));
    }
    if !g.is_skew(&j) {
        return Err(Error::InvalidStructure("J is not skew for g".into()));
    }
    let eigenspaces = match epsilon {
        Sign::Plus => {
            let plus = kernel(&(&j - &id));
            let minus = kernel(&(&j + &id));
            if plus.dim() != minus.dim() {
                return Err(Error::InvalidStructure(format!(
                    "eigenspace dimensions {} and {} differ",
                    plus.dim(),
                    minus.dim()
                )));
            }
            Some((plus, minus))
        }
        Sign::Minus => None,
    };
    Ok(CompatibleStructure {
        j,
        epsilon,
        eigenspaces,
    })
}

/// Named structures on the standard bases.
pub mod presets {
    use super::*;

    /// `split-para(m)` on `split(m, m)`: `J e_i = -e_i`, `J f_i = f_i`.
    pub fn split_para(m: usize, g: &ScalarProduct) -> Result<CompatibleStructure> {
        let values: Vec<Rational> = (0..2 * m)
            .map(|i| if i < m { -rational::one() } else { rational::one() })
            .collect();
        make_structure(Matrix::diagonal(&values), g, Sign::Plus)
    }

    /// `standard-para-C(m)` on `diag(m, m)`: `J e_i = f_i`, `J f_i = e_i`.
    pub fn standard_para_c(m: usize, g: &ScalarProduct) -> Result<CompatibleStructure> {
        let mut j = Matrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            j[(m + i, i)] = rational::one();
            j[(i, m + i)] = rational::one();
        }
        make_structure(j, g, Sign::Plus)
    }

    /// `complex-block(k)`: `k` blocks `J b_{2a-1} = b_{2a}`, `J b_{2a} = -b_{2a-1}`
    /// on consecutive basis pairs, total dimension `2k`.
    pub fn complex_block(k: usize, g: &ScalarProduct) -> Result<CompatibleStructure> {
        let mut j = Matrix::zeros(2 * k, 2 * k);
        for a in 0..k {
            j[(2 * a + 1, 2 * a)] = rational::one();
            j[(2 * a, 2 * a + 1)] = -rational::one();
        }
        make_structure(j, g, Sign::Minus)
    }
}
