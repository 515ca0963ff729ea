use crate::error::{Error, Result};
use crate::exactlin::{rational, Matrix, Subspace, Vector};
use crate::multilinear::ScalarProduct;

/// A bilinear bracket given on a basis: `table[i][j] = [e_i, e_j]`.
///
/// Nothing is assumed beyond bilinearity; the checks below decide whether
/// it is a Lie algebra and what its left-invariant metric geometry is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    table: Vec<Vec<Vector>>,
    /// `ads[i] = ad_{e_i}`
    ads: Vec<Matrix>,
}

/// Lie-theoretic verdict on a bracket with a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraReport {
    pub antisymmetric: bool,
    pub jacobi: bool,
    /// 1 for abelian, 2 for 2-step; `None` when the class is 3 or more (or
    /// the algebra is not nilpotent).
    pub nilpotency_class: Option<usize>,
    /// every `ad_X` is skew for the metric
    pub biinvariant: bool,
    /// curvature of the left-invariant Levi-Civita connection vanishes
    pub flat: bool,
}

impl BracketTable {
    pub fn new(table: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = table.len();
        for row in &table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for v in row {
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
                }
            }
        }
        Ok(Self::with_table(dim, table))
    }

    fn with_table(dim: usize, table: Vec<Vec<Vector>>) -> Self {
        let ads = table.iter().map(|row| Matrix::from_columns(dim, row)).collect();
        BracketTable { dim, table, ads }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Vector) -> Result<Self> {
        Self::new((0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect())
    }

    /// Structure constants of `so(3)`: `[e1, e2] = e3` and cyclic.
    pub fn so3() -> Self {
        let mut t = vec![vec![Vector::zeros(3); 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            t[i][j] = Vector::basis(3, k);
            t[j][i] = -&Vector::basis(3, k);
        }
        Self::with_table(3, t)
    }

    /// Heisenberg algebra `[e1, e2] = e3`.
    pub fn heisenberg() -> Self {
        let mut t = vec![vec![Vector::zeros(3); 3]; 3];
        t[0][1] = Vector::basis(3, 2);
        t[1][0] = -&Vector::basis(3, 2);
        Self::with_table(3, t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.ad(x).mul_vec(y)
    }

    /// Matrix of `ad_X`.
    pub fn ad(&self, x: &Vector) -> Matrix {
        crate::multilinear::combine(&self.ads, x)
    }

    /// `ad_{e_i}` for every basis vector.
    pub fn basis_ads(&self) -> &[Matrix] {
        &self.ads
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            self.table[i][i].is_zero()
                && (i + 1..self.dim).all(|j| (&self.table[i][j] + &self.table[j][i]).is_zero())
        })
    }

    /// First basis triple (0-based) violating the Jacobi identity.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        // [[e_i, e_j], e_k] = -ad_{e_k} [e_i, e_j]
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let a = self.ads[k].mul_vec(&self.table[i][j]);
                    let b = self.ads[i].mul_vec(&self.table[j][k]);
                    let c = self.ads[j].mul_vec(&self.table[k][i]);
                    if !(&(&a + &b) + &c).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Dimensions of `g = g^1 ⊃ g^2 ⊃ ...` up to `g^{max_len}`.
    pub fn lower_central_series(&self, max_len: usize) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        while series.len() < max_len {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let gens: Vec<Vector> = last
                .basis_vectors()
                .iter()
                .flat_map(|y| self.ads.iter().map(move |a| a.mul_vec(y)))
                .collect();
            series.push(Subspace::span(self.dim, &gens));
        }
        series
    }

    /// Nilpotency class capped at 2; `None` if `g^3 != 0`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series(3);
        match series.iter().position(Subspace::is_zero) {
            Some(0) | Some(1) => Some(1),
            Some(2) => Some(2),
            _ => None,
        }
    }

    pub fn is_biinvariant(&self, g: &ScalarProduct) -> bool {
        self.ads.iter().all(|a| g.is_skew(a))
    }

    /// `D_{e_i}` for the left-invariant Levi-Civita connection, from the
    /// Koszul formula `2<D_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>`.
    pub fn levi_civita(&self, g: &ScalarProduct) -> Vec<Matrix> {
        let n = self.dim;
        let half = rational::frac(1, 2);
        // low[i][j][k] = <[e_i, e_j], e_k>
        let low: Vec<Vec<Vector>> = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| g.gram().mul_vec(v)).collect())
            .collect();
        (0..n)
            .map(|i| {
                let cols: Vec<Vector> = (0..n)
                    .map(|j| {
                        let lowered = Vector(
                            (0..n)
                                .map(|k| {
                                    let s = &low[i][j][k] - &low[j][k][i] + &low[k][i][j];
                                    &half * s
                                })
                                .collect(),
                        );
                        g.inverse_gram().mul_vec(&lowered)
                    })
                    .collect();
                Matrix::from_columns(n, &cols)
            })
            .collect()
    }

    /// `R(e_i, e_j) = [D_i, D_j] - D_{[e_i, e_j]}` for all basis pairs.
    pub fn curvature_vanishes(&self, g: &ScalarProduct) -> bool {
        let d = self.levi_civita(g);
        let dx = |v: &Vector| crate::multilinear::combine(&d, v);
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| (&d[i].commutator(&d[j]) - &dx(&self.table[i][j])).is_zero())
        })
    }

    pub fn report(&self, g: &ScalarProduct) -> AlgebraReport {
        AlgebraReport {
            antisymmetric: self.is_antisymmetric(),
            jacobi: self.jacobi_witness().is_none(),
            nilpotency_class: self.nilpotency_class(),
            biinvariant: self.is_biinvariant(g),
            flat: self.curvature_vanishes(g),
        }
    }
}
