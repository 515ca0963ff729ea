//! Lattices `Γ = {g_Y : Y ∈ Λ}` in flat groups and the centralizer of `Γ`
//! in the affine isometry group.

use num::Zero;

use crate::error::{inconsistency, Error, Result};
use crate::exactlin::{rational, solve, Matrix, Rational, Subspace, Vector};
use crate::flatgroup::{AffineIsometry, FlatGroupModel};
use crate::multilinear::{self, ScalarProduct, ThreeVector};

/// Full-rank lattice spanned by the rows of `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: Matrix,
    inverse_t: Matrix,
    scale: Rational,
}

impl LatticeBasis {
    /// `delta · Z^n`
    pub fn scaled(n: usize, scale: Rational) -> Result<Self> {
        if scale <= Rational::zero() {
            return Err(Error::Infeasible(format!(
                "lattice scale must be positive, got {}",
                rational::to_string(&scale)
            )));
        }
        Self::from_rows(Matrix::identity(n).scale(&scale), scale)
    }

    fn from_rows(basis: Matrix, scale: Rational) -> Result<Self> {
        let inverse_t = basis
            .transpose()
            .inverse()
            .ok_or_else(|| Error::Infeasible("lattice generators are linearly dependent".into()))?;
        Ok(LatticeBasis { basis, inverse_t, scale })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn generators(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.inverse_t.mul_vec(v).is_integral()
    }
}

/// `Λ = delta · Z^n` with `delta` the least common multiple of the
/// denominators of all coordinates of `eta_{e_i} e_j`.
pub fn find_lattice(eta: &ThreeVector, g: &ScalarProduct) -> Result<LatticeBasis> {
    let contractions = multilinear::basis_contractions(eta, g)?;
    let delta = rational::denominator_lcm(contractions.iter().flat_map(Matrix::entries));
    LatticeBasis::scaled(g.dim(), Rational::from_integer(delta))
}

/// First generator pair (1-based) whose product leaves the lattice, or
/// a repeated index `(i, i)` when `-X_i` does.
pub fn closure_witness(model: &FlatGroupModel, lattice: &LatticeBasis) -> Option<(usize, usize)> {
    let gens = lattice.generators();
    for (i, x) in gens.iter().enumerate() {
        if !lattice.contains(&model.inverse(x)) {
            return Some((i + 1, i + 1));
        }
        for (j, y) in gens.iter().enumerate() {
            if !lattice.contains(&model.group_mul(x, y)) {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Closure of `Λ` under the product and inverse of `L(eta)`.
pub fn lattice_closed(model: &FlatGroupModel, lattice: &LatticeBasis) -> bool {
    closure_witness(model, lattice).is_none()
}

/// Affine isometries `(A, v)` commuting with every `g_Y`, `Y ∈ Λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerSolution {
    n: usize,
    /// Solution set of the linear system in the unknowns `(A, v)`,
    /// flattened as `A` row-major followed by `v`.
    pub raw: crate::exactlin::Solution,
    contractions: Vec<Matrix>,
}

impl CentralizerSolution {
    /// Dimension of the solution family.
    pub fn dim(&self) -> usize {
        self.raw.kernel.dim()
    }

    /// The member with translation part `v`, namely `(Id - eta_v, v)`.
    pub fn member(&self, v: &Vector) -> AffineIsometry {
        AffineIsometry {
            linear: &Matrix::identity(self.n) - &multilinear::combine(&self.contractions, v),
            translation: v.clone(),
        }
    }

    /// Whether the affine map lies in the solution family.
    pub fn contains(&self, a: &AffineIsometry) -> bool {
        let flat = flatten(a);
        self.raw.kernel.contains(&(&flat - &self.raw.particular))
    }

    /// Unflattens a raw solution vector.
    pub fn decode(&self, x: &Vector) -> AffineIsometry {
        let n = self.n;
        AffineIsometry {
            linear: Matrix::from_flat(n, n, &x[..n * n]),
            translation: Vector(x[n * n..].to_vec()),
        }
    }
}

fn flatten(a: &AffineIsometry) -> Vector {
    let mut v = a.linear.flatten().0;
    v.extend(a.translation.iter().cloned());
    Vector(v)
}

/// Solves `(A, v) ∘ g_Y = g_Y ∘ (A, v)` on every generator `Y`, evaluated at
/// the points `0, e_1, ..., e_n`: `[eta_Y, A] X + eta_Y v - A Y + Y = 0`.
pub fn centralizer_space(model: &FlatGroupModel, lattice: &LatticeBasis) -> Result<CentralizerSolution> {
    if let Some(pair) = closure_witness(model, lattice) {
        return Err(Error::LatticeNotClosed { pair });
    }
    let n = model.dim();
    let unknowns = n * n + n;
    let a_idx = |r: usize, c: usize| r * n + c;
    let v_idx = |b: usize| n * n + b;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for y in lattice.generators() {
        let ey = model.eta_x(&y);
        // points X = e_a and X = 0
        for a in (0..n).map(Some).chain(std::iter::once(None)) {
            for r in 0..n {
                let mut row = vec![Rational::zero(); unknowns];
                if let Some(a) = a {
                    // (eta_Y A - A eta_Y) e_a, coordinate r
                    for b in 0..n {
                        if !ey[(r, b)].is_zero() {
                            row[a_idx(b, a)] += &ey[(r, b)];
                        }
                        if !ey[(b, a)].is_zero() {
                            row[a_idx(r, b)] -= &ey[(b, a)];
                        }
                    }
                }
                for b in 0..n {
                    if !ey[(r, b)].is_zero() {
                        row[v_idx(b)] += &ey[(r, b)];
                    }
                    if !y[b].is_zero() {
                        row[a_idx(r, b)] -= &y[b];
                    }
                }
                rows.push(row);
                rhs.push(-&y[r]);
            }
        }
    }
    let system = Matrix::from_rows(rows);
    let raw = solve(&system, &Vector(rhs))?
        .ok_or_else(|| inconsistency("centralizer", "commutation system has no solution"))?;
    let sol = CentralizerSolution {
        n,
        raw,
        contractions: model.basis_contractions().to_vec(),
    };
    if sol.dim() != n {
        return Err(inconsistency("centralizer", format!("solution dimension {} != {n}", sol.dim())));
    }
    let g = model.scalar_product();
    let lefts: Vec<AffineIsometry> = lattice.generators().iter().map(|y| model.affine_rep(y)).collect();
    for b in 0..n {
        let v = Vector::basis(n, b);
        let member = sol.member(&v);
        if !sol.contains(&member) {
            return Err(inconsistency("centralizer", format!("(Id - eta_v, v) missing for v = e{}", b + 1)));
        }
        if !member.is_isometry(g) {
            return Err(inconsistency("centralizer", "linear part is not orthogonal"));
        }
        for x in 0..n {
            let xv = Vector::basis(n, x);
            if member.apply(&xv) != model.group_mul(&xv, &v) {
                return Err(inconsistency("centralizer", "member is not a right translation"));
            }
        }
        for l in &lefts {
            if member.compose(l) != l.compose(&member) {
                return Err(inconsistency("centralizer", "member does not commute with a generator"));
            }
        }
    }
    // the particular solution itself decodes to a member of the family
    let p = sol.decode(&sol.raw.particular);
    if p != sol.member(&p.translation) {
        return Err(inconsistency("centralizer", "solution linear part differs from Id - eta_v"));
    }
    Ok(sol)
}

/// Spans the family's translation parts; always all of `V`.
pub fn translation_parts(sol: &CentralizerSolution) -> Subspace {
    let vs: Vec<Vector> = sol
        .raw
        .kernel
        .basis_vectors()
        .iter()
        .map(|k| sol.decode(k).translation)
        .collect();
    Subspace::span(sol.n, &vs)
}
