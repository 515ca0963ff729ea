//! The flat group `L(eta)` of a cone element: the manifold `V` with the
//! twisted product `X · Y = X + Y + eta_X Y`, acting simply transitively by
//! the isometries `(Id + eta_X, X)`.

mod algebra;

pub use algebra::{AlgebraReport, BracketTable};

use crate::error::{inconsistency, Error, Result};
use crate::exactlin::{kernel, rational, Matrix, Subspace, Vector};
use crate::multilinear::{self, classify_cone, ScalarProduct, ThreeVector};

/// Validated flat group model. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatGroupModel {
    eta: ThreeVector,
    g: ScalarProduct,
    support: Subspace,
    contractions: Vec<Matrix>,
    brackets: BracketTable,
}

/// Affine map `x -> A x + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineIsometry {
    pub linear: Matrix,
    pub translation: Vector,
}

impl AffineIsometry {
    pub fn identity(n: usize) -> Self {
        AffineIsometry {
            linear: Matrix::identity(n),
            translation: Vector::zeros(n),
        }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.linear.mul_vec(x) + &self.translation
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AffineIsometry) -> AffineIsometry {
        AffineIsometry {
            linear: &self.linear * &other.linear,
            translation: self.apply(&other.translation),
        }
    }

    /// The `(n+1) x (n+1)` block matrix `[[A, v], [0, 1]]`.
    pub fn to_block(&self) -> Matrix {
        let n = self.linear.rows();
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.linear[(i, j)].clone();
            }
            m[(i, n)] = self.translation[i].clone();
        }
        m[(n, n)] = rational::one();
        m
    }

    pub fn is_isometry(&self, g: &ScalarProduct) -> bool {
        g.is_isometry(&self.linear)
    }
}

/// Builds `L(eta)`. Rejects 3-vectors outside the isotropic cone with the
/// first composition pair `(i, j)` (1-based) where `eta_i eta_j != 0`.
pub fn build_model(eta: &ThreeVector, g: &ScalarProduct) -> Result<FlatGroupModel> {
    let cone = classify_cone(eta, g, None)?;
    if let Some((i, j)) = cone.composition_witness {
        return Err(Error::NotInCone { pair: (i + 1, j + 1) });
    }
    let n = g.dim();
    let contractions = multilinear::basis_contractions(eta, g)?;
    let two = rational::int(2);
    let brackets = BracketTable::from_fn(n, |i, j| contractions[i].column(j).scale(&two))?;
    let model = FlatGroupModel {
        eta: eta.clone(),
        g: g.clone(),
        support: cone.support,
        contractions,
        brackets,
    };
    if !model.brackets.is_antisymmetric() {
        return Err(inconsistency("antisymmetry", "structure constants are not antisymmetric"));
    }
    if let Some((i, j, k)) = model.brackets.jacobi_witness() {
        return Err(inconsistency("jacobi", format!("basis triple ({}, {}, {})", i + 1, j + 1, k + 1)));
    }
    if model.brackets.nilpotency_class().is_none() {
        return Err(inconsistency("two-step", "[[X,Y],Z] != 0"));
    }
    if !model.brackets.is_biinvariant(g) {
        return Err(inconsistency("biinvariance", "some ad_X is not skew"));
    }
    if !g.vanishes_on(&model.support) {
        return Err(inconsistency("indefinite", "support is not isotropic"));
    }
    Ok(model)
}

impl FlatGroupModel {
    pub fn eta(&self) -> &ThreeVector {
        &self.eta
    }

    pub fn scalar_product(&self) -> &ScalarProduct {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn support(&self) -> &Subspace {
        &self.support
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }

    /// `c^k_{ij}`, the `k`-th coordinate of `[e_i, e_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &rational::Rational {
        &self.brackets.basis_bracket(i, j)[k]
    }

    pub fn basis_contractions(&self) -> &[Matrix] {
        &self.contractions
    }

    /// `eta_X`
    pub fn eta_x(&self, x: &Vector) -> Matrix {
        assert_eq!(x.dim(), self.dim(), "vector dimension");
        multilinear::combine(&self.contractions, x)
    }

    /// `[X, Y] = 2 eta_X Y`
    pub fn lie_bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.eta_x(x).mul_vec(y).scale(&rational::int(2))
    }

    /// `X · Y = X + Y + eta_X Y`
    pub fn group_mul(&self, x: &Vector, y: &Vector) -> Vector {
        &(x + y) + &self.eta_x(x).mul_vec(y)
    }

    /// `X^{-1} = -X`
    pub fn inverse(&self, x: &Vector) -> Vector {
        -x
    }

    /// `g_X = (Id + eta_X, X)`, the exponential of `[[eta_X, X], [0, 0]]`.
    pub fn affine_rep(&self, x: &Vector) -> AffineIsometry {
        let n = self.dim();
        let ex = self.eta_x(x);
        let rep = AffineIsometry {
            linear: &Matrix::identity(n) + &ex,
            translation: x.clone(),
        };
        let mut block = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                block[(i, j)] = ex[(i, j)].clone();
            }
            block[(i, n)] = x[i].clone();
        }
        let exp = block.nilpotent_exp().expect("block generator is nilpotent");
        assert_eq!(exp, rep.to_block(), "exponential does not truncate");
        assert!(rep.is_isometry(&self.g), "g_X is not an isometry");
        rep
    }

    /// Levi-Civita connection on left-invariant fields: `D_X = eta_X = ½ ad_X`.
    pub fn levi_civita(&self, x: &Vector) -> Matrix {
        let d = self.eta_x(x);
        assert_eq!(
            d,
            self.brackets.ad(x).scale(&rational::frac(1, 2)),
            "eta_X differs from ad_X / 2"
        );
        d
    }

    /// `R(X, Y) = [D_X, D_Y] - D_{[X,Y]}`, checked against `-¼ ad_{[X,Y]}`.
    pub fn curvature(&self, x: &Vector, y: &Vector) -> Matrix {
        let xy = self.lie_bracket(x, y);
        let direct = &self.levi_civita(x).commutator(&self.levi_civita(y)) - &self.levi_civita(&xy);
        let closed = self.brackets.ad(&xy).scale(&rational::frac(-1, 4));
        assert_eq!(direct, closed, "curvature formulas disagree");
        direct
    }

    pub fn algebra_report(&self) -> AlgebraReport {
        let r = self.brackets.report(&self.g);
        let c = &self.contractions;
        let two = rational::int(2);
        let direct_flat = (0..self.dim()).all(|i| {
            (i + 1..self.dim()).all(|j| {
                let xy = c[i].column(j).scale(&two);
                (&c[i].commutator(&c[j]) - &multilinear::combine(c, &xy)).is_zero()
            })
        });
        assert_eq!(r.flat, direct_flat, "Koszul and eta curvature disagree");
        assert_eq!(r.flat, r.nilpotency_class.is_some(), "flat but not 2-step, or conversely");
        r
    }

    /// `ker(X -> eta_X)`, which equals `Σ^⊥`.
    pub fn translation_ideal(&self) -> Subspace {
        let n = self.dim();
        let cols: Vec<Vector> = self.contractions.iter().map(Matrix::flatten).collect();
        let ideal = kernel(&Matrix::from_columns(n * n, &cols));
        let perp = self
            .support
            .orthogonal_complement(&self.g)
            .expect("support lives in V");
        assert_eq!(ideal, perp, "translation ideal differs from the support complement");
        let (k, l) = self.g.signature();
        assert!(ideal.dim() >= k.max(l), "translation ideal too small");
        ideal
    }
}

/// `g · eta` for an isometry `g`: `(g·eta)_X = g eta_{g^-1 X} g^-1`.
pub fn conjugate_action(m: &Matrix, eta: &ThreeVector, g: &ScalarProduct) -> Result<ThreeVector> {
    if eta.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: eta.dim() });
    }
    if !g.is_isometry(m) {
        return Err(Error::NotOrthogonal);
    }
    let inv = m.inverse().ok_or(Error::NotOrthogonal)?;
    let moved = eta.transform(m);
    let before = multilinear::basis_contractions(eta, g)?;
    let after = multilinear::basis_contractions(&moved, g)?;
    let n = g.dim();
    for (i, a) in after.iter().enumerate() {
        let pulled = multilinear::combine(&before, &inv.mul_vec(&Vector::basis(n, i)));
        if *a != &(m * &pulled) * &inv {
            return Err(inconsistency("conjugation", format!("contraction along e{} disagrees", i + 1)));
        }
    }
    let old_support = multilinear::support_from(n, &before);
    let new_support = multilinear::support_from(n, &after);
    if new_support != old_support.image(m) {
        return Err(inconsistency("conjugation", "support does not move with the isometry"));
    }
    Ok(moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::int;

    fn golden() -> FlatGroupModel {
        let g = ScalarProduct::split(3, 3).unwrap();
        build_model(&ThreeVector::basis(6, 3, 4, 5).unwrap(), &g).unwrap()
    }

    fn e(i: usize) -> Vector {
        Vector::basis(6, i - 1)
    }

    fn f(i: usize) -> Vector {
        Vector::basis(6, i + 2)
    }

    #[test]
    fn golden_brackets() {
        let m = golden();
        let expected = [(1, 2, f(3)), (2, 3, f(1)), (3, 1, f(2))];
        for (i, j, v) in &expected {
            assert_eq!(m.lie_bracket(&e(*i), &e(*j)), v.scale(&int(2)));
        }
        let mut nonzero = 0;
        for i in 0..6 {
            for j in 0..6 {
                if !m.brackets().basis_bracket(i, j).is_zero() {
                    nonzero += 1;
                }
            }
        }
        // three brackets and their negatives
        assert_eq!(nonzero, 6);
        for i in 1..=3 {
            for x in 0..6 {
                assert!(m.lie_bracket(&f(i), &Vector::basis(6, x)).is_zero());
            }
        }
    }

    #[test]
    fn abelian_and_rejected() {
        let g = ScalarProduct::split(3, 3).unwrap();
        let m = build_model(&ThreeVector::zero(6), &g).unwrap();
        assert_eq!(m.algebra_report().nilpotency_class, Some(1));
        let bad = ThreeVector::basis(6, 0, 1, 3).unwrap();
        assert!(matches!(build_model(&bad, &g), Err(Error::NotInCone { .. })));
    }

    #[test]
    fn product_matches_affine_oracle() {
        let m = golden();
        let prod = m.group_mul(&e(1), &e(2));
        assert_eq!(prod, &(&e(1) + &e(2)) + &f(3));
        let oracle = m.affine_rep(&e(1)).compose(&m.affine_rep(&e(2)));
        assert_eq!(oracle, m.affine_rep(&prod));
        let x = Vector::from_ints(&[1, -2, 3, 4, 0, 7]);
        assert_eq!(m.group_mul(&x, &Vector::zeros(6)), x);
        assert!(m.group_mul(&x, &m.inverse(&x)).is_zero());
    }

    #[test]
    fn affine_rep_examples() {
        let m = golden();
        assert_eq!(m.affine_rep(&Vector::zeros(6)), AffineIsometry::identity(6));
        let a = m.affine_rep(&e(1));
        assert_eq!(a.linear.mul_vec(&e(2)), &e(2) + &f(3));
        let x = Vector::from_ints(&[2, 0, -1, 1, 1, 0]);
        assert_eq!(m.affine_rep(&x).apply(&Vector::zeros(6)), x);
    }

    #[test]
    fn connection_and_curvature() {
        let m = golden();
        assert_eq!(m.levi_civita(&e(1)).mul_vec(&e(2)), f(3));
        assert!(m.levi_civita(&f(2)).is_zero());
        assert!(m.curvature(&e(1), &e(2)).is_zero());
        let r = m.algebra_report();
        assert!(r.jacobi && r.biinvariant && r.flat);
        assert_eq!(r.nilpotency_class, Some(2));
    }

    #[test]
    fn translation_ideal_golden() {
        let m = golden();
        assert_eq!(m.translation_ideal(), Subspace::coordinate(6, &[3, 4, 5]));
    }

    #[test]
    fn swap_permutation() {
        let g = ScalarProduct::split(3, 3).unwrap();
        let mut p = Matrix::zeros(6, 6);
        for (a, b) in [(0, 1), (1, 0), (2, 2), (3, 4), (4, 3), (5, 5)] {
            p[(a, b)] = int(1);
        }
        let eta = ThreeVector::basis(6, 3, 4, 5).unwrap();
        let moved = conjugate_action(&p, &eta, &g).unwrap();
        assert_eq!(moved, eta.scale(&int(-1)));
        assert_eq!(conjugate_action(&Matrix::identity(6), &eta, &g).unwrap(), eta);
        let not_iso = Matrix::identity(6).scale(&int(2));
        assert!(matches!(conjugate_action(&not_iso, &eta, &g), Err(Error::NotOrthogonal)));
    }
}
