//! 3-vectors on a pseudo-Euclidean space: the trilinear form they define,
//! contraction to skew endomorphisms `eta_X`, support, isotropy and
//! membership in the isotropic cone.
//!
//! Evaluation follows the determinant convention without factorial
//! normalization: `(a ∧ b ∧ c)(X, Y, Z) = det [<u, W>]` for `u` in `(a, b, c)`
//! and `W` in `(X, Y, Z)`. With it, `f1 ∧ f2 ∧ f3` on the split space gives
//! `eta_{e1} e2 = f3` and so `[e1, e2] = 2 f3`.

mod scalar_product;
mod three_vector;

pub use scalar_product::ScalarProduct;
pub use three_vector::ThreeVector;

use num::Zero;

use crate::error::{inconsistency, Error, Result};
use crate::exactlin::{rational, Matrix, Rational, Subspace, Vector};
use crate::structures::{CompatibleStructure, Sign};

fn check_dim(eta: &ThreeVector, g: &ScalarProduct) -> Result<()> {
    if eta.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: eta.dim(),
        });
    }
    Ok(())
}

/// `eta(X, Y, Z)` as an alternating trilinear form.
pub fn evaluate(eta: &ThreeVector, g: &ScalarProduct, x: &Vector, y: &Vector, z: &Vector) -> Result<Rational> {
    check_dim(eta, g)?;
    for v in [x, y, z] {
        if v.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: v.dim(),
            });
        }
    }
    // lowered arguments: <e_p, W> = (G W)_p
    let (gx, gy, gz) = (g.gram().mul_vec(x), g.gram().mul_vec(y), g.gram().mul_vec(z));
    let mut total = Rational::zero();
    for ([p, q, r], c) in eta.terms() {
        let m = [
            [&gx[*p], &gy[*p], &gz[*p]],
            [&gx[*q], &gy[*q], &gz[*q]],
            [&gx[*r], &gy[*r], &gz[*r]],
        ];
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        total += c * det;
    }
    Ok(total)
}

/// `eta_{e_i}` for every basis vector `e_i`, as matrices acting on columns.
///
/// Uses `(a∧b∧c)_X Y = <a,X>(<b,Y>c - <c,Y>b) + <b,X>(<c,Y>a - <a,Y>c)
/// + <c,X>(<a,Y>b - <b,Y>a)`, so that `<eta_X Y, Z> = eta(X, Y, Z)`.
pub fn basis_contractions(eta: &ThreeVector, g: &ScalarProduct) -> Result<Vec<Matrix>> {
    check_dim(eta, g)?;
    let n = g.dim();
    let gm = g.gram();
    let mut mats = vec![Matrix::zeros(n, n); n];
    for ([p, q, r], c) in eta.terms() {
        let (p, q, r) = (*p, *q, *r);
        for (i, m) in mats.iter_mut().enumerate() {
            let (gpi, gqi, gri) = (&gm[(p, i)], &gm[(q, i)], &gm[(r, i)]);
            if gpi.is_zero() && gqi.is_zero() && gri.is_zero() {
                continue;
            }
            for j in 0..n {
                let (gpj, gqj, grj) = (&gm[(p, j)], &gm[(q, j)], &gm[(r, j)]);
                if gpj.is_zero() && gqj.is_zero() && grj.is_zero() {
                    continue;
                }
                let to_r = gpi * gqj - gqi * gpj;
                let to_q = gri * gpj - gpi * grj;
                let to_p = gqi * grj - gri * gqj;
                if !to_r.is_zero() {
                    m[(r, j)] += c * to_r;
                }
                if !to_q.is_zero() {
                    m[(q, j)] += c * to_q;
                }
                if !to_p.is_zero() {
                    m[(p, j)] += c * to_p;
                }
            }
        }
    }
    Ok(mats)
}

/// Linear combination `sum_i x_i · mats[i]`.
pub fn combine(mats: &[Matrix], x: &Vector) -> Matrix {
    let (r, c) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
    let mut out = Matrix::zeros(r, c);
    for (m, xi) in mats.iter().zip(x.iter()) {
        if xi.is_zero() {
            continue;
        }
        for i in 0..r {
            for j in 0..c {
                let v = &m[(i, j)];
                if !v.is_zero() {
                    out[(i, j)] += v * xi;
                }
            }
        }
    }
    out
}

/// The skew endomorphism `eta_X`.
pub fn contract(eta: &ThreeVector, g: &ScalarProduct, x: &Vector) -> Result<Matrix> {
    if x.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: x.dim(),
        });
    }
    Ok(combine(&basis_contractions(eta, g)?, x))
}

/// Support `span{eta_X Y}` given the basis contractions.
pub fn support_from(n: usize, contractions: &[Matrix]) -> Subspace {
    let mut columns = Vec::with_capacity(n * n);
    for m in contractions {
        for j in 0..n {
            let c = m.column(j);
            if !c.is_zero() {
                columns.push(c);
            }
        }
    }
    Subspace::span(n, &columns)
}

pub fn support(eta: &ThreeVector, g: &ScalarProduct) -> Result<Subspace> {
    Ok(support_from(g.dim(), &basis_contractions(eta, g)?))
}

pub fn is_isotropic(u: &Subspace, g: &ScalarProduct) -> Result<bool> {
    if u.ambient_dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: u.ambient_dim(),
        });
    }
    Ok(g.vanishes_on(u))
}

/// First pair `i <= j` (0-based) with `eta_{e_i} ∘ eta_{e_j} != 0`.
///
/// Pairs with `i > j` need no check: both factors are skew, so the adjoint
/// of `eta_i eta_j` is `eta_j eta_i`.
pub fn composition_witness(contractions: &[Matrix]) -> Option<(usize, usize)> {
    let n = contractions.len();
    for i in 0..n {
        if contractions[i].is_zero() {
            continue;
        }
        for j in i..n {
            if !(&contractions[i] * &contractions[j]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// First basis index `i` (0-based) with `{eta_{e_i}, J} != 0`.
pub fn anticommute_witness(contractions: &[Matrix], j: &Matrix) -> Option<usize> {
    contractions
        .iter()
        .position(|m| !m.anticommutator(j).is_zero())
}

/// Splits `eta = eta_minus + eta_plus` with `eta_minus` of type
/// `(3,0) + (0,3)` and `eta_plus` of type `(2,1) + (1,2)`.
///
/// The projector is `P = (Id + eps·C) / 4` with
/// `C(eta)(X,Y,Z) = eta(JX,JY,Z) + eta(JX,Y,JZ) + eta(X,JY,JZ)`. On the
/// vector side two factors pick up `-J` each, so `C` applies `J` to every
/// pair of factors.
pub fn pure_type_project(
    eta: &ThreeVector,
    g: &ScalarProduct,
    structure: &CompatibleStructure,
) -> Result<(ThreeVector, ThreeVector)> {
    check_dim(eta, g)?;
    structure.check_compatible(g)?;
    let minus = pure_minus_part(eta, structure);
    let plus = eta.sub(&minus);
    Ok((minus, plus))
}

pub(crate) fn pure_minus_part(eta: &ThreeVector, structure: &CompatibleStructure) -> ThreeVector {
    let c = eta.apply_to_pairs(structure.matrix());
    let eps = structure.epsilon().value();
    eta.add(&c.scale(&eps)).scale(&rational::frac(1, 4))
}

/// Everything `classify_cone` learns about a 3-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    pub support: Subspace,
    pub support_dim: usize,
    pub isotropic: bool,
    pub composition_zero: bool,
    /// 0-based pair with `eta_{e_i} ∘ eta_{e_j} != 0`.
    pub composition_witness: Option<(usize, usize)>,
    pub in_cone: bool,
    pub anticommutes: Option<bool>,
    /// 0-based index with `{eta_{e_i}, J} != 0`.
    pub anticommute_witness: Option<usize>,
    /// `(dim Σ∩V+, dim Σ∩V-)`; para case only.
    pub type_pq: Option<(usize, usize)>,
    pub pure_plus: Option<bool>,
    pub pure_minus: Option<bool>,
    /// J-invariance of the support (reported for both signs of epsilon).
    pub support_invariant: Option<bool>,
    pub regular: Option<bool>,
    pub strict: bool,
}

/// Classifies `eta` against the isotropic cone and, when a structure is
/// given, against the variety of 3-vectors anticommuting with it.
///
/// Isotropy of the support and vanishing of all compositions are computed
/// independently; disagreement is reported as an inconsistency.
pub fn classify_cone(
    eta: &ThreeVector,
    g: &ScalarProduct,
    structure: Option<&CompatibleStructure>,
) -> Result<ConeReport> {
    let n = g.dim();
    let contractions = basis_contractions(eta, g)?;
    let support = support_from(n, &contractions);
    let isotropic = g.vanishes_on(&support);
    let composition_witness = composition_witness(&contractions);
    let composition_zero = composition_witness.is_none();
    if isotropic != composition_zero {
        return Err(inconsistency(
            "isotropy-vs-composition",
            format!("isotropic = {isotropic}, composition_zero = {composition_zero} for {eta}"),
        ));
    }
    let mut report = ConeReport {
        support_dim: support.dim(),
        support,
        isotropic,
        composition_zero,
        composition_witness,
        in_cone: isotropic,
        anticommutes: None,
        anticommute_witness: None,
        type_pq: None,
        pure_plus: None,
        pure_minus: None,
        support_invariant: None,
        regular: None,
        strict: !eta.is_zero(),
    };
    if let Some(s) = structure {
        s.check_compatible(g)?;
        let witness = anticommute_witness(&contractions, s.matrix());
        report.anticommutes = Some(witness.is_none());
        report.anticommute_witness = witness;
        let invariant = report.support.is_invariant_under(s.matrix());
        report.support_invariant = Some(invariant);
        match s.epsilon() {
            Sign::Plus => {
                let (vp, vm) = s.eigenspaces().expect("para structures carry eigenspaces");
                let p = report.support.intersect(vp)?.dim();
                let q = report.support.intersect(vm)?.dim();
                report.type_pq = Some((p, q));
                report.pure_plus = Some(vp.contains_subspace(&report.support));
                report.pure_minus = Some(vm.contains_subspace(&report.support));
                report.regular = Some(p + q == n / 2);
            }
            Sign::Minus => {
                report.regular = Some(invariant && report.support_dim == n / 2);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::int;
    use crate::structures::presets;

    fn split33() -> ScalarProduct {
        ScalarProduct::split(3, 3).unwrap()
    }

    fn e(i: usize) -> Vector {
        Vector::basis(6, i - 1)
    }

    fn f(i: usize) -> Vector {
        Vector::basis(6, i + 2)
    }

    fn golden() -> ThreeVector {
        ThreeVector::basis(6, 3, 4, 5).unwrap()
    }

    /// Determinant of Gram pairings, written out independently.
    fn det_oracle(g: &ScalarProduct, abc: [&Vector; 3], xyz: [&Vector; 3]) -> Rational {
        let m: Vec<Vec<Rational>> = abc
            .iter()
            .map(|u| xyz.iter().map(|w| g.pair(u, w)).collect())
            .collect();
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    #[test]
    fn evaluate_golden() {
        let g = split33();
        let eta = golden();
        let expect = det_oracle(&g, [&f(1), &f(2), &f(3)], [&e(1), &e(2), &e(3)]);
        assert_eq!(expect, int(1));
        assert_eq!(evaluate(&eta, &g, &e(1), &e(2), &e(3)).unwrap(), expect);
        assert_eq!(evaluate(&eta, &g, &e(2), &e(1), &e(3)).unwrap(), int(-1));
        let zero = det_oracle(&g, [&f(1), &f(2), &f(3)], [&e(1), &e(2), &f(3)]);
        assert_eq!(zero, int(0));
        assert_eq!(evaluate(&eta, &g, &e(1), &e(2), &f(3)).unwrap(), zero);
    }

    #[test]
    fn contract_golden() {
        let g = split33();
        let eta = golden();
        let m = contract(&eta, &g, &e(1)).unwrap();
        assert_eq!(m.mul_vec(&e(2)), f(3));
        assert!(contract(&eta, &g, &f(1)).unwrap().is_zero());
        for i in 1..=3 {
            let x = &e(i) + &f(i);
            assert!(contract(&eta, &g, &x).unwrap().mul_vec(&x).is_zero());
        }
    }

    #[test]
    fn support_golden_and_zero() {
        let g = split33();
        let s = support(&golden(), &g).unwrap();
        assert_eq!(s, Subspace::coordinate(6, &[3, 4, 5]));
        assert!(is_isotropic(&s, &g).unwrap());
        assert!(support(&ThreeVector::zero(6), &g).unwrap().is_zero());
    }

    #[test]
    fn isotropy_examples() {
        let g = split33();
        assert!(!is_isotropic(&Subspace::coordinate(6, &[0, 3]), &g).unwrap());
        assert!(is_isotropic(&Subspace::zero(6), &g).unwrap());
    }

    #[test]
    fn pure_projection_examples() {
        let g = split33();
        let tau = presets::split_para(3, &g).unwrap();
        let (minus, plus) = pure_type_project(&golden(), &g, &tau).unwrap();
        assert_eq!(minus, golden());
        assert!(plus.is_zero());
        let mixed = ThreeVector::basis(6, 0, 1, 5).unwrap();
        let (minus, plus) = pure_type_project(&mixed, &g, &tau).unwrap();
        assert!(minus.is_zero());
        assert_eq!(plus, mixed);
        let (m0, p0) = pure_type_project(&ThreeVector::zero(6), &g, &tau).unwrap();
        assert!(m0.is_zero() && p0.is_zero());
    }

    #[test]
    fn classify_golden() {
        let g = split33();
        let tau = presets::split_para(3, &g).unwrap();
        let r = classify_cone(&golden(), &g, Some(&tau)).unwrap();
        assert!(r.in_cone && r.isotropic && r.composition_zero);
        assert_eq!(r.anticommutes, Some(true));
        assert_eq!(r.type_pq, Some((3, 0)));
        assert_eq!(r.pure_plus, Some(true));
        assert_eq!(r.regular, Some(true));
        assert!(r.strict);
    }

    #[test]
    fn classify_non_cone() {
        let g = split33();
        let eta = ThreeVector::basis(6, 0, 1, 3).unwrap();
        let r = classify_cone(&eta, &g, None).unwrap();
        assert!(!r.isotropic && !r.in_cone && !r.composition_zero);
        assert!(r.composition_witness.is_some());
    }

    #[test]
    fn classify_twelve_dim_example() {
        // e+_i = f_i (tau = +1), e-_i = e_i (tau = -1) in split(6,6)
        let g = ScalarProduct::split(6, 6).unwrap();
        let tau = presets::split_para(6, &g).unwrap();
        let eta = ThreeVector::basis(12, 6, 7, 8)
            .unwrap()
            .add(&ThreeVector::basis(12, 3, 4, 5).unwrap());
        let r = classify_cone(&eta, &g, Some(&tau)).unwrap();
        assert!(r.in_cone);
        assert_eq!(r.anticommutes, Some(true));
        assert_eq!(r.type_pq, Some((3, 3)));
        assert_eq!(r.pure_plus, Some(false));
        assert_eq!(r.pure_minus, Some(false));
        assert_eq!(r.regular, Some(true));
    }
}
