use crate::error::{inconsistency, Error, Result};
use crate::exactlin::{rational, Matrix, Subspace, Vector};
use crate::multilinear::{self, classify_cone, ScalarProduct, ThreeVector};

use super::{CompatibleStructure, PolyEndo};

/// The almost (para-)complex structure `J(x) = (Id + 2 sum x^i eta_{e_i}) J0`
/// on the flat space, together with the data needed to check its geometry.
///
/// Since all `eta_X eta_Y` vanish, the exponential `exp(2 sum x^i eta_i)`
/// truncates after the linear term and `J` is affine in `x`.
#[derive(Debug, Clone)]
pub struct JField {
    eta: ThreeVector,
    j0: CompatibleStructure,
    g: ScalarProduct,
    contractions: Vec<Matrix>,
    /// `B_i = 2 eta_{e_i} J0 = D_{e_i} J`
    derivatives: Vec<Matrix>,
    field: PolyEndo,
}

/// Outcome of the nearly (para-)Kähler verification. Every flag is an exact
/// polynomial identity in the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NpkReport {
    /// `(D_X J) Y + (D_Y J) X = 0`
    pub nearly: bool,
    /// `D_X J = [eta_X, J]`, i.e. `∇J = 0` for `∇ = D - eta`
    pub nabla_j_zero: bool,
    /// every `eta_X` is g-skew
    pub nabla_g_zero: bool,
    /// `T(X, Y) = -2 eta_X Y`
    pub torsion_minus_2eta: bool,
    /// `g(T(·,·),·)` is alternating
    pub torsion_skew: bool,
    /// `eta_X = -eps/2 · J (D_X J)`
    pub eta_recovered: bool,
    /// `J(x)^2 = eps Id`
    pub j_squared: bool,
    /// `J(x)` g-skew
    pub j_skew: bool,
    /// `g((D_X J) Y, (D_Z J) W) = 0`
    pub flat_identity: bool,
    /// `D eta = 0` and `[eta_X, eta_Y] = 0`
    pub eta_parallel: bool,
    /// `eta != 0`, equivalently `DJ != 0`
    pub strict: bool,
}

impl NpkReport {
    /// All identity checks hold (strictness is a property, not a check).
    pub fn all_pass(&self) -> bool {
        self.nearly
            && self.nabla_j_zero
            && self.nabla_g_zero
            && self.torsion_minus_2eta
            && self.torsion_skew
            && self.eta_recovered
            && self.j_squared
            && self.j_skew
            && self.flat_identity
            && self.eta_parallel
    }
}

/// Builds the J-field for `eta` starting from `J0` at the origin.
///
/// `eta` must lie in the isotropic cone and anticommute with `J0`; the
/// rejection names the offending basis pair or index (1-based).
pub fn make_field(eta: &ThreeVector, j0: &CompatibleStructure, g: &ScalarProduct) -> Result<JField> {
    let report = classify_cone(eta, g, Some(j0))?;
    if let Some((i, j)) = report.composition_witness {
        return Err(Error::NotInCone { pair: (i + 1, j + 1) });
    }
    if let Some(i) = report.anticommute_witness {
        return Err(Error::NotAnticommuting { index: i + 1 });
    }
    let contractions = multilinear::basis_contractions(eta, g)?;
    let two = rational::int(2);
    let derivatives: Vec<Matrix> = contractions
        .iter()
        .map(|m| (m * j0.matrix()).scale(&two))
        .collect();
    let field = PolyEndo::affine(j0.matrix().clone(), &derivatives);
    let f = JField {
        eta: eta.clone(),
        j0: j0.clone(),
        g: g.clone(),
        contractions,
        derivatives,
        field,
    };
    if !f.squares_to_epsilon() {
        return Err(inconsistency("field-square", "J(x)^2 != eps Id"));
    }
    if !f.is_skew() {
        return Err(inconsistency("field-skew", "J(x) is not g-skew"));
    }
    Ok(f)
}

impl JField {
    pub fn eta(&self) -> &ThreeVector {
        &self.eta
    }

    pub fn initial(&self) -> &CompatibleStructure {
        &self.j0
    }

    pub fn polynomial(&self) -> &PolyEndo {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `B_i = D_{e_i} J`, constant in `x`.
    pub fn derivative_coefficients(&self) -> &[Matrix] {
        &self.derivatives
    }

    fn eta_x(&self, x: &Vector) -> Matrix {
        multilinear::combine(&self.contractions, x)
    }

    fn squares_to_epsilon(&self) -> bool {
        let n = self.dim();
        let sq = self.field.compose(&self.field);
        sq == PolyEndo::constant(Matrix::identity(n).scale(&self.j0.epsilon().value()))
    }

    fn is_skew(&self) -> bool {
        let gm = self.g.gram();
        self.field
            .mul_left(gm)
            .add(&self.field.transpose().mul_right(gm))
            .is_zero()
    }

    /// `J(x)`.
    pub fn eval_j(&self, x: &Vector) -> Matrix {
        self.field.evaluate(x)
    }

    /// `D_X J = sum X^i B_i`, after checking `D_X J = -2 J(x) eta_X` as a
    /// polynomial identity.
    pub fn covariant_derivative_j(&self, x: &Vector) -> Result<Matrix> {
        let dxj = multilinear::combine(&self.derivatives, x);
        let from_field = self.field.derivative(x);
        if from_field != PolyEndo::constant(dxj.clone()) {
            return Err(inconsistency("dj-derivative", "sum X^i B_i differs from the derivative of J"));
        }
        let rhs = self.field.mul_right(&self.eta_x(x)).scale(&rational::int(-2));
        let lhs = PolyEndo::constant(dxj.clone());
        if lhs.sub(&rhs).is_zero() {
            Ok(dxj)
        } else {
            Err(inconsistency("dj-formula", "D_X J != -2 J eta_X"))
        }
    }

    /// Nijenhuis tensor of `J` at `x` on constant vector fields `X`, `Y`:
    /// `N = (D_{JX} J) Y - (D_{JY} J) X + J (D_Y J) X - J (D_X J) Y`.
    pub fn nijenhuis(&self, at: &Vector, x: &Vector, y: &Vector) -> Vector {
        let j = self.eval_j(at);
        let d = |v: &Vector| multilinear::combine(&self.derivatives, v);
        let jx = j.mul_vec(x);
        let jy = j.mul_vec(y);
        let t1 = d(&jx).mul_vec(y);
        let t2 = d(&jy).mul_vec(x);
        let t3 = j.mul_vec(&d(y).mul_vec(x));
        let t4 = j.mul_vec(&d(x).mul_vec(y));
        &(&(&t1 - &t2) + &t3) - &t4
    }

    /// Runs every nearly (para-)Kähler identity on the polynomial field.
    pub fn npk_report(&self, g: &ScalarProduct) -> Result<NpkReport> {
        if *g != self.g {
            return Err(Error::InvalidStructure("field was built for a different scalar product".into()));
        }
        let n = self.dim();
        let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
        let b = &self.derivatives;
        let eta = &self.contractions;

        let nearly = (0..n).all(|i| {
            (i..n).all(|j| (&b[i].mul_vec(&basis[j]) + &b[j].mul_vec(&basis[i])).is_zero())
        });

        let nabla_j_zero = (0..n).all(|i| {
            // D_i J - (eta_i J - J eta_i)
            let bracket = self.field.mul_left(&eta[i]).sub(&self.field.mul_right(&eta[i]));
            PolyEndo::constant(b[i].clone()).sub(&bracket).is_zero()
        });

        let nabla_g_zero = eta.iter().all(|m| g.is_skew(m));

        // torsion of ∇ = D - eta on coordinate fields
        let torsion = |i: usize, j: usize| -> Vector {
            &eta[j].mul_vec(&basis[i]) - &eta[i].mul_vec(&basis[j])
        };
        let torsion_minus_2eta = (0..n).all(|i| {
            (0..n).all(|j| torsion(i, j) == eta[i].mul_vec(&basis[j]).scale(&rational::int(-2)))
        });
        let t3: Vec<Vec<Vec<_>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t = torsion(i, j);
                        (0..n).map(|k| g.pair(&t, &basis[k])).collect()
                    })
                    .collect()
            })
            .collect();
        let torsion_skew = (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| t3[i][j][k] == -t3[j][i][k].clone() && t3[i][j][k] == -t3[i][k][j].clone())
            })
        });

        let factor = self.j0.epsilon().value() * rational::frac(-1, 2);
        let eta_recovered = (0..n).all(|i| {
            let rec = self.field.mul_right(&b[i]).scale(&factor);
            rec.sub(&PolyEndo::constant(eta[i].clone())).is_zero()
        });

        let dj_images: Vec<Vector> = (0..n)
            .flat_map(|i| basis.iter().map(move |e| b[i].mul_vec(e)))
            .filter(|v| !v.is_zero())
            .collect();
        let flat_identity = g.vanishes_on(&Subspace::span(n, &dj_images));

        // eta is constant in the flat coordinates, so D eta = 0 reduces to
        // the commutators vanishing
        let eta_parallel = (0..n).all(|i| (i..n).all(|j| eta[i].commutator(&eta[j]).is_zero()));

        let strict = !self.eta.is_zero();
        let dj_nonzero = b.iter().any(|m| !m.is_zero());
        if strict != dj_nonzero {
            return Err(inconsistency("strictness", "eta != 0 does not match DJ != 0"));
        }

        Ok(NpkReport {
            nearly,
            nabla_j_zero,
            nabla_g_zero,
            torsion_minus_2eta,
            torsion_skew,
            eta_recovered,
            j_squared: self.squares_to_epsilon(),
            j_skew: self.is_skew(),
            flat_identity,
            eta_parallel,
            strict,
        })
    }
}

impl PartialEq for JField {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.eta == other.eta && self.j0 == other.j0
    }
}
