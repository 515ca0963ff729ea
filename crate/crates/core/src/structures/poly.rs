use std::collections::BTreeMap;

use num::Zero;

use crate::exactlin::{Matrix, Rational, Vector};

/// Monomial in the linear coordinates, as a sorted multiset of indices.
pub type Monomial = Vec<usize>;

/// Endomorphism field with polynomial coefficients in the linear coordinates
/// `x^1..x^n`: a finite sum of `x^M · A_M`.
///
/// The J-field is affine; products of two fields reach degree two, which is
/// where identities such as `J(x)^2 = eps Id` are checked coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEndo {
    size: usize,
    terms: BTreeMap<Monomial, Matrix>,
}

impl PolyEndo {
    pub fn zero(size: usize) -> Self {
        PolyEndo {
            size,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: Matrix) -> Self {
        let mut p = Self::zero(m.rows());
        p.add_term(Vec::new(), m);
        p
    }

    /// `constant + sum_i x^i · linear[i]`
    pub fn affine(constant: Matrix, linear: &[Matrix]) -> Self {
        let mut p = Self::constant(constant);
        for (i, m) in linear.iter().enumerate() {
            p.add_term(vec![i], m.clone());
        }
        p
    }

    fn add_term(&mut self, mut mono: Monomial, m: Matrix) {
        if m.is_zero() {
            return;
        }
        mono.sort_unstable();
        match self.terms.remove(&mono) {
            Some(prev) => {
                let s = &prev + &m;
                if !s.is_zero() {
                    self.terms.insert(mono, s);
                }
            }
            None => {
                self.terms.insert(mono, m);
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Coefficient matrix of `x^mono` (zero if absent).
    pub fn coefficient(&self, mono: &[usize]) -> Matrix {
        let mut key = mono.to_vec();
        key.sort_unstable();
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.size, self.size))
    }

    pub fn constant_term(&self) -> Matrix {
        self.coefficient(&[])
    }

    pub fn linear_coeff(&self, i: usize) -> Matrix {
        self.coefficient(&[i])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Matrix)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &PolyEndo) -> PolyEndo {
        let mut out = self.clone();
        for (mono, m) in &other.terms {
            out.add_term(mono.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyEndo) -> PolyEndo {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, s: &Rational) -> PolyEndo {
        let mut out = Self::zero(self.size);
        for (mono, m) in &self.terms {
            out.add_term(mono.clone(), m.scale(s));
        }
        out
    }

    /// Pointwise composition `self(x) ∘ other(x)`.
    pub fn compose(&self, other: &PolyEndo) -> PolyEndo {
        let mut out = Self::zero(self.size);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let mono: Monomial = ma.iter().chain(mb).copied().collect();
                out.add_term(mono, a * b);
            }
        }
        out
    }

    pub fn mul_right(&self, m: &Matrix) -> PolyEndo {
        self.compose(&PolyEndo::constant(m.clone()))
    }

    pub fn mul_left(&self, m: &Matrix) -> PolyEndo {
        PolyEndo::constant(m.clone()).compose(self)
    }

    /// Coefficient-wise transpose.
    pub fn transpose(&self) -> PolyEndo {
        let mut out = Self::zero(self.size);
        for (mono, m) in &self.terms {
            out.add_term(mono.clone(), m.transpose());
        }
        out
    }

    pub fn evaluate(&self, x: &Vector) -> Matrix {
        let mut out = Matrix::zeros(self.size, self.size);
        for (mono, m) in &self.terms {
            let mut c = Rational::from_integer(1.into());
            for &i in mono {
                c *= &x[i];
            }
            if !c.is_zero() {
                out = &out + &m.scale(&c);
            }
        }
        out
    }

    /// Directional derivative along the constant vector `v`.
    pub fn derivative(&self, v: &Vector) -> PolyEndo {
        let mut out = Self::zero(self.size);
        for (mono, m) in &self.terms {
            for (pos, &i) in mono.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = mono.clone();
                rest.remove(pos);
                out.add_term(rest, m.scale(&v[i]));
            }
        }
        out
    }
}
