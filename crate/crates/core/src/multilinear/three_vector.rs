use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{rational, Matrix, Rational, Vector};

/// Element of `Λ³Q^n`, stored sparsely on strictly increasing index triples.
///
/// Indices are 0-based in memory; files and reports use 1-based labels.
/// Zero coefficients are never stored, so structural equality is equality of
/// 3-vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeVector {
    dim: usize,
    terms: BTreeMap<[usize; 3], Rational>,
}

/// Sorts three distinct indices, returning the permutation sign.
pub(crate) fn sort_triple(i: usize, j: usize, k: usize) -> Option<([usize; 3], bool)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut odd = false;
    for a in 0..3 {
        for b in 0..(2 - a) {
            if t[b] > t[b + 1] {
                t.swap(b, b + 1);
                odd = !odd;
            }
        }
    }
    Some((t, odd))
}

impl ThreeVector {
    pub fn zero(dim: usize) -> Self {
        ThreeVector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `e_i ∧ e_j ∧ e_k` (0-based indices, any order).
    pub fn basis(dim: usize, i: usize, j: usize, k: usize) -> Result<Self> {
        let mut eta = Self::zero(dim);
        eta.add_term(i, j, k, rational::one())?;
        Ok(eta)
    }

    /// Sums the given terms; triples may be unordered.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = ([usize; 3], Rational)>,
    ) -> Result<Self> {
        let mut eta = Self::zero(dim);
        for ([i, j, k], c) in terms {
            eta.add_term(i, j, k, c)?;
        }
        Ok(eta)
    }

    /// Adds `c · e_i ∧ e_j ∧ e_k`.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx + 1,
                    dim: self.dim,
                });
            }
        }
        let (key, odd) = sort_triple(i, j, k).ok_or(Error::RepeatedIndex {
            index: if i == j || i == k { i + 1 } else { j + 1 },
        })?;
        let c = if odd { -c } else { c };
        self.accumulate(key, c);
        Ok(())
    }

    fn accumulate(&mut self, key: [usize; 3], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `a ∧ b ∧ c` for arbitrary vectors.
    pub fn wedge(a: &Vector, b: &Vector, c: &Vector) -> Self {
        let n = a.dim();
        let mut out = Self::zero(n);
        out.add_wedge(&rational::one(), a, b, c);
        out
    }

    fn add_wedge(&mut self, s: &Rational, a: &Vector, b: &Vector, c: &Vector) {
        let nz = |v: &Vector| -> Vec<usize> { (0..v.dim()).filter(|&i| !v[i].is_zero()).collect() };
        let (ia, ib, ic) = (nz(a), nz(b), nz(c));
        for &i in &ia {
            for &j in &ib {
                if j == i {
                    continue;
                }
                let ab = s * &a[i] * &b[j];
                for &k in &ic {
                    if let Some((key, odd)) = sort_triple(i, j, k) {
                        let v = &ab * &c[k];
                        self.accumulate(key, if odd { -v } else { v });
                    }
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Stored terms with 0-based increasing triples.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize; 3], &Rational)> {
        self.terms.iter()
    }

    /// Coefficient on `e_i ∧ e_j ∧ e_k` including the permutation sign.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Rational {
        match sort_triple(i, j, k) {
            None => Rational::zero(),
            Some((key, odd)) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(Rational::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        ThreeVector {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn add(&self, other: &ThreeVector) -> Self {
        assert_eq!(self.dim, other.dim, "3-vector dimension mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ThreeVector) -> Self {
        self.add(&other.scale(&-rational::one()))
    }

    /// Natural action of a linear map on `Λ³`: each factor is mapped by `m`.
    pub fn transform(&self, m: &Matrix) -> Self {
        assert_eq!(m.cols(), self.dim);
        let mut out = Self::zero(m.rows());
        let cols: Vec<Vector> = (0..m.cols()).map(|j| m.column(j)).collect();
        for ([i, j, k], c) in &self.terms {
            out.add_wedge(c, &cols[*i], &cols[*j], &cols[*k]);
        }
        out
    }

    /// Sum over the three ways of applying `m` to exactly two factors.
    pub(crate) fn apply_to_pairs(&self, m: &Matrix) -> Self {
        let mut out = Self::zero(self.dim);
        let mcols: Vec<Vector> = (0..self.dim).map(|j| m.column(j)).collect();
        let e = |i: usize| Vector::basis(self.dim, i);
        for ([i, j, k], c) in &self.terms {
            out.add_wedge(c, &mcols[*i], &mcols[*j], &e(*k));
            out.add_wedge(c, &mcols[*i], &e(*j), &mcols[*k]);
            out.add_wedge(c, &e(*i), &mcols[*j], &mcols[*k]);
        }
        out
    }

    /// True if every stored term uses only indices from `allowed`.
    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.terms.keys().all(|t| t.iter().all(|&i| allowed(i)))
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for ThreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ([i, j, k], c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) e{}^e{}^e{}", rational::to_string(c), i + 1, j + 1, k + 1)?;
        }
        Ok(())
    }
}
