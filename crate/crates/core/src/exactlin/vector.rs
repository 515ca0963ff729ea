use std::fmt;
use std::ops::{Add, Deref, DerefMut, Neg, Sub};

use num::Zero;

use super::rational::{self, Rational};

/// Column vector of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    /// Standard basis vector `e_index` (0-based).
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[index] = rational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector(values.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    /// Euclidean coordinate dot product (no scalar product involved).
    pub fn dot(&self, other: &Vector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: &Rational, other: &Vector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

impl Deref for Vector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [Rational] {
        &mut self.0
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational::to_string(x))?;
        }
        write!(f, ")")
    }
}
