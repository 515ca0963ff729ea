use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::rational::{self, Rational};
use super::vector::Vector;

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row-echelon form: nonzero rows only, leading entries equal to one.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: n_rows,
            cols,
            data,
        }
    }

    /// Builds a `rows x cols` matrix from row vectors; `cols` is needed for
    /// the empty case.
    pub fn from_row_vectors(cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols, "row length mismatch");
            m.data[i * cols..(i + 1) * cols].clone_from_slice(&r.0);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        Self::from_row_vectors(rows, columns).transpose()
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let mut out = Vector::zeros(self.rows);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] += a * vj;
                }
            }
        }
        out
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// `self * other + other * self`
    pub fn anticommutator(&self, other: &Matrix) -> Matrix {
        &(self * other) + &(other * self)
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "stack: column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self` (same row count).
    pub fn augment(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "augment: row mismatch");
        let cols = self.cols + other.cols;
        let mut m = Matrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row-echelon form by fraction-free Gauss-Jordan elimination.
    ///
    /// Rows are scaled to primitive integer vectors, eliminated with
    /// cross-multiplication and divided by their content after each step;
    /// rationals only reappear when the pivots are normalized at the end.
    pub fn echelon(&self) -> Echelon {
        let cols = self.cols;
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| primitive_integer_row(&self.data[i * cols..(i + 1) * cols]))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..cols {
            if top == rows.len() {
                break;
            }
            let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, p);
            let pivot_row = rows[top].clone();
            let pivot = pivot_row[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    match (x.is_zero(), y.is_zero()) {
                        (true, true) => {}
                        (false, true) => *x *= &pivot,
                        (true, false) => *x = -(&factor * y),
                        (false, false) => *x = &*x * &pivot - &factor * y,
                    }
                }
                make_primitive(row);
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        let mut out = Matrix::zeros(top, cols);
        for (i, (row, &pc)) in rows.iter().zip(&pivots).enumerate() {
            let lead = row[pc].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out[(i, j)] = Rational::new(x.clone(), lead.clone());
                }
            }
        }
        Echelon { rows: out, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ech = self.augment(&Matrix::identity(n)).echelon();
        if ech.rank() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = ech.rows[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Matrix exponential of a nilpotent matrix as the terminating series.
    /// Returns `None` if the matrix is not nilpotent.
    pub fn nilpotent_exp(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut result = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..=n {
            term = (&term * self).scale(&rational::frac(1, k as i64));
            if term.is_zero() {
                return Some(result);
            }
            result = &result + &term;
        }
        if (&term * self).is_zero() {
            Some(result)
        } else {
            None
        }
    }

    /// Flattens row-major into a vector of length `rows * cols`.
    pub fn flatten(&self) -> Vector {
        Vector(self.data.clone())
    }

    pub fn from_flat(rows: usize, cols: usize, v: &[Rational]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: v.to_vec(),
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = rational::denominator_lcm(row);
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
    debug_assert!(!g.is_negative());
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}
