//! Exact rational scalars, dense matrices and a canonical subspace lattice.
//!
//! `Rational` is arbitrary-precision and always in lowest terms with a
//! positive denominator. `Subspace` bases are kept in reduced row echelon
//! form, so two subspaces are equal exactly when their basis matrices are
//! identical.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact scalar over Q. Lowest terms and positive denominator are
/// maintained by `num-rational` itself.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p" or "p/q". The stored value is reduced with q > 0 regardless of
/// the input's form.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".to_string());
    }
    Rational::from_str(t).map_err(|e| format!("bad rational {t:?}: {e}"))
}

/// Canonical string form: "p" or "p/q" with q > 0, lowest terms.
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

/// Dense row-major matrix of rationals. Zero-sized shapes are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row);
        }
        Matrix::new(n, cols, data)
    }

    /// Integer literal convenience, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Matrix::from_fn(r, c, |i, j| rat(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn set_row(&mut self, r: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.cols);
        for (c, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn set_col(&mut self, c: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.rows);
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.at(r, c))
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.at(r, k) * other.at(k, c);
            }
            acc
        })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.at(rows.start + r, cols.start + c).clone()
        })
    }

    /// Reduced row echelon form with its rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            let pivot_row = (lead..m.rows).find(|&r| !m.at(r, col).is_zero());
            let pr = match pivot_row {
                Some(r) => r,
                None => continue,
            };
            if pr != lead {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, lead * m.cols + c);
                }
            }
            let inv = {
                let p = m.at(lead, col).clone();
                p.recip()
            };
            for c in col..m.cols {
                let v = m.at(lead, c) * &inv;
                m.set(lead, c, v);
            }
            for r in 0..m.rows {
                if r != lead && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &factor * m.at(lead, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, lead, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Right null space {x : Ax = 0} as a canonical subspace of Q^cols.
    pub fn kernel(&self) -> Subspace {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -r.at(i, f).clone();
            }
            rows.push(v);
        }
        Subspace::from_rows(self.cols, Matrix::from_rows(self.cols, rows))
    }

    /// Column space as a subspace of Q^rows.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_rows(self.rows, self.transpose())
    }

    /// One exact solution of self * x = b, or None if inconsistent.
    /// b may have several columns.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row count mismatch");
        let aug = self.hstack(b);
        let (r, _, pivots) = aug.rref();
        // A pivot in the b-block means inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, r.at(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// Full solution set of self * x = b for a single-column b:
    /// a particular solution together with the kernel of self.
    pub fn solve_full(&self, b: &Matrix) -> Option<(Matrix, Subspace)> {
        let part = self.solve(b)?;
        Some((part, self.kernel()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let x = self.solve(&Matrix::identity(self.rows))?;
        if self.mul(&x) == Matrix::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        // Fraction-free enough for our sizes: plain elimination tracking the product.
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let pr = match (col..n).find(|&r| !m.at(r, col).is_zero()) {
                Some(r) => r,
                None => return Rational::zero(),
            };
            if pr != col {
                for c in 0..n {
                    m.data.swap(pr * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            let inv = pivot.recip();
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col) * &inv;
                    for c in col..n {
                        let v = m.at(r, c) - &factor * m.at(col, c);
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }
}

/// Row space over Q in canonical (RREF) form. Structural equality is
/// subspace equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace dim {} of Q^{} {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    /// Canonicalizes arbitrary spanning rows: RREF, zero rows dropped.
    pub fn from_rows(ambient: usize, rows: Matrix) -> Self {
        assert_eq!(rows.cols(), ambient, "ambient dimension mismatch");
        let (r, rank, _) = rows.rref();
        let basis = r.submatrix(0..rank, 0..ambient);
        Subspace { ambient, basis }
    }

    pub fn from_vectors(ambient: usize, vecs: &[Vec<Rational>]) -> Self {
        Subspace::from_rows(ambient, Matrix::from_rows(ambient, vecs.to_vec()))
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::from_rows(ambient, Matrix::zeros(0, ambient))
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rows(ambient, Matrix::identity(ambient))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|r| self.basis.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let stacked = self
            .basis
            .vstack(&Matrix::from_rows(self.ambient, vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        (0..other.dim()).all(|r| self.contains_vector(&other.basis.row(r)))
    }

    /// Orthogonal complement with respect to the standard dot product.
    /// Over Q the dot product is positive definite, so this is a lattice
    /// complement: dim + dim-perp = ambient and perp-perp = self.
    pub fn dot_complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    /// Rows K with self = {x : Kx = 0}; used to turn membership into linear
    /// conditions.
    pub fn kernel_form(&self) -> Matrix {
        self.dot_complement().basis.clone()
    }
}

/// Sum of two subspaces.
pub fn sum(u: &Subspace, v: &Subspace) -> Subspace {
    assert_eq!(u.ambient, v.ambient, "ambient dimension mismatch");
    Subspace::from_rows(u.ambient, u.basis.vstack(&v.basis))
}

/// Intersection, computed through dot complements (exact over Q).
pub fn intersect(u: &Subspace, v: &Subspace) -> Subspace {
    assert_eq!(u.ambient, v.ambient, "ambient dimension mismatch");
    sum(&u.dot_complement(), &v.dot_complement()).dot_complement()
}

/// Preimage {x : f(x) in v} of a subspace under a linear map.
pub fn preimage(f: &Matrix, v: &Subspace) -> Subspace {
    assert_eq!(f.rows(), v.ambient, "codomain dimension mismatch");
    if v.dim() == v.ambient {
        return Subspace::full(f.cols());
    }
    v.kernel_form().mul(f).kernel()
}

/// Image f(u) of a subspace under a linear map.
pub fn image_of(f: &Matrix, u: &Subspace) -> Subspace {
    assert_eq!(f.cols(), u.ambient, "domain dimension mismatch");
    let rows: Vec<Vec<Rational>> = (0..u.dim()).map(|r| f.mul_vec(&u.basis.row(r))).collect();
    Subspace::from_vectors(f.rows(), &rows)
}
