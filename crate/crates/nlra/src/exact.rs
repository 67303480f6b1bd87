//! Exact rational scalars and dense exact linear algebra.
//!
//! Everything downstream (axiom sweeps, cochain complexes, extension
//! constructions) reduces to rank / kernel / span questions over the
//! rationals, so this module is the one place where elimination happens.
//! Row reduction is fraction-free in the Bareiss style: rows are cleared to
//! integers and the forward pass runs over `BigInt` with exact divisions,
//! which bounds intermediate growth; the short backward pass to reduced
//! echelon form runs over rationals on the already-triangular matrix.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Ground field element: an arbitrary-precision rational in canonical form
/// (positive denominator, reduced). `BigRational` maintains both invariants.
pub type Scalar = BigRational;

/// Parse `"p"`, `"p/q"` or `"-p/q"` into a canonical scalar.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::ScalarParse(s.to_string()))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| Error::ScalarParse(s.to_string()))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Render a scalar as `p/q`, or `p` when the denominator is one.
/// (This is the `Display` of `BigRational`; kept as a named function since
/// it is the wire format of every file and report.)
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn scalar_int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn scalar(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Coordinate vector over the rationals with a fixed ambient dimension.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Vector {
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Self {
        Vector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            entries: vec![Scalar::zero(); dim],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut v = Vector::zero(dim);
        v.entries[i] = Scalar::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector::new(entries.iter().map(|&n| scalar_int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector::new(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector::new(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector::new(self.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector::new(self.iter().map(|a| a * c).collect())
    }

    /// `self += c * v`, the workhorse of every multilinear expansion.
    pub fn add_scaled(&mut self, c: &Scalar, v: &Vector) {
        assert_eq!(self.dim(), v.dim());
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(v.iter()) {
            *a += c * b;
        }
    }

    pub fn set(&mut self, i: usize, x: Scalar) {
        self.entries[i] = x;
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vector::dim);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.dim(), c);
            data.extend(row.entries);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose `j`-th column is `cols[j]`; `ambient` fixes the row
    /// count so an empty column list still has a well-defined shape.
    pub fn from_cols(ambient: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zero(ambient, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.dim(), ambient);
            for i in 0..ambient {
                m.set(i, j, v[i].clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim());
        let mut out = Vector::zero(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    acc += a * &v[j];
                }
            }
            out.set(i, acc);
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// `[self | other]` side by side.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        bareiss_echelon(&to_integer_rows(self)).pivots.len()
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let ech = bareiss_echelon(&to_integer_rows(self));
        let pivots = ech.pivots.clone();
        (reduce_echelon(ech, self.cols), pivots)
    }

    /// Canonical basis of the right null space `{ v : M v = 0 }`, read off
    /// the reduced echelon form: the basis vector for free column `j` has a
    /// one in slot `j` and is zero in every other free slot.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if is_pivot[j] {
                continue;
            }
            let mut v = Vector::zero(self.cols);
            v.set(j, Scalar::one());
            for (row, &pc) in pivots.iter().enumerate() {
                let x = r.get(row, j);
                if !x.is_zero() {
                    v.set(pc, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * c = v` for the canonical coefficient vector (free
    /// variables zero), or `None` when `v` is outside the column span.
    pub fn solve_in_span(&self, v: &Vector) -> Option<Vector> {
        assert_eq!(self.rows, v.dim(), "solve_in_span: row/vector mismatch");
        let aug = self.hstack(&Matrix::from_cols(self.rows, std::slice::from_ref(v)));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut c = Vector::zero(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            c.set(pc, r.get(row, self.cols).clone());
        }
        Some(c)
    }

    /// Exact inverse, or `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Indices of a maximal independent set of columns, scanned left to
    /// right (the pivot columns of the echelon form).
    pub fn independent_cols(&self) -> Vec<usize> {
        bareiss_echelon(&to_integer_rows(self)).pivots
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `rank(Z) - rank(B)` with the containment `col(B) ⊆ col(Z)` checked;
/// a violation means the complex feeding us was inconsistent upstream.
pub fn quotient_dim(z: &Matrix, b: &Matrix) -> Result<usize, Error> {
    assert_eq!(z.rows(), b.rows(), "quotient_dim: ambient mismatch");
    let rz = z.rank();
    if b.cols() > 0 && z.hstack(b).rank() != rz {
        let witness = (0..b.cols())
            .find(|&j| z.solve_in_span(&b.col(j)).is_none())
            .unwrap_or(0);
        return Err(Error::SpanContainment { column: witness });
    }
    Ok(rz - b.rank())
}

struct Echelon {
    /// Integer echelon rows (above-diagonal junk not yet cleared).
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Clear each row to integers (multiply by the lcm of its denominators;
/// row scaling changes neither row space nor kernel).
fn to_integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination. Every division below is
/// exact: the entries after step k are k+1 minors of the input.
fn bareiss_echelon(input: &[Vec<BigInt>]) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = input.to_vec();
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let factor = row[c].clone();
            for j in 0..ncols {
                let num = &pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    Echelon { rows, pivots }
}

/// Backward pass: normalise pivots to one and clear above, over rationals.
/// The matrix is already triangular so fill-in is bounded.
fn reduce_echelon(ech: Echelon, ncols: usize) -> Matrix {
    let mut m: Vec<Vec<Scalar>> = ech
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let pivots = &ech.pivots;
    for r in (0..pivots.len()).rev() {
        let c = pivots[r];
        let inv = m[r][c].clone();
        for j in c..ncols {
            let x = m[r][j].clone() / &inv;
            m[r][j] = x;
        }
        for above in 0..r {
            let factor = m[above][c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..ncols {
                let x = m[above][j].clone() - &factor * &m[r][j];
                m[above][j] = x;
            }
        }
    }
    Matrix::from_rows(m.into_iter().map(Vector::new).collect())
}
