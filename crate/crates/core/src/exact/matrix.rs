//! Dense matrices over arbitrary-precision integers.
//!
//! Provides the exact linear algebra the rest of the crate is built on:
//! fraction-free (Bareiss) determinants, Faddeev–LeVerrier characteristic
//! polynomials, row Hermite normal form, Smith normal form with unimodular
//! transforms, and integer kernels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::IntPoly;
use crate::exact::Int;

/// Rectangular matrix with exact integer entries, row-major storage.
///
/// Zero-by-zero matrices are allowed; they show up as the Gram matrices of
/// rank-0 sublattices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix constructor"
        );
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
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

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect_one = i == j;
                if self[(i, j)].is_one() != expect_one || (!expect_one && !self[(i, j)].is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Int::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Matrix power by repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, k: u64) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).fold(Int::zero(), |acc, i| acc + &self[(i, i)]))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let pivot_row = ((k + 1)..n).find(|&r| !m[(r, k)].is_zero());
                match pivot_row {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[(i, j)] = q;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// All leading principal minors `det(A[..k, ..k])`, `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Result<Vec<Int>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        (1..=self.rows).map(|k| self.submatrix(k).det()).collect()
    }

    fn submatrix(&self, k: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
    /// recurrence. All divisions are exact over the integers and asserted.
    pub fn char_poly(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![Int::zero(); n + 1];
        coeffs[n] = Int::one();
        let mut aux = IntMatrix::identity(n);
        for k in 1..=n {
            let m = self * &aux;
            let tr = m.trace()?;
            let (c, r) = (-tr).div_rem(&Int::from(k as u64));
            if !r.is_zero() {
                return Err(Error::Inconsistency(
                    "Faddeev-LeVerrier trace division was inexact".into(),
                ));
            }
            aux = m;
            for i in 0..n {
                aux[(i, i)] += &c;
            }
            coeffs[n - k] = c;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = y;
            self[(b, j)] = x;
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = y;
            self[(i, b)] = x;
        }
    }

    /// `row[a] += c * row[b]`.
    fn add_row_multiple(&mut self, a: usize, b: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = c * &self[(b, j)];
            self[(a, j)] += t;
        }
    }

    /// `col[a] += c * col[b]`.
    fn add_col_multiple(&mut self, a: usize, b: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = c * &self[(i, b)];
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    /// Row Hermite normal form. Returns the reduced matrix (zero rows
    /// dropped) together with the rank; rows of the result are a basis of
    /// the row space intersected with the integer lattice spanned by the
    /// input rows.
    pub fn row_hnf(&self) -> (IntMatrix, usize) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_row = 0;
        let mut pivot_cols = Vec::new();
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            // Euclidean reduction in this column below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..rows {
                    if !m[(r, col)].is_zero() {
                        let better = match best {
                            None => true,
                            Some(b) => m[(r, col)].abs() < m[(b, col)].abs(),
                        };
                        if better {
                            best = Some(r);
                        }
                    }
                }
                let Some(b) = best else { break };
                m.swap_rows(pivot_row, b);
                let mut any_left = false;
                for r in (pivot_row + 1)..rows {
                    if !m[(r, col)].is_zero() {
                        let q = Int::div_floor(&m[(r, col)], &m[(pivot_row, col)]);
                        m.add_row_multiple(r, pivot_row, &-q);
                        if !m[(r, col)].is_zero() {
                            any_left = true;
                        }
                    }
                }
                if !any_left {
                    break;
                }
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            if m[(pivot_row, col)].is_negative() {
                m.negate_row(pivot_row);
            }
            // Reduce the entries above the pivot into [0, pivot).
            for r in 0..pivot_row {
                let q = Int::div_floor(&m[(r, col)], &m[(pivot_row, col)]);
                m.add_row_multiple(r, pivot_row, &-q);
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_row;
        let mut rows_out = Vec::with_capacity(rank);
        for i in 0..rank {
            rows_out.push(m.row(i).to_vec());
        }
        (
            if rank == 0 {
                IntMatrix::zero(0, cols)
            } else {
                IntMatrix::from_rows(rows_out)
            },
            rank,
        )
    }

    /// Smith normal form with unimodular transforms `U * A * V = diag`.
    ///
    /// Pivots are chosen as the smallest-absolute-value nonzero entry of the
    /// remaining block, scanned row-major, so the transforms are
    /// reproducible. Diagonal entries are nonnegative and form a
    /// divisibility chain.
    pub fn snf(&self) -> SnfResult {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut u = IntMatrix::identity(rows);
        let mut v = IntMatrix::identity(cols);

        let steps = rows.min(cols);
        for t in 0..steps {
            'outer: loop {
                // Deterministic smallest-pivot scan of the trailing block.
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        if !a[(i, j)].is_zero() {
                            let better = match pivot {
                                None => true,
                                Some((pi, pj)) => a[(i, j)].abs() < a[(pi, pj)].abs(),
                            };
                            if better {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
                let Some((pi, pj)) = pivot else { break };
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let mut clean = true;
                for i in (t + 1)..rows {
                    if !a[(i, t)].is_zero() {
                        let q = Int::div_floor(&a[(i, t)], &a[(t, t)]);
                        a.add_row_multiple(i, t, &-q.clone());
                        u.add_row_multiple(i, t, &-q);
                        if !a[(i, t)].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in (t + 1)..cols {
                    if !a[(t, j)].is_zero() {
                        let q = Int::div_floor(&a[(t, j)], &a[(t, t)]);
                        a.add_col_multiple(j, t, &-q.clone());
                        v.add_col_multiple(j, t, &-q);
                        if !a[(t, j)].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue 'outer;
                }
                // Enforce that the pivot divides every remaining entry.
                for i in (t + 1)..rows {
                    for j in (t + 1)..cols {
                        if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                            a.add_row_multiple(t, i, &Int::one());
                            u.add_row_multiple(t, i, &Int::one());
                            continue 'outer;
                        }
                    }
                }
                break;
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
        }

        let diagonal: Vec<Int> = (0..steps).map(|i| a[(i, i)].clone()).collect();
        SnfResult {
            diagonal,
            u,
            v,
        }
    }

    /// Basis of the right kernel `{x : A x = 0}` as matrix columns. The
    /// kernel of an integer matrix is a primitive (saturated) sublattice,
    /// so the columns are a basis of it.
    pub fn right_kernel(&self) -> IntMatrix {
        let snf = self.snf();
        let rank = snf.rank();
        let n = self.cols;
        let mut cols = Vec::new();
        for j in rank..n {
            let col: Vec<Int> = (0..n).map(|i| snf.v[(i, j)].clone()).collect();
            cols.push(col);
        }
        let mut out = IntMatrix::zero(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                out[(i, j)] = col[i].clone();
            }
        }
        out
    }

    /// Stack two matrices with equal column counts vertically.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = -v.clone();
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation: `u * a * v = diag(diagonal)`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub diagonal: Vec<Int>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries strictly greater than one; these are the
    /// nontrivial elementary divisors.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        self.diagonal
            .iter()
            .filter(|d| **d > Int::one())
            .cloned()
            .collect()
    }

    /// Check the divisibility chain `d_1 | d_2 | ...` on nonzero entries.
    pub fn chain_holds(&self) -> bool {
        let nz: Vec<&Int> = self.diagonal.iter().filter(|d| !d.is_zero()).collect();
        nz.windows(2).all(|w| w[1].is_multiple_of(w[0]))
    }
}
