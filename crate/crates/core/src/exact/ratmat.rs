//! Small dense matrices over exact rationals. Used for dual bases,
//! Gram–Schmidt data and the quadratic-form decomposition behind the
//! short-vector enumeration. Setup-only code paths; the enumeration hot
//! loop works on scaled integers.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = RatMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = Rat::from(m[(i, j)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Integer part when every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_integer() {
                    return None;
                }
                out[(i, j)] = self[(i, j)].to_integer();
            }
        }
        Some(out)
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_int(&self, rhs: &IntMatrix) -> RatMatrix {
        self.mul(&RatMatrix::from_int(rhs))
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rat::zero(), |acc, j| acc + &self[(i, j)] * &x[j])
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination; fails on singular input.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(p) = pivot else {
                return Err(Error::SingularGram);
            };
            if p != col {
                for j in 0..n {
                    let (x, y) = (a[(col, j)].clone(), a[(p, j)].clone());
                    a[(col, j)] = y;
                    a[(p, j)] = x;
                    let (x, y) = (inv[(col, j)].clone(), inv[(p, j)].clone());
                    inv[(col, j)] = y;
                    inv[(p, j)] = x;
                }
            }
            let d = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &d;
                inv[(col, j)] = &inv[(col, j)] / &d;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Decomposition of a symmetric positive-definite form as
/// `x^T G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2`.
///
/// This is the classical completion-of-squares used by Fincke–Pohst; all
/// entries are exact rationals.
pub fn quadratic_decomposition(gram: &IntMatrix) -> Result<Vec<Vec<Rat>>> {
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = gram.rows();
    let mut q: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from(gram[(i, j)].clone())).collect())
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::NotPositiveDefinite {
                index: i,
                value: q[i][i].to_string(),
            });
        }
        for j in (i + 1)..n {
            let mu = &q[i][j] / &q[i][i];
            q[j][i] = q[i][j].clone();
            q[i][j] = mu;
        }
        for k in (i + 1)..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    // Upper triangle now holds the decomposition; clear the scratch below.
    for i in 0..n {
        for j in 0..i {
            q[i][j] = Rat::zero();
        }
    }
    Ok(q)
}

/// Common denominator of a slice of rationals.
pub fn common_denominator(values: impl Iterator<Item = Rat>) -> Int {
    let mut d = Int::one();
    for v in values {
        d = num_integer::lcm(d, v.denom().clone());
    }
    d
}
