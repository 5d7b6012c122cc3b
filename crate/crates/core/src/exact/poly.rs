//! Univariate polynomials with exact integer coefficients.
//!
//! Coefficients are stored in ascending degree and kept canonical: no
//! trailing zero except for the zero polynomial, which has an empty
//! coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Int, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![Int::zero(); n + 1];
        coeffs[0] = -Int::one();
        coeffs[n] = Int::one();
        IntPoly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from(c.clone());
        }
        acc
    }

    /// Substitute `x -> x^k`.
    pub fn compose_x_pow(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Exact division: returns the quotient when `self = q * divisor`
    /// exactly over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        if divisor.is_zero() {
            return Err(Error::Precondition("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "polynomial division left remainder {r:?}"
            )));
        }
        Ok(q)
    }

    /// Euclidean division over Z; fails when a leading-coefficient division
    /// is inexact (the divisor is not monic up to sign and does not divide).
    pub fn div_rem(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let d = divisor
            .degree()
            .ok_or_else(|| Error::Precondition("division by zero polynomial".into()))?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![Int::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&c, &lead);
            if !r.is_zero() {
                return Err(Error::Inconsistency(
                    "inexact leading-coefficient division".into(),
                ));
            }
            quot[k - d] = q.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k - d + i] -= t;
            }
        }
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Multiplicity of `divisor` as a factor: the largest `k` with
    /// `divisor^k | self`.
    pub fn multiplicity_of(&self, divisor: &IntPoly) -> usize {
        let mut count = 0;
        let mut current = self.clone();
        while let Ok((q, r)) = current.div_rem(divisor) {
            if !r.is_zero() || q.is_zero() && !current.is_zero() {
                break;
            }
            if q.is_zero() {
                break;
            }
            current = q;
            count += 1;
            if current.degree() == Some(0) {
                break;
            }
        }
        count
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a.is_one() {
                        write!(f, "x")?
                    } else {
                        write!(f, "{a}x")?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "x^{i}")?
                    } else {
                        write!(f, "{a}x^{i}")?
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = IntPoly::from_i64(&[1, 1]); // x + 1
        let c = IntPoly::from_i64(&[-1, 1]); // x - 1
        assert_eq!(&b * &c, a);
        assert_eq!(a.div_exact(&b).unwrap(), c);
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn division_with_remainder() {
        let a = IntPoly::from_i64(&[1, 0, 0, 1]); // x^3 + 1
        let b = IntPoly::from_i64(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[1, -1, 1]));
        assert!(r.is_zero());

        let c = IntPoly::from_i64(&[2, 0, 1]); // x^2 + 2
        let (_, r) = c.div_rem(&b).unwrap();
        assert_eq!(r, IntPoly::from_i64(&[3]));
    }

    #[test]
    fn eval_and_compose() {
        let p = IntPoly::from_i64(&[1, 1, 1]); // x^2 + x + 1
        assert_eq!(p.eval(&Int::from(2)), Int::from(7));
        let q = p.compose_x_pow(3);
        assert_eq!(q, IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn multiplicity_counting() {
        let b = IntPoly::from_i64(&[1, 1]); // x + 1
        let p = &(&b * &b) * &IntPoly::from_i64(&[-1, 1]);
        assert_eq!(p.multiplicity_of(&b), 2);
        assert_eq!(p.multiplicity_of(&IntPoly::from_i64(&[-1, 1])), 1);
        assert_eq!(p.multiplicity_of(&IntPoly::from_i64(&[7, 1])), 0);
    }
}
