//! Linear codes over `Z_p` (p prime) with canonical row-reduced generator
//! matrices, plus the named codes bundled with the crate: the extended
//! binary Golay code, the extended Hamming code of length 8, the ternary
//! tetracode and repetition codes.

pub mod construction;
pub mod named;

use std::fmt;

use crate::error::{Error, Result};

/// A linear code over `Z_p` given by a generator matrix in row-reduced
/// canonical form (unique for a given code).
#[derive(Clone, PartialEq, Eq)]
pub struct CodeZp {
    p: u64,
    length: usize,
    generators: Vec<Vec<u64>>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Row-reduce over `F_p`; returns the canonical nonzero rows.
fn rref(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = mod_inverse(rows[pivot_row][col] % p, p);
        for v in rows[pivot_row].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_multiple_of(p) {
                let f = rows[r][col] % p;
                for c in 0..cols {
                    let sub = f * rows[pivot_row][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub % p) % p;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

impl CodeZp {
    pub fn new(p: u64, length: usize, generators: Vec<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        for row in &generators {
            if row.len() != length {
                return Err(Error::DimensionMismatch(format!(
                    "generator row has length {}, code length is {length}",
                    row.len()
                )));
            }
        }
        let reduced: Vec<Vec<u64>> = rref(
            p,
            generators
                .into_iter()
                .map(|r| r.into_iter().map(|v| v % p).collect())
                .collect(),
        );
        Ok(CodeZp {
            p,
            length,
            generators: reduced,
        })
    }

    /// The zero code of the given length.
    pub fn zero(p: u64, length: usize) -> Result<Self> {
        CodeZp::new(p, length, Vec::new())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Number of codewords, `p^dim`.
    pub fn size(&self) -> u64 {
        self.p.pow(self.dim() as u32)
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Iterate all codewords (exponential in the dimension).
    pub fn codewords(&self) -> Vec<Vec<u64>> {
        let k = self.dim();
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut coeffs = vec![0u64; k];
        loop {
            let mut word = vec![0u64; self.length];
            for (c, row) in coeffs.iter().zip(&self.generators) {
                if *c != 0 {
                    for (w, &g) in word.iter_mut().zip(row) {
                        *w = (*w + c * g) % self.p;
                    }
                }
            }
            out.push(word);
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < self.p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    pub fn contains(&self, word: &[u64]) -> bool {
        if word.len() != self.length {
            return false;
        }
        let mut stack = self.generators.clone();
        stack.push(word.iter().map(|&v| v % self.p).collect());
        rref(self.p, stack).len() == self.dim()
    }

    /// Dot product of two words over `Z_p`.
    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).map(|(&x, &y)| x * y % self.p).sum::<u64>() % self.p
    }

    /// The dual code `C^perp`.
    pub fn dual(&self) -> CodeZp {
        // Read the null space off the RREF: free columns parametrize it.
        let g = &self.generators;
        let k = self.dim();
        let n = self.length;
        let mut pivot_col = vec![usize::MAX; k];
        let mut is_pivot = vec![false; n];
        for (r, row) in g.iter().enumerate() {
            if let Some(c) = row.iter().position(|&v| v != 0) {
                pivot_col[r] = c;
                is_pivot[c] = true;
            }
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (r, row) in g.iter().enumerate() {
                let c = pivot_col[r];
                if c != usize::MAX {
                    v[c] = (self.p - row[free] % self.p) % self.p;
                }
            }
            basis.push(v);
        }
        CodeZp::new(self.p, n, basis).expect("dual of a valid code")
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| self.dot(a, b) == 0))
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal() && 2 * self.dim() == self.length
    }

    /// Hamming weight of a word.
    pub fn weight(word: &[u64]) -> usize {
        word.iter().filter(|&&v| v != 0).count()
    }

    /// Weight distribution as (weight, count) pairs, by full enumeration.
    pub fn weight_distribution(&self) -> Vec<(usize, u64)> {
        let mut counts = vec![0u64; self.length + 1];
        for w in self.codewords() {
            counts[Self::weight(&w)] += 1;
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect()
    }
}

impl fmt::Debug for CodeZp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CodeZp(p={}, [{},{}])", self.p, self.length, self.dim())
    }
}
