//! Exact short-vector enumeration (Fincke–Pohst).
//!
//! The quadratic form is decomposed into a sum of squares with exact
//! rational coefficients; the search tree is walked with exact arithmetic
//! only, so shell counts are bit-reproducible. The lattice basis is
//! LLL-reduced first, which affects speed but never the result.
//!
//! The tree may be split across worker threads at the outermost level;
//! results are merged and sorted, so the output order is deterministic.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::exact::matrix::IntMatrix;
use crate::exact::ratmat::{quadratic_decomposition, RatMatrix};
use crate::exact::{Int, Rat};
use crate::lattice::reduce::lll_reduce;

/// A vector found by enumeration: integer coordinates (in the original
/// lattice basis) of the lattice part, plus the exact norm of the full
/// vector (including any coset shift).
pub struct FoundVector {
    pub coords: Vec<i64>,
    pub norm: Rat,
}

struct Engine {
    n: usize,
    /// q[i][i] and q[i][j] (j > i) from the completed-squares form.
    q: Vec<Vec<Rat>>,
    /// Coset shift in reduced coordinates (zero for plain enumeration).
    shift: Vec<Rat>,
    /// Maps reduced coordinates back to original coordinates.
    back: IntMatrix,
    bound: Rat,
}

struct Walk<'a> {
    eng: &'a Engine,
    /// Chosen x_i at levels above the current one.
    xs: Vec<Int>,
    /// sigma[i][j] = sum_{k >= j} q[i][k] * (x_k + shift_k), maintained
    /// lazily along the path as in Schnorr–Euchner.
    sigma: Vec<Vec<Rat>>,
    out: Vec<FoundVector>,
}

impl Engine {
    /// Feasible integer range for x at `level`, where the squared term is
    /// `q_ii (x + center_offset)^2 <= rem`. Returns candidates by scanning
    /// outward from the rounded center, so no square roots are needed.
    fn level_candidates(&self, level: usize, offset: &Rat, rem: &Rat) -> Vec<Int> {
        let qii = &self.q[level][level];
        if rem.is_negative() {
            return Vec::new();
        }
        // Center of the interval is -offset.
        let center = -offset.clone();
        let start = (&center + Rat::new(Int::from(1), Int::from(2)))
            .floor()
            .to_integer();
        let fits = |x: &Int| {
            let inner = Rat::from(x.clone()) + offset;
            &(&inner * &inner) * qii <= *rem
        };
        // The feasible set is an interval around `center`; if it contains
        // any integer it contains the nearest one, so scanning outward from
        // `start` finds exactly the interval.
        let mut out = Vec::new();
        let mut lo = start.clone();
        if !fits(&lo) {
            return out;
        }
        out.push(lo.clone());
        loop {
            let next = &lo - 1;
            if fits(&next) {
                out.push(next.clone());
                lo = next;
            } else {
                break;
            }
        }
        let mut hi = start;
        loop {
            let next = &hi + 1;
            if fits(&next) {
                out.push(next.clone());
                hi = next;
            } else {
                break;
            }
        }
        out.sort();
        out
    }
}

impl<'a> Walk<'a> {
    fn new(eng: &'a Engine) -> Self {
        let n = eng.n;
        Walk {
            eng,
            xs: vec![Int::zero(); n],
            sigma: vec![vec![Rat::zero(); n + 1]; n],
            out: Vec::new(),
        }
    }

    /// Offset for the inner linear form at `level` given choices above:
    /// shift_level + sigma[level][level+1].
    fn offset(&self, level: usize) -> Rat {
        &self.eng.shift[level] + &self.sigma[level][level + 1]
    }

    fn descend(&mut self, level: usize, rem: Rat) {
        let offset = self.offset(level);
        for x in self.eng.level_candidates(level, &offset, &rem) {
            let inner = Rat::from(x.clone()) + &offset;
            let term = &(&inner * &inner) * &self.eng.q[level][level];
            let next_rem = &rem - &term;
            self.xs[level] = x.clone();
            if level == 0 {
                self.emit(&next_rem);
            } else {
                // Maintain sigma for the levels below.
                let y = Rat::from(x) + &self.eng.shift[level];
                for i in 0..level {
                    self.sigma[i][level] =
                        &self.sigma[i][level + 1] + &(&self.eng.q[i][level] * &y);
                }
                self.descend(level - 1, next_rem);
            }
        }
    }

    fn emit(&mut self, rem_final: &Rat) {
        let norm = &self.eng.bound - rem_final;
        if norm.is_zero() {
            return; // norm-zero vectors are never part of a shell
        }
        // Map back to original coordinates.
        let orig = self.eng.back.mul_vec(&self.xs);
        let coords: Vec<i64> = orig
            .iter()
            .map(|v| {
                i64::try_from(v).expect("enumerated coordinate exceeds i64")
            })
            .collect();
        self.out.push(FoundVector { coords, norm });
    }
}

/// Enumerate all `v = x + shift` (x in the lattice, shift rational, both in
/// the lattice's own coordinates) with `0 < norm(v) <= bound`, except that
/// the zero vector is skipped when the shift is zero. Returns the integer
/// coordinates of `x` in the original basis plus exact norms, unsorted.
pub fn enumerate(
    gram: &IntMatrix,
    shift: &[Rat],
    bound: &Rat,
) -> Result<Vec<FoundVector>> {
    let n = gram.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let reduced = lll_reduce(gram)?;
    let q = quadratic_decomposition(&reduced.gram)?;

    // shift is given in original coordinates; convert to reduced ones.
    let u_inv = RatMatrix::from_int(&reduced.transform)
        .inverse()
        .expect("unimodular transform is invertible")
        .to_int()
        .expect("inverse of a unimodular matrix is integral");
    let shift_red: Vec<Rat> = if shift.iter().all(|s| s.is_zero()) {
        vec![Rat::zero(); n]
    } else {
        (0..n)
            .map(|i| {
                (0..n).fold(Rat::zero(), |acc, j| {
                    acc + Rat::from(u_inv[(i, j)].clone()) * &shift[j]
                })
            })
            .collect()
    };

    let eng = Engine {
        n,
        q,
        shift: shift_red,
        back: reduced.transform,
        bound: bound.clone(),
    };

    let top = n - 1;
    let top_offset = eng.shift[top].clone();
    let candidates = eng.level_candidates(top, &top_offset, bound);

    let run_branch = |x: &Int| -> Vec<FoundVector> {
        let mut walk = Walk::new(&eng);
        let inner = Rat::from(x.clone()) + &top_offset;
        let term = &(&inner * &inner) * &eng.q[top][top];
        let next_rem = bound - &term;
        walk.xs[top] = x.clone();
        if top == 0 {
            walk.emit(&next_rem);
        } else {
            let y = Rat::from(x.clone()) + &eng.shift[top];
            for i in 0..top {
                walk.sigma[i][top] = &walk.sigma[i][top + 1] + &(&eng.q[i][top] * &y);
            }
            walk.descend(top - 1, next_rem);
        }
        walk.out
    };

    let found: Vec<FoundVector> = if n >= 12 && candidates.len() > 1 {
        candidates
            .par_iter()
            .map(run_branch)
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    } else {
        let mut all = Vec::new();
        for x in &candidates {
            all.extend(run_branch(x));
        }
        all
    };
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn brute_force_count(gram: &IntMatrix, bound: i64) -> usize {
        // Box search adequate for tiny test lattices.
        let n = gram.rows();
        let range = 8i64;
        let mut count = 0;
        let mut x = vec![-range; n];
        loop {
            let norm: i64 = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let g: i64 = (&gram[(i, j)]).try_into().unwrap();
                            x[i] * g * x[j]
                        })
                        .sum::<i64>()
                })
                .sum();
            if norm > 0 && norm <= bound {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                x[k] += 1;
                if x[k] <= range {
                    break;
                }
                x[k] = -range;
                k += 1;
            }
        }
    }

    #[test]
    fn a2_roots() {
        let g = IntMatrix::from_i64_rows(&[vec![2, -1], vec![-1, 2]]);
        let found = enumerate(&g, &[Rat::zero(), Rat::zero()], &rat(2, 1)).unwrap();
        assert_eq!(found.len(), 6);
        assert!(found.iter().all(|f| f.norm == rat(2, 1)));
    }

    #[test]
    fn counts_match_brute_force() {
        let g = IntMatrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]);
        for bound in [2i64, 4, 6, 8] {
            let found = enumerate(&g, &vec![Rat::zero(); 3], &rat(bound, 1)).unwrap();
            assert_eq!(found.len(), brute_force_count(&g, bound), "bound={bound}");
        }
    }

    #[test]
    fn coset_enumeration_half_shift() {
        // Z^2 (even-scaled): gram 2I, shift (1/2, 0): vectors (x+1/2, y)
        // with norm 2(x+1/2)^2 + 2y^2 <= 3: x in {-1, 0}, y in {-1, 0, 1}.
        let g = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
        let found = enumerate(&g, &[rat(1, 2), rat(0, 1)], &rat(3, 1)).unwrap();
        assert_eq!(found.len(), 6);
        for f in &found {
            assert!(f.norm <= rat(3, 1) && f.norm > Rat::zero());
        }
        // Norms are 1/2 or 5/2, never integers.
        assert!(found.iter().all(|f| !f.norm.is_integer()));
    }

    #[test]
    fn negation_closure() {
        let g = IntMatrix::from_i64_rows(&[vec![2, 1], vec![1, 2]]);
        let found = enumerate(&g, &vec![Rat::zero(); 2], &rat(6, 1)).unwrap();
        let set: std::collections::HashSet<Vec<i64>> =
            found.iter().map(|f| f.coords.clone()).collect();
        for f in &found {
            let neg: Vec<i64> = f.coords.iter().map(|c| -c).collect();
            assert!(set.contains(&neg));
        }
    }
}
