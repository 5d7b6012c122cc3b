//! Exact LLL reduction on Gram matrices.
//!
//! Works directly on the Gram form with an integer basis transform; the
//! Gram–Schmidt data is kept in exact rationals. Reduction quality only
//! affects enumeration speed, never the enumerated counts.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::{Int, Rat};

/// Reduced Gram matrix together with the unimodular transform `u` such
/// that `reduced = u^T * gram * u`.
pub struct ReducedGram {
    pub gram: IntMatrix,
    pub transform: IntMatrix,
}

struct Gso {
    mu: Vec<Vec<Rat>>,
    b: Vec<Rat>,
}

fn compute_gso(g: &IntMatrix) -> Result<Gso> {
    let n = g.rows();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut b = vec![Rat::zero(); n];
    for i in 0..n {
        let mut inner = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let mut c = Rat::from(g[(i, j)].clone());
            for k in 0..j {
                let t = &mu[j][k] * &inner[k];
                c -= t;
            }
            if j < i {
                if !b[j].is_positive() {
                    return Err(Error::NotPositiveDefinite {
                        index: j,
                        value: b[j].to_string(),
                    });
                }
                mu[i][j] = &c / &b[j];
            }
            inner.push(c);
        }
        b[i] = inner[i].clone();
        if !b[i].is_positive() {
            return Err(Error::NotPositiveDefinite {
                index: i,
                value: b[i].to_string(),
            });
        }
    }
    Ok(Gso { mu, b })
}

/// LLL-reduce a positive-definite integer Gram matrix (delta = 3/4).
pub fn lll_reduce(gram: &IntMatrix) -> Result<ReducedGram> {
    let n = gram.rows();
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut g = gram.clone();
    let mut u = IntMatrix::identity(n);
    if n <= 1 {
        compute_gso(&g)?;
        return Ok(ReducedGram {
            gram: g,
            transform: u,
        });
    }
    let Gso { mut mu, mut b } = compute_gso(&g)?;
    let half = Rat::new(Int::from(1), Int::from(2));
    let delta = Rat::new(Int::from(3), Int::from(4));

    // f_k <- f_k - q f_j on gram and transform, with mu bookkeeping.
    let size_reduce = |g: &mut IntMatrix,
                       u: &mut IntMatrix,
                       mu: &mut Vec<Vec<Rat>>,
                       k: usize,
                       j: usize| {
        if mu[k][j].abs() <= half {
            return;
        }
        let q = (&mu[k][j] + &half).floor().to_integer();
        for i in 0..n {
            let t = &q * &g[(i, j)];
            g[(i, k)] -= t;
        }
        for i in 0..n {
            let t = &q * &g[(j, i)];
            g[(k, i)] -= t;
        }
        for i in 0..n {
            let t = &q * &u[(i, j)];
            u[(i, k)] -= t;
        }
        let qr = Rat::from(q);
        for i in 0..j {
            let t = &qr * &mu[j][i];
            mu[k][i] -= t;
        }
        mu[k][j] -= qr;
    };

    let mut k = 1usize;
    while k < n {
        size_reduce(&mut g, &mut u, &mut mu, k, k - 1);
        let lhs = b[k].clone();
        let rhs = (&delta - &(&mu[k][k - 1] * &mu[k][k - 1])) * &b[k - 1];
        if lhs < rhs {
            // Swap basis vectors k-1 and k.
            g.swap_rows(k - 1, k);
            g.swap_cols(k - 1, k);
            u.swap_cols(k - 1, k);
            let mu_old = mu[k][k - 1].clone();
            let b_new = &b[k] + &(&mu_old * &mu_old) * &b[k - 1];
            mu[k][k - 1] = &mu_old * &b[k - 1] / &b_new;
            b[k] = &(&b[k - 1] * &b[k]) / &b_new;
            b[k - 1] = b_new;
            for j in 0..k.saturating_sub(1) {
                let t = mu[k - 1][j].clone();
                mu[k - 1][j] = mu[k][j].clone();
                mu[k][j] = t;
            }
            for i in (k + 1)..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &(&mu_old * &t);
                mu[i][k - 1] = &t + &(&mu[k][k - 1] * &mu[i][k]);
            }
            k = k.max(2) - 1;
        } else {
            for j in (0..k.saturating_sub(1)).rev() {
                size_reduce(&mut g, &mut u, &mut mu, k, j);
            }
            k += 1;
        }
    }

    debug_assert!(g.is_symmetric());
    debug_assert_eq!(
        u.det().unwrap().abs(),
        Int::from(1),
        "LLL transform must be unimodular"
    );
    Ok(ReducedGram {
        gram: g,
        transform: u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_preserves_determinant_and_form() {
        let g = IntMatrix::from_i64_rows(&[vec![4, 6], vec![6, 13]]);
        let r = lll_reduce(&g).unwrap();
        assert_eq!(r.gram.det().unwrap(), g.det().unwrap());
        let ut = r.transform.transpose();
        assert_eq!(&(&ut * &g) * &r.transform, r.gram);
        // Reduced first vector should be short: this lattice contains a
        // vector of norm 4 (the first generator already).
        assert!(r.gram[(0, 0)] <= Int::from(4));
    }

    #[test]
    fn reduces_skewed_basis() {
        // Z^2 with a badly skewed basis.
        let g = IntMatrix::from_i64_rows(&[vec![1, 100], vec![100, 10001]]);
        let r = lll_reduce(&g).unwrap();
        assert_eq!(r.gram.det().unwrap(), Int::from(1));
        assert_eq!(r.gram[(0, 0)], Int::from(1));
        assert_eq!(r.gram[(1, 1)], Int::from(1));
    }

    #[test]
    fn rejects_indefinite() {
        let g = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(lll_reduce(&g).is_err());
    }
}
