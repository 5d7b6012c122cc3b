//! Cyclotomic polynomials by recursive exact division.
//!
//! `Phi_n` is computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` over the
//! integers; no factorization library is involved. Results are memoized in a
//! process-wide table that is safe for concurrent use.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::arith::{divisors, euler_phi, prime_power_base};
use crate::exact::poly::IntPoly;
use crate::exact::Int;

static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();

/// The `n`-th cyclotomic polynomial, `n >= 1`; degree `phi(n)`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic: n must be >= 1");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = compute(n);
    debug_assert_eq!(result.degree(), Some(euler_phi(n) as usize));
    cache.lock().unwrap().insert(n, result.clone());
    result
}

fn compute(n: u64) -> IntPoly {
    if n == 1 {
        return IntPoly::from_i64(&[-1, 1]);
    }
    // Prime powers short-circuit through Phi_{p^k}(x) = Phi_p(x^{p^{k-1}}),
    // with Phi_p the full geometric sum 1 + x + ... + x^{p-1}.
    if let Some(p) = prime_power_base(n) {
        let phi_p = IntPoly::from_coeffs(vec![Int::one(); p as usize]);
        let k = n / p;
        return phi_p.compose_x_pow(k as usize);
    }
    let mut quotient = IntPoly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            quotient = quotient
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic division is exact");
        }
    }
    quotient
}

/// `Phi_n(1)` for `n >= 2`: equals `p` when `n = p^k` is a prime power and
/// `1` otherwise. `n = 1` is rejected since `Phi_1(1) = 0` falls outside
/// this dichotomy.
pub fn cyclotomic_at_one(n: u64) -> Result<Int> {
    if n < 2 {
        return Err(Error::Precondition(
            "cyclotomic_at_one requires n >= 2".into(),
        ));
    }
    Ok(match prime_power_base(n) {
        Some(p) => Int::from(p),
        None => Int::one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::arith::divisors;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(9), IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors_reconstructs_x_pow_minus_one() {
        for n in 1..=200u64 {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = &prod * &cyclotomic(d);
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
        }
    }

    #[test]
    fn at_one_matches_evaluation() {
        for n in 2..=500u64 {
            let direct = cyclotomic_at_one(n).unwrap();
            let eval = cyclotomic(n).eval(&Int::from(1));
            assert_eq!(direct, eval, "n = {n}");
        }
    }

    #[test]
    fn at_one_examples() {
        assert_eq!(cyclotomic_at_one(6).unwrap(), Int::from(1));
        assert_eq!(cyclotomic_at_one(8).unwrap(), Int::from(2));
        assert_eq!(cyclotomic_at_one(49).unwrap(), Int::from(7));
        assert!(cyclotomic_at_one(1).is_err());
    }

    #[test]
    fn prime_power_identity() {
        // Phi_{p^k}(x) = Phi_p(x^{p^{k-1}}), checked against plain division.
        for &(p, k) in &[(2u64, 3u32), (3, 2), (5, 2), (7, 2)] {
            let n = p.pow(k);
            let mut quotient = IntPoly::x_pow_minus_one(n as usize);
            for d in divisors(n) {
                if d < n {
                    quotient = quotient.div_exact(&cyclotomic(d)).unwrap();
                }
            }
            assert_eq!(cyclotomic(n), quotient, "p={p} k={k}");
        }
    }
}
