//! Elementary number theory over machine and big integers: factorization by
//! trial division, Euler's totient, and the closed forms for the weighted
//! sums over coprime residues that drive the conformal-weight formulas.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{Int, Rat};

/// Prime factorization `n = prod p_i^{e_i}` with ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be >= 1");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be >= 1");
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = 1u64;
            for _ in 0..=e {
                next.push(d * q);
                q *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient `phi(n)`, the number of `1 <= i <= n` coprime to `n`,
/// with `phi(1) = 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi: n must be >= 1");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// `Some(p)` when `n = p^k` is a prime power (`k >= 1`), `None` otherwise.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let f = factorize(n);
    if f.len() == 1 {
        Some(f[0].0)
    } else {
        None
    }
}

/// Squarefree part check: true iff no prime divides `n` twice.
pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

fn int(v: u64) -> Int {
    Int::from(v)
}

/// Weighted sum `sum i (n - i)` over `1 <= i <= n-1` with `i` coprime to
/// every prime in `I`, evaluated by the closed form
///
/// ```text
///   (1/6) n prod_{p in I} (1 - 1/p) [ n^2 + (-1)^{|I|+1} prod_{p in I} p ]
/// ```
///
/// The rational intermediate must reduce to an integer; this is asserted,
/// never rounded. Every member of `I` must divide `n`.
pub fn coprime_weighted_sum(n: u64, primes: &[u64]) -> Result<Int> {
    assert!(n >= 2, "coprime_weighted_sum: n must be >= 2");
    let mut seen = std::collections::BTreeSet::new();
    for &p in primes {
        if p < 2 || !n.is_multiple_of(p) {
            return Err(Error::Precondition(format!(
                "coprime_weighted_sum: {p} is not a prime divisor of {n}"
            )));
        }
        if !seen.insert(p) {
            return Err(Error::Precondition(format!(
                "coprime_weighted_sum: repeated prime {p}"
            )));
        }
    }

    let mut value = Rat::new(int(n), Int::from(6));
    for &p in &seen {
        value *= Rat::new(int(p - 1), int(p));
    }
    let mut rad = Int::one();
    for &p in &seen {
        rad *= int(p);
    }
    let sign = if seen.len() % 2 == 0 { -rad } else { rad };
    value *= Rat::from(int(n) * int(n) + sign);

    if !value.is_integer() {
        return Err(Error::Inconsistency(format!(
            "coprime_weighted_sum({n}, {seen:?}) is not an integer: {value}"
        )));
    }
    let value = value.to_integer();
    if value.is_negative() {
        return Err(Error::Inconsistency(format!(
            "coprime_weighted_sum({n}, {seen:?}) is negative: {value}"
        )));
    }
    Ok(value)
}

/// `sum i (n - i)` over residues coprime to `n`, via the closed form
/// `(phi(n)/6) [ n^2 + (-1)^{k+1} prod p_i ]` with `k` the number of
/// distinct primes of `n`.
pub fn coprime_sum(n: u64) -> Result<Int> {
    coprime_weighted_sum(n, &prime_divisors(n))
}

/// Greatest common divisor of two nonnegative machine integers.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least common multiple.
pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Floor square root of a nonnegative big integer, with an exactness flag.
pub fn sqrt_exact(v: &Int) -> Option<Int> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    if &(&r * &r) == v {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&i| gcd(i, n) == 1).count() as u64
    }

    fn brute_weighted(n: u64, primes: &[u64]) -> u64 {
        (1..n)
            .filter(|&i| primes.iter().all(|&p| i % p != 0))
            .map(|i| i * (n - i))
            .sum()
    }

    #[test]
    fn phi_small_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(39), 24);
    }

    #[test]
    fn phi_matches_brute_force() {
        for n in 1..=300 {
            assert_eq!(euler_phi(n), brute_phi(n), "phi({n})");
        }
    }

    #[test]
    fn weighted_sum_examples() {
        assert_eq!(coprime_weighted_sum(6, &[2, 3]).unwrap(), Int::from(10));
        assert_eq!(coprime_weighted_sum(5, &[5]).unwrap(), Int::from(20));
        assert_eq!(coprime_weighted_sum(4, &[2]).unwrap(), Int::from(6));
    }

    #[test]
    fn coprime_sum_examples() {
        assert_eq!(coprime_sum(6).unwrap(), Int::from(10));
        assert_eq!(coprime_sum(12).unwrap(), Int::from(92));
        assert_eq!(coprime_sum(5).unwrap(), Int::from(20));
    }

    #[test]
    fn weighted_sum_closed_form_matches_brute_force_all_subsets() {
        // All n up to 200 here; the acceptance suite pushes this to 500.
        for n in 2..=200u64 {
            let ps = prime_divisors(n);
            for mask in 0..(1u32 << ps.len()) {
                let subset: Vec<u64> = ps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect();
                let closed = coprime_weighted_sum(n, &subset).unwrap();
                let brute = brute_weighted(n, &subset);
                assert_eq!(closed.to_u64().unwrap(), brute, "n={n} I={subset:?}");
            }
        }
    }

    #[test]
    fn coprime_sum_equals_full_subset() {
        for n in 2..=200u64 {
            assert_eq!(
                coprime_sum(n).unwrap(),
                coprime_weighted_sum(n, &prime_divisors(n)).unwrap()
            );
        }
    }

    #[test]
    fn weighted_sum_rejects_non_divisor() {
        assert!(coprime_weighted_sum(6, &[5]).is_err());
    }

    #[test]
    fn factorize_and_divisors() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&Int::from(256)), Some(Int::from(16)));
        assert_eq!(sqrt_exact(&Int::from(255)), None);
        assert_eq!(sqrt_exact(&Int::from(0)), Some(Int::from(0)));
    }
}
