//! Bundled codes and named lattices.
//!
//! The Leech lattice is built from the extended binary Golay code: integer
//! vectors whose mod-4 reduction pattern follows a codeword, with the
//! coordinate-sum congruence fixing the parity class, all scaled so the
//! Gram form is `x . y / 8` (minimum norm 4, determinant 1). Correctness
//! is certified by invariants (even, unimodular, rank 24, rootless,
//! kissing number 196560) rather than by matching any published basis.

use num_traits::{One, Zero};

use crate::codes::CodeZp;
use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::ratmat::RatMatrix;
use crate::exact::{Int, Rat};
use crate::lattice::GramLattice;

/// Cartan matrix of `A_n`.
pub fn a_n_cartan(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        m[(i, i)] = Int::from(2);
        if i + 1 < n {
            m[(i, i + 1)] = Int::from(-1);
            m[(i + 1, i)] = Int::from(-1);
        }
    }
    m
}

/// Cartan matrix of E8 (Bourbaki numbering).
pub fn e8_cartan() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        vec![2, 0, -1, 0, 0, 0, 0, 0],
        vec![0, 2, 0, -1, 0, 0, 0, 0],
        vec![-1, 0, 2, -1, 0, 0, 0, 0],
        vec![0, -1, -1, 2, -1, 0, 0, 0],
        vec![0, 0, 0, -1, 2, -1, 0, 0],
        vec![0, 0, 0, 0, -1, 2, -1, 0],
        vec![0, 0, 0, 0, 0, -1, 2, -1],
        vec![0, 0, 0, 0, 0, 0, -1, 2],
    ])
}

/// Extended Hamming code [8,4,4] over `Z_2` (self-dual, doubly even).
pub fn hamming8() -> CodeZp {
    CodeZp::new(
        2,
        8,
        vec![
            vec![1, 0, 0, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 0, 1],
            vec![0, 0, 0, 1, 1, 1, 1, 0],
        ],
    )
    .expect("valid code")
}

/// Ternary tetracode [4,2,3] (self-dual).
pub fn tetracode() -> CodeZp {
    CodeZp::new(3, 4, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).expect("valid code")
}

/// Binary repetition code [8,1,8].
pub fn repetition8() -> CodeZp {
    CodeZp::new(2, 8, vec![vec![1; 8]]).expect("valid code")
}

/// Extended binary Golay code [24,12,8]: the cyclic [23,12] code with
/// generator polynomial `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`, extended
/// by an overall parity bit.
pub fn golay24() -> CodeZp {
    const GEN_POLY: [u64; 12] = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1];
    let mut rows = Vec::with_capacity(12);
    for shift in 0..12 {
        let mut row = vec![0u64; 24];
        for (d, &c) in GEN_POLY.iter().enumerate() {
            row[shift + d] = c;
        }
        let parity: u64 = row.iter().sum::<u64>() % 2;
        row[23] = parity;
        rows.push(row);
    }
    CodeZp::new(2, 24, rows).expect("valid code")
}

/// Look up a bundled code by name.
pub fn named_code(name: &str) -> Result<CodeZp> {
    match name {
        "hamming8" => Ok(hamming8()),
        "golay24" => Ok(golay24()),
        "tetracode" => Ok(tetracode()),
        "repetition8" => Ok(repetition8()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Names of all bundled codes.
pub fn bundled_code_names() -> &'static [&'static str] {
    &["hamming8", "golay24", "tetracode", "repetition8"]
}

/// The Leech lattice: rank 24, even, unimodular, rootless.
pub fn leech() -> GramLattice {
    let code = golay24();
    // Generators in ambient Z^24 coordinates under the form x . y / 8:
    //   4 D24      (all coordinates multiples of 4, sum divisible by 8),
    //   2 c        for Golay generator words c,
    //   (-3, 1^23) tying in the odd-coordinate class.
    let mut gens: Vec<Vec<Int>> = Vec::with_capacity(37);
    let mut d1 = vec![Int::zero(); 24];
    d1[0] = Int::from(4);
    d1[1] = Int::from(4);
    gens.push(d1);
    for i in 1..24 {
        let mut row = vec![Int::zero(); 24];
        row[i - 1] = Int::from(-4);
        row[i] = Int::from(4);
        gens.push(row);
    }
    for c in code.generators() {
        gens.push(c.iter().map(|&b| Int::from(2 * b as i64)).collect());
    }
    let mut s = vec![Int::one(); 24];
    s[0] = Int::from(-3);
    gens.push(s);

    let stacked = IntMatrix::from_rows(gens);
    let (basis, rank) = stacked.row_hnf();
    assert_eq!(rank, 24, "Leech generators span rank 24");
    // Gram = B B^T / 8, exactly integral by construction.
    let bbt = &basis * &basis.transpose();
    let mut gram = IntMatrix::zero(24, 24);
    for i in 0..24 {
        for j in 0..24 {
            let v = &bbt[(i, j)];
            let (q, r) = num_integer::Integer::div_rem(v, &Int::from(8));
            assert!(r.is_zero(), "Leech gram entries are integral");
            gram[(i, j)] = q;
        }
    }
    let lattice = GramLattice::named(gram, "Leech").expect("Leech is even positive definite");
    debug_assert_eq!(lattice.det(), Int::one());
    lattice
}

/// Look up a named lattice: `E8`, `sqrt2E8`, `Leech`, or `A<n>`.
pub fn named_lattice(name: &str) -> Result<GramLattice> {
    match name {
        "E8" | "e8" => GramLattice::named(e8_cartan(), "E8"),
        "sqrt2E8" | "sqrt2e8" => GramLattice::named(e8_cartan().scale(&Int::from(2)), "sqrt2E8"),
        "Leech" | "leech" => Ok(leech()),
        other => {
            if let Some(n) = other.strip_prefix('A').or_else(|| other.strip_prefix('a')) {
                if let Ok(n) = n.parse::<usize>() {
                    if (1..=48).contains(&n) {
                        return GramLattice::named(a_n_cartan(n), &format!("A{n}"));
                    }
                }
            }
            Err(Error::UnknownName(other.to_string()))
        }
    }
}

/// Lattice names the CLI advertises.
pub fn bundled_lattice_names() -> &'static [&'static str] {
    &["E8", "sqrt2E8", "Leech", "A1", "A2", "A3", "A4"]
}

/// Dual fundamental weight of the first simple root of `A_{p-1}` in
/// simple-root coordinates: `((p-1)/p, (p-2)/p, ..., 1/p)`. Multiplying
/// by `p` lands in the root lattice.
pub fn a_glue_vector(p: u64) -> Vec<Rat> {
    (0..p - 1)
        .map(|i| Rat::new(Int::from(p - 1 - i), Int::from(p)))
        .collect()
}

/// Exact inverse of a unimodular integer matrix.
#[allow(dead_code)]
pub(crate) fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    RatMatrix::from_int(m)
        .inverse()
        .expect("unimodular matrix is invertible")
        .to_int()
        .expect("inverse of unimodular matrix is integral")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_is_even_unimodular_with_240_roots() {
        let l = named_lattice("E8").unwrap();
        assert_eq!(l.det(), Int::one());
        assert_eq!(l.root_count().unwrap(), 240);
    }

    #[test]
    fn sqrt2e8_invariants() {
        let l = named_lattice("sqrt2E8").unwrap();
        assert_eq!(l.det(), Int::from(256));
        assert!(l.is_rootless().unwrap());
        assert_eq!(l.shell(4).unwrap().count(), 240);
        let d = l.discriminant_group().unwrap();
        assert!(d.is_elementary(2));
        assert_eq!(d.elementary_divisors.len(), 8);
        assert!(l.is_doubly_even());
    }

    #[test]
    fn leech_det_and_rootlessness() {
        let l = leech();
        assert_eq!(l.rank(), 24);
        assert_eq!(l.det(), Int::one());
        assert!(l.is_rootless().unwrap());
    }

    #[test]
    fn a_n_lattices() {
        let a2 = named_lattice("A2").unwrap();
        assert_eq!(a2.det(), Int::from(3));
        assert_eq!(a2.root_count().unwrap(), 6);
        let a4 = named_lattice("A4").unwrap();
        assert_eq!(a4.det(), Int::from(5));
        assert_eq!(a4.root_count().unwrap(), 20);
    }

    #[test]
    fn glue_vector_lands_in_dual() {
        for p in [2u64, 3, 5, 7] {
            let l = named_lattice(&format!("A{}", p - 1)).unwrap();
            let gamma = a_glue_vector(p);
            assert!(l.in_dual(&gamma));
            let scaled: Vec<Rat> = gamma.iter().map(|g| g * Rat::from(Int::from(p))).collect();
            assert!(scaled.iter().all(|v| v.is_integer()));
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(named_lattice("K12"), Err(Error::UnknownName(_))));
    }
}
