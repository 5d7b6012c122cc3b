//! Construction A and Construction B lattices from codes over `Z_p`, and
//! the coordinatewise cyclic permutation isometry of the glued lattice.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::codes::named::a_glue_vector;
use crate::codes::CodeZp;
use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::ratmat::RatMatrix;
use crate::exact::{Int, Rat};
use crate::isometry::Isometry;
use crate::lattice::{GramLattice, Sublattice};

/// The root lattice `A_{p-1}` with its standard base and the fixed glue
/// representative (the dual fundamental weight of the first simple root).
pub fn root_lattice_a(p: u64) -> Result<(GramLattice, Vec<Rat>)> {
    if !super::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let n = (p - 1) as usize;
    let lattice = GramLattice::named(super::named::a_n_cartan(n), &format!("A{n}"))?;
    Ok((lattice, a_glue_vector(p)))
}

/// A Construction A output: the glued lattice `N` over the base
/// `R = A_{p-1}^k`, with the rational basis of `N` in `R`-coordinates.
pub struct GlueLattice {
    pub p: u64,
    pub k: usize,
    pub code: CodeZp,
    /// Gram matrix of the base `R = A_{p-1}^k`.
    pub base_gram: IntMatrix,
    /// The glued lattice with its own integral Gram matrix.
    pub lattice: GramLattice,
    /// Basis of `N` in `R`-coordinates: rows scaled by `p` (integer).
    pub basis_times_p: IntMatrix,
    /// Index `[N : R] = |C|`.
    pub index_over_base: Int,
}

impl GlueLattice {
    /// Rank of the glued lattice, `k (p-1)`.
    pub fn rank(&self) -> usize {
        self.k * (self.p as usize - 1)
    }

    /// The glue shift of a codeword, in `R`-coordinates: the concatenation
    /// of `c_i * gamma` over the blocks.
    pub fn glue_shift(&self, word: &[u64]) -> Vec<Rat> {
        let gamma = a_glue_vector(self.p);
        let b = (self.p - 1) as usize;
        let mut shift = vec![Rat::zero(); self.rank()];
        for (i, &c) in word.iter().enumerate() {
            if c % self.p != 0 {
                for (j, g) in gamma.iter().enumerate() {
                    shift[i * b + j] = g * Rat::from(Int::from(c % self.p));
                }
            }
        }
        shift
    }

    /// Convert a vector in `R`-coordinates (rational) to `N`-coordinates;
    /// `None` when the vector is not in `N`.
    pub fn to_n_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let n = self.rank();
        let basis = RatMatrix::from_int(&self.basis_times_p);
        // N-basis rows are basis_times_p / p: solve x * (B/p) = v, i.e.
        // x = v * p * B^{-1}.
        let inv = basis.inverse().ok()?;
        let scaled: Vec<Rat> = v
            .iter()
            .map(|x| x * Rat::from(Int::from(self.p)))
            .collect();
        // Row-vector times inverse: (v p) B^{-1}.
        let mut out = vec![Rat::zero(); n];
        for j in 0..n {
            let mut acc = Rat::zero();
            for i in 0..n {
                acc += &scaled[i] * &inv[(i, j)];
            }
            out[j] = acc;
        }
        Some(out)
    }
}

/// Construction A: the union of `R + sum_i c_i gamma^(i)` over codewords.
/// Fails when the glued form is not an even integral lattice (the code is
/// then not self-orthogonal in the required sense) -- reported, never
/// silently fixed.
pub fn construction_a(code: &CodeZp) -> Result<GlueLattice> {
    let p = code.p();
    let k = code.length();
    let b = (p - 1) as usize;
    let rank = k * b;

    let a_gram = super::named::a_n_cartan(b);
    let mut base_gram = IntMatrix::zero(rank, rank);
    for blk in 0..k {
        for i in 0..b {
            for j in 0..b {
                base_gram[(blk * b + i, blk * b + j)] = a_gram[(i, j)].clone();
            }
        }
    }

    // Generators of p*N in R-coordinates: p e_i and p * glue(word) for the
    // code generators.
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(rank + code.dim());
    for i in 0..rank {
        let mut row = vec![Int::zero(); rank];
        row[i] = Int::from(p);
        rows.push(row);
    }
    let gamma = a_glue_vector(p);
    for word in code.generators() {
        let mut row = vec![Int::zero(); rank];
        for (i, &c) in word.iter().enumerate() {
            if c % p != 0 {
                for (j, g) in gamma.iter().enumerate() {
                    // p * c * gamma_j is integral.
                    let v = g * Rat::from(Int::from(c % p)) * Rat::from(Int::from(p));
                    debug_assert!(v.is_integer());
                    row[i * b + j] = v.to_integer();
                }
            }
        }
        rows.push(row);
    }
    let (basis_times_p, got_rank) = IntMatrix::from_rows(rows).row_hnf();
    if got_rank != rank {
        return Err(Error::Inconsistency(
            "glued generators do not span full rank".into(),
        ));
    }

    // Gram of N = (B/p) G (B/p)^T = B G B^T / p^2; must be integral and
    // even for the construction to yield an even lattice.
    let bg = &(&basis_times_p * &base_gram) * &basis_times_p.transpose();
    let p2 = Int::from(p * p);
    let mut gram = IntMatrix::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            let (q, r) = num_integer::Integer::div_rem(&bg[(i, j)], &p2);
            if !r.is_zero() {
                return Err(Error::NotEven(format!(
                    "construction A output is not integral at ({i},{j}); \
                     the code is not self-orthogonal"
                )));
            }
            gram[(i, j)] = q;
        }
    }
    let name = format!("A({})", code.describe());
    let lattice = GramLattice::named(gram, &name)?;

    // [N : R] = |C|: check via determinants, det R = det N * |C|^2.
    let det_r = base_gram.det()?;
    let det_n = lattice.det();
    let size = Int::from(code.size());
    if det_n.clone() * &size * &size != det_r {
        return Err(Error::Inconsistency(format!(
            "index check failed: det R = {det_r}, det N = {det_n}, |C| = {size}"
        )));
    }
    Ok(GlueLattice {
        p,
        k,
        code: code.clone(),
        base_gram,
        lattice,
        basis_times_p,
        index_over_base: size,
    })
}

/// Construction B: the kernel in `A(C)` of
/// `x -> sum_i e_i (x | gamma^(i)) mod p` for a full-weight `e`. The index
/// must be exactly `p`; a degenerate functional is an error.
pub fn construction_b(glue: &GlueLattice, e: &[u64]) -> Result<(Sublattice, Int)> {
    let p = glue.p;
    if e.len() != glue.k {
        return Err(Error::DimensionMismatch(format!(
            "weight vector has length {}, code length is {}",
            e.len(),
            glue.k
        )));
    }
    if e.iter().any(|&c| c % p == 0) {
        return Err(Error::Precondition(
            "construction B requires a full-weight vector (no zero entries)".into(),
        ));
    }
    let rank = glue.rank();
    let b = (p as usize) - 1;
    let gamma = a_glue_vector(p);

    // Values p * (n_j | sum_i e_i gamma^(i)) for the N-basis vectors n_j,
    // computed in R-coordinates; always integers.
    let mut weighted_gamma = vec![Rat::zero(); rank];
    for i in 0..glue.k {
        for (j, g) in gamma.iter().enumerate() {
            weighted_gamma[i * b + j] = g * Rat::from(Int::from(e[i] % p));
        }
    }
    // G * weighted_gamma once; entries lie in (1/p) Z.
    let g_wg: Vec<Rat> = (0..rank)
        .map(|i| {
            (0..rank).fold(Rat::zero(), |acc, j| {
                acc + Rat::from(glue.base_gram[(i, j)].clone()) * &weighted_gamma[j]
            })
        })
        .collect();
    // For the N-basis vector n_row (= basis_times_p[row] / p in R-coords)
    // this computes p * (n_row | sum_i e_i gamma^(i)), always an integer.
    // The kernel condition "sum e_i (x|gamma^(i)) = 0 mod p" then becomes
    // "functional . y = 0 mod p^2" on N-coordinates y.
    let mut functional = Vec::with_capacity(rank);
    for row in 0..rank {
        let acc = (0..rank).fold(Rat::zero(), |acc, i| {
            acc + Rat::from(glue.basis_times_p[(row, i)].clone()) * &g_wg[i]
        });
        if !acc.is_integer() {
            return Err(Error::Inconsistency(
                "scaled construction B functional is not integral on N".into(),
            ));
        }
        functional.push(acc.to_integer());
    }

    let (sub, index) = glue
        .lattice
        .sublattice_by_functional(&functional, p * p)?;
    if index != Int::from(p) {
        return Err(Error::DegenerateFunctional {
            expected: p.to_string(),
            got: index.to_string(),
        });
    }
    let mut sub = sub;
    sub.lattice
        .set_name(&format!("B({})", glue.code.describe()));
    Ok((sub, index))
}

/// The block isometry of the glued lattice that cyclically permutes each
/// extended base `alpha_1 -> alpha_2 -> ... -> alpha_0 -> alpha_1`, block
/// `i` being rotated `e_i` times. Fixed point free of order `p`.
pub fn g_delta_e(glue: &GlueLattice, e: &[u64]) -> Result<Isometry> {
    let p = glue.p;
    if e.len() != glue.k {
        return Err(Error::DimensionMismatch(format!(
            "exponent vector has length {}, code length is {}",
            e.len(),
            glue.k
        )));
    }
    if e.iter().any(|&c| c % p == 0) {
        return Err(Error::Precondition(
            "exponents must be units mod p".into(),
        ));
    }
    let b = (p as usize) - 1;
    let rank = glue.rank();

    // Single-block rotation on simple-root coordinates:
    // alpha_i -> alpha_{i+1} for i < p-1, alpha_{p-1} -> -sum alpha_j.
    let mut rot = IntMatrix::zero(b, b);
    for i in 0..b {
        if i + 1 < b {
            rot[(i + 1, i)] = Int::one();
        } else {
            for r in 0..b {
                rot[(r, i)] = -Int::one();
            }
        }
    }

    let mut on_base = IntMatrix::zero(rank, rank);
    for (blk, &exp) in e.iter().enumerate() {
        let power = rot.pow(exp % p).expect("square");
        for i in 0..b {
            for j in 0..b {
                on_base[(blk * b + i, blk * b + j)] = power[(i, j)].clone();
            }
        }
    }

    // Conjugate into N-coordinates: coordinates transform by
    // M_N = B M_R^T B^{-1} ... with column-vector convention and rows of
    // basis_times_p being the basis in R-coords, a vector with N-coords x
    // has R-coords (B^T/p) x, so M_N = p B^{-T} M_R B^T / p = B^{-T} M_R B^T.
    let bt = glue.basis_times_p.transpose();
    let bt_inv = RatMatrix::from_int(&bt).inverse().map_err(|_| {
        Error::Inconsistency("glue basis is singular".into())
    })?;
    let m_n = bt_inv.mul_int(&(&on_base * &bt));
    let m_n = m_n
        .to_int()
        .ok_or_else(|| Error::Inconsistency("rotation does not stabilize the glued lattice".into()))?;

    let iso = Isometry::new(Arc::new(glue.lattice.clone()), m_n)?;
    debug_assert_eq!(iso.order(), p);
    debug_assert!(iso.is_completely_fixed_point_free());
    Ok(iso)
}

impl CodeZp {
    fn describe(&self) -> String {
        format!("p{}:[{},{}]", self.p(), self.length(), self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::named::{hamming8, repetition8, tetracode};

    #[test]
    fn root_lattice_examples() {
        let (a1, g1) = root_lattice_a(2).unwrap();
        assert_eq!(a1.rank(), 1);
        assert_eq!(a1.gram()[(0, 0)], Int::from(2));
        assert_eq!(g1.len(), 1);

        let (a2, _) = root_lattice_a(3).unwrap();
        assert_eq!(a2.root_count().unwrap(), 6);

        let (a4, _) = root_lattice_a(5).unwrap();
        assert_eq!(a4.root_count().unwrap(), 20);

        assert!(root_lattice_a(6).is_err());
    }

    #[test]
    fn construction_a_of_hamming_is_e8() {
        let glue = construction_a(&hamming8()).unwrap();
        assert_eq!(glue.rank(), 8);
        assert_eq!(glue.lattice.det(), Int::one());
        assert_eq!(glue.lattice.root_count().unwrap(), 240);
        assert_eq!(glue.index_over_base, Int::from(16));
    }

    #[test]
    fn construction_a_of_tetracode_is_e8() {
        let glue = construction_a(&tetracode()).unwrap();
        assert_eq!(glue.rank(), 8);
        assert_eq!(glue.lattice.det(), Int::one());
        assert_eq!(glue.lattice.root_count().unwrap(), 240);
        assert_eq!(glue.index_over_base, Int::from(9));
    }

    #[test]
    fn construction_a_of_zero_code_is_the_base() {
        let zero = CodeZp::zero(3, 2).unwrap();
        let glue = construction_a(&zero).unwrap();
        assert_eq!(glue.index_over_base, Int::one());
        assert_eq!(glue.lattice.det(), Int::from(9));
        assert_eq!(glue.lattice.root_count().unwrap(), 12);
    }

    #[test]
    fn construction_a_rejects_non_self_orthogonal() {
        // {00, 11} over Z_2 with length 2: glue norm 1, not even.
        let c = CodeZp::new(2, 2, vec![vec![1, 1]]).unwrap();
        assert!(matches!(construction_a(&c), Err(Error::NotEven(_))));
    }

    #[test]
    fn construction_b_of_repetition_code_is_sqrt2e8() {
        let glue = construction_a(&repetition8()).unwrap();
        // A(repetition8): det 2^8 / 2^2 = 64, exactly the 16 base roots.
        assert_eq!(glue.lattice.det(), Int::from(64));
        assert_eq!(glue.lattice.root_count().unwrap(), 16);

        let (sub, index) = construction_b(&glue, &[1; 8]).unwrap();
        assert_eq!(index, Int::from(2));
        let b = &sub.lattice;
        assert_eq!(b.det(), Int::from(256));
        assert!(b.is_rootless().unwrap());
        assert_eq!(b.shell(4).unwrap().count(), 240);
        let d = b.discriminant_group().unwrap();
        assert!(d.is_elementary(2));
        assert_eq!(d.elementary_divisors.len(), 8);
    }

    #[test]
    fn construction_b_of_zero_code_has_index_p() {
        let zero = CodeZp::zero(3, 2).unwrap();
        let glue = construction_a(&zero).unwrap();
        let (_, index) = construction_b(&glue, &[1, 1]).unwrap();
        assert_eq!(index, Int::from(3));
    }

    #[test]
    fn construction_b_rejects_zero_weight() {
        let glue = construction_a(&repetition8()).unwrap();
        assert!(construction_b(&glue, &[1, 1, 1, 1, 0, 1, 1, 1]).is_err());
    }

    #[test]
    fn g_delta_e_on_a1_blocks_is_negation() {
        let glue = construction_a(&repetition8()).unwrap();
        let g = g_delta_e(&glue, &[1; 8]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(!g.matrix().is_identity());
        let neg = Isometry::neg_identity(g.lattice_arc());
        assert_eq!(g.matrix(), neg.matrix());
    }

    #[test]
    fn g_delta_e_on_a2_is_coxeter_like() {
        let zero = CodeZp::zero(3, 1).unwrap();
        let glue = construction_a(&zero).unwrap();
        let g = g_delta_e(&glue, &[1]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_completely_fixed_point_free());
        assert_eq!(g.det_one_minus_power(1), Int::from(3));
    }

    #[test]
    fn g_delta_e_profile_is_phi_p_to_the_k() {
        let glue = construction_a(&tetracode()).unwrap();
        let g = g_delta_e(&glue, &[1, 2, 1, 2]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.cyclotomic_profile().factors(), &[(3, 4)]);
        for i in 1..3 {
            assert!(!g.det_one_minus_power(i).is_zero());
        }
    }

    #[test]
    fn g_delta_e_stabilizes_b_for_dual_weight_vectors() {
        let glue = construction_a(&repetition8()).unwrap();
        // e = all-ones is in the dual of the repetition code.
        let (sub, _) = construction_b(&glue, &[1; 8]).unwrap();
        let g = g_delta_e(&glue, &[1; 8]).unwrap();
        let restricted = g.restrict_to(&sub).unwrap();
        assert_eq!(restricted.order(), 2);
    }
}
