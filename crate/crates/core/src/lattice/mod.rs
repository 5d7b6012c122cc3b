//! Even positive-definite lattices presented by exact integer Gram
//! matrices: discriminant groups, short-vector shells, coset shells and
//! sublattice arithmetic.
//!
//! A note on notation: the norm-2 vectors of `L` are written `L(2)` (some
//! sources write `L_2` for the same set); a lattice is rootless when
//! `L(2)` is empty.

pub mod enumerate;
pub mod reduce;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::ratmat::RatMatrix;
use crate::exact::{Int, Rat};

/// True iff every diagonal entry of a symmetric Gram matrix is even, which
/// is sufficient for all norms to be even.
pub fn check_even(gram: &IntMatrix) -> Result<bool> {
    if !gram.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok((0..gram.rows()).all(|i| gram[(i, i)].is_even()))
}

/// An even lattice given by a symmetric positive-definite integer Gram
/// matrix in a fixed basis. Rank 0 is allowed (the Gram matrix is then
/// 0 by 0); it arises as a fixed or coinvariant sublattice.
#[derive(Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntMatrix,
    name: Option<String>,
}

impl GramLattice {
    /// Validates symmetry, evenness and positive definiteness (via exact
    /// leading principal minors) at construction.
    pub fn new(gram: IntMatrix, name: Option<String>) -> Result<Self> {
        if !check_even(&gram)? {
            let odd = (0..gram.rows())
                .find(|&i| !gram[(i, i)].is_even())
                .unwrap();
            return Err(Error::NotEven(format!(
                "gram[{odd}][{odd}] = {}",
                gram[(odd, odd)]
            )));
        }
        for (k, minor) in gram.leading_principal_minors()?.iter().enumerate() {
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    index: k,
                    value: minor.to_string(),
                });
            }
        }
        Ok(GramLattice { gram, name })
    }

    pub fn named(gram: IntMatrix, name: &str) -> Result<Self> {
        GramLattice::new(gram, Some(name.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = Some(name.to_string());
    }

    pub fn det(&self) -> Int {
        self.gram.det().expect("gram is square")
    }

    /// Exact norm `x^T G x` of an integer coordinate vector.
    pub fn norm(&self, coords: &[Int]) -> Int {
        let gx = self.gram.mul_vec(coords);
        coords
            .iter()
            .zip(&gx)
            .fold(Int::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_i64(&self, coords: &[i64]) -> Int {
        let v: Vec<Int> = coords.iter().map(|&c| Int::from(c)).collect();
        self.norm(&v)
    }

    /// Inner product of two coordinate vectors.
    pub fn inner(&self, a: &[Int], b: &[Int]) -> Int {
        let gb = self.gram.mul_vec(b);
        a.iter().zip(&gb).fold(Int::zero(), |acc, (x, y)| acc + x * y)
    }

    /// All inner products even and all norms divisible by 4, so the
    /// standard lift of any isometry has trivial sign action.
    pub fn is_doubly_even(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (&self.gram[(i, i)] % Int::from(4)).is_zero()
                && (0..n).all(|j| self.gram[(i, j)].is_even())
        })
    }

    /// Inverse Gram matrix; its columns are the dual basis in lattice
    /// coordinates.
    pub fn dual_basis(&self) -> Result<RatMatrix> {
        RatMatrix::from_int(&self.gram).inverse()
    }

    /// Check membership of a rational vector in the dual lattice: the
    /// pairing with every basis vector must be integral.
    pub fn in_dual(&self, v: &[Rat]) -> bool {
        (0..self.rank()).all(|i| {
            (0..self.rank())
                .fold(Rat::zero(), |acc, j| {
                    acc + Rat::from(self.gram[(i, j)].clone()) * &v[j]
                })
                .is_integer()
        })
    }

    /// The discriminant group `D(L) = L^*/L` via the Smith normal form of
    /// the Gram matrix.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularGram);
        }
        let snf = self.gram.snf();
        let divisors = snf.elementary_divisors();
        let order = divisors.iter().fold(Int::one(), |acc, d| acc * d);
        debug_assert_eq!(order, det.abs());
        Ok(DiscriminantGroup {
            elementary_divisors: divisors,
            order,
        })
    }

    /// All nonzero vectors of norm at most `max_norm`, grouped by norm,
    /// each shell sorted lexicographically by coordinates.
    pub fn shells(&self, max_norm: i64) -> Result<BTreeMap<i64, CosetShell>> {
        if max_norm <= 0 {
            return Err(Error::Precondition(format!(
                "shell bound must be positive, got {max_norm}"
            )));
        }
        let shift = vec![Rat::zero(); self.rank()];
        let found = enumerate::enumerate(&self.gram, &shift, &Rat::from(Int::from(max_norm)))?;
        let mut shells: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        for f in found {
            debug_assert!(f.norm.is_integer());
            let norm = i64::try_from(&f.norm.to_integer()).expect("norm fits i64");
            shells.entry(norm).or_default().push(f.coords);
        }
        Ok(shells
            .into_iter()
            .map(|(norm, mut vectors)| {
                vectors.sort();
                (
                    norm,
                    CosetShell {
                        shift: shift.clone(),
                        norm: Rat::from(Int::from(norm)),
                        vectors,
                    },
                )
            })
            .collect())
    }

    /// The single shell of vectors of exact norm `norm` (possibly empty).
    pub fn shell(&self, norm: i64) -> Result<CosetShell> {
        let mut shells = self.shells(norm)?;
        Ok(shells.remove(&norm).unwrap_or_else(|| CosetShell {
            shift: vec![Rat::zero(); self.rank()],
            norm: Rat::from(Int::from(norm)),
            vectors: Vec::new(),
        }))
    }

    /// All vectors `v` in `shift + L` with `(v|v) = norm` exactly. The
    /// shift must lie in the dual lattice.
    pub fn coset_shell(&self, shift: &[Rat], norm: i64) -> Result<CosetShell> {
        if norm <= 0 {
            return Err(Error::Precondition(format!(
                "coset shell norm must be positive, got {norm}"
            )));
        }
        if shift.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "shift has length {}, lattice rank is {}",
                shift.len(),
                self.rank()
            )));
        }
        if !self.in_dual(shift) {
            return Err(Error::NotInDual);
        }
        let target = Rat::from(Int::from(norm));
        let found = enumerate::enumerate(&self.gram, shift, &target)?;
        let mut vectors: Vec<Vec<i64>> = found
            .into_iter()
            .filter(|f| f.norm == target)
            .map(|f| f.coords)
            .collect();
        vectors.sort();
        Ok(CosetShell {
            shift: shift.to_vec(),
            norm: target,
            vectors,
        })
    }

    /// Number of roots (norm-2 vectors).
    pub fn root_count(&self) -> Result<usize> {
        Ok(self.shell(2)?.count())
    }

    pub fn is_rootless(&self) -> Result<bool> {
        Ok(self.root_count()? == 0)
    }

    /// Sublattice spanned by the columns of `basis` (coordinates in this
    /// lattice's basis), with its induced Gram matrix.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<Sublattice> {
        if basis.rows() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} rows, lattice rank is {}",
                basis.rows(),
                self.rank()
            )));
        }
        let induced = &(&basis.transpose() * &self.gram) * basis;
        let lattice = GramLattice::new(induced, None)?;
        Ok(Sublattice {
            lattice,
            embedding: basis.clone(),
        })
    }

    /// Kernel of an integer matrix acting on coordinates, as a primitive
    /// sublattice.
    pub fn kernel_sublattice(&self, map: &IntMatrix) -> Result<Sublattice> {
        if map.cols() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "map has {} columns, lattice rank is {}",
                map.cols(),
                self.rank()
            )));
        }
        let kernel = map.right_kernel();
        self.sublattice(&kernel)
    }

    /// Kernel of the homomorphism `x -> f . x mod m`, as a full-rank
    /// sublattice together with its index in `L`.
    pub fn sublattice_by_functional(&self, f: &[Int], modulus: u64) -> Result<(Sublattice, Int)> {
        if modulus == 0 {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        if f.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "functional has length {}, lattice rank is {}",
                f.len(),
                self.rank()
            )));
        }
        let n = self.rank();
        // Kernel of [f | m]: Z^{n+1} -> Z, projected back to the first n
        // coordinates; the projection is injective on the kernel.
        let mut row = f.to_vec();
        row.push(Int::from(modulus));
        let mat = IntMatrix::from_rows(vec![row]);
        let kernel = mat.right_kernel();
        debug_assert_eq!(kernel.cols(), n);
        let mut basis = IntMatrix::zero(n, n);
        for j in 0..n {
            for i in 0..n {
                basis[(i, j)] = kernel[(i, j)].clone();
            }
        }
        let sub = self.sublattice(&basis)?;
        let index = lattice_index(&sub.embedding)?;
        Ok((sub, index))
    }
}

impl fmt::Debug for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GramLattice({}, rank {})",
            self.name.as_deref().unwrap_or("?"),
            self.rank()
        )
    }
}

/// A sublattice `M` of a parent lattice, with the embedding matrix whose
/// columns are the coordinates of `M`'s basis in the parent basis.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub lattice: GramLattice,
    pub embedding: IntMatrix,
}

impl Sublattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// Index `[L : M]` of a full-rank sublattice given by its embedding
/// matrix: the absolute determinant. Errors on rank deficiency.
pub fn lattice_index(embedding: &IntMatrix) -> Result<Int> {
    if !embedding.is_square() {
        return Err(Error::Precondition(format!(
            "embedding is {}x{}, index requires equal ranks",
            embedding.rows(),
            embedding.cols()
        )));
    }
    let det = embedding.det()?;
    if det.is_zero() {
        return Err(Error::Precondition(
            "embedding is rank deficient; index is infinite".into(),
        ));
    }
    Ok(det.abs())
}

/// The finite abelian group `L^*/L` described by its nontrivial elementary
/// divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub elementary_divisors: Vec<Int>,
    pub order: Int,
}

impl DiscriminantGroup {
    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }

    /// True when the group is an elementary abelian `(Z_p)^k`.
    pub fn is_elementary(&self, p: u64) -> bool {
        let p = Int::from(p);
        self.elementary_divisors.iter().all(|d| *d == p)
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elementary_divisors.is_empty() {
            return write!(f, "trivial");
        }
        let mut parts: Vec<(String, usize)> = Vec::new();
        for d in &self.elementary_divisors {
            let s = d.to_string();
            match parts.last_mut() {
                Some((last, count)) if *last == s => *count += 1,
                _ => parts.push((s, 1)),
            }
        }
        let rendered: Vec<String> = parts
            .into_iter()
            .map(|(d, c)| {
                if c == 1 {
                    format!("Z{d}")
                } else {
                    format!("(Z{d})^{c}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" x "))
    }
}

/// A set of vectors of a fixed exact norm in a coset `shift + L`, listed
/// by the integer coordinates of their lattice parts. For a zero shift
/// this is an ordinary shell of lattice vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetShell {
    pub shift: Vec<Rat>,
    pub norm: Rat,
    /// Lattice parts `v - shift`, sorted lexicographically.
    pub vectors: Vec<Vec<i64>>,
}

impl CosetShell {
    pub fn count(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Full rational coordinates of the `i`-th vector, shift included.
    pub fn vector(&self, i: usize) -> Vec<Rat> {
        self.vectors[i]
            .iter()
            .zip(&self.shift)
            .map(|(&x, s)| Rat::from(Int::from(x)) + s)
            .collect()
    }

    pub fn iter_vectors(&self) -> impl Iterator<Item = Vec<Rat>> + '_ {
        (0..self.count()).map(|i| self.vector(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn a2() -> GramLattice {
        GramLattice::named(
            IntMatrix::from_i64_rows(&[vec![2, -1], vec![-1, 2]]),
            "A2",
        )
        .unwrap()
    }

    #[test]
    fn evenness_check() {
        assert!(check_even(a2().gram()).unwrap());
        let z2 = IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1]]);
        assert!(!check_even(&z2).unwrap());
        let asym = IntMatrix::from_i64_rows(&[vec![2, 1], vec![0, 2]]);
        assert!(check_even(&asym).is_err());
        assert!(GramLattice::new(z2, None).is_err());
    }

    #[test]
    fn rejects_indefinite_gram() {
        let g = IntMatrix::from_i64_rows(&[vec![2, 3], vec![3, 2]]);
        assert!(matches!(
            GramLattice::new(g, None),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn rank_zero_lattice_is_fine() {
        let l = GramLattice::new(IntMatrix::zero(0, 0), None).unwrap();
        assert_eq!(l.rank(), 0);
        assert_eq!(l.det(), Int::one());
    }

    #[test]
    fn a2_discriminant_and_roots() {
        let l = a2();
        let d = l.discriminant_group().unwrap();
        assert_eq!(d.order, Int::from(3));
        assert_eq!(d.elementary_divisors, vec![Int::from(3)]);
        assert_eq!(l.root_count().unwrap(), 6);

        let shells = l.shells(6).unwrap();
        assert_eq!(shells[&2].count(), 6);
        assert_eq!(shells[&6].count(), 6);
        assert!(!shells.contains_key(&4));
    }

    #[test]
    fn shell_vectors_have_exact_norm_and_negation_closure() {
        let l = a2();
        let shell = l.shell(2).unwrap();
        for v in &shell.vectors {
            assert_eq!(l.norm_i64(v), Int::from(2));
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            assert!(shell.vectors.contains(&neg));
        }
        assert!(shell.count().is_multiple_of(2));
        // Sorted lexicographically.
        let mut sorted = shell.vectors.clone();
        sorted.sort();
        assert_eq!(sorted, shell.vectors);
    }

    #[test]
    fn coset_shell_zero_shift_matches_plain_shell() {
        let l = a2();
        let plain = l.shell(2).unwrap();
        let coset = l
            .coset_shell(&[Rat::zero(), Rat::zero()], 2)
            .unwrap();
        assert_eq!(plain.vectors, coset.vectors);
    }

    #[test]
    fn coset_shell_of_a2_glue_class() {
        let l = a2();
        let shift = vec![rat(2, 3), rat(1, 3)];
        assert!(l.in_dual(&shift));
        let shell = l.coset_shell(&shift, 2).unwrap();
        for i in 0..shell.count() {
            let v = shell.vector(i);
            let mut norm = Rat::zero();
            for a in 0..2 {
                for b in 0..2 {
                    norm += &v[a] * Rat::from(l.gram()[(a, b)].clone()) * &v[b];
                }
            }
            assert_eq!(norm, rat(2, 1));
        }
    }

    #[test]
    fn coset_shell_rejects_non_dual_shift() {
        let l = a2();
        assert!(matches!(
            l.coset_shell(&[rat(1, 2), rat(0, 1)], 2),
            Err(Error::NotInDual)
        ));
    }

    #[test]
    fn functional_sublattice_of_a2() {
        let l = a2();
        // Coordinate sum mod 3: index-3 kernel with determinant 27.
        let (sub, index) = l
            .sublattice_by_functional(&[Int::one(), Int::one()], 3)
            .unwrap();
        assert_eq!(index, Int::from(3));
        assert_eq!(sub.lattice.det(), Int::from(27));

        // Zero functional: the lattice itself.
        let (sub, index) = l
            .sublattice_by_functional(&[Int::zero(), Int::zero()], 5)
            .unwrap();
        assert_eq!(index, Int::one());
        assert_eq!(sub.lattice.det(), l.det());
    }

    #[test]
    fn lattice_index_examples() {
        assert_eq!(lattice_index(&IntMatrix::identity(3)).unwrap(), Int::one());
        let twice = IntMatrix::identity(8).scale(&Int::from(2));
        assert_eq!(lattice_index(&twice).unwrap(), Int::from(256));
        let deficient = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(lattice_index(&deficient).is_err());
    }

    #[test]
    fn discriminant_display() {
        let d = DiscriminantGroup {
            elementary_divisors: vec![Int::from(2); 8],
            order: Int::from(256),
        };
        assert_eq!(d.to_string(), "(Z2)^8");
        assert!(d.is_elementary(2));
    }
}
