//! Isometries of a Gram lattice: orders, cyclotomic profiles, fixed and
//! coinvariant sublattices, eigenspace dimensions and conjugation-invariant
//! class data.

pub mod search;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::arith::{euler_phi, factorize, gcd, lcm};
use crate::exact::cyclotomic::cyclotomic;
use crate::exact::matrix::IntMatrix;
use crate::exact::poly::IntPoly;
use crate::exact::ratmat::RatMatrix;
use crate::exact::Int;
use crate::lattice::{GramLattice, Sublattice};

/// Moebius function, via trial factorization.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An integer basis-change matrix preserving the Gram form of its parent
/// lattice. The defining identity `M^T G M = G` is checked exactly on
/// construction; `|det M| = 1` follows and is asserted.
#[derive(Clone)]
pub struct Isometry {
    lattice: Arc<GramLattice>,
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(lattice: Arc<GramLattice>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "isometry matrix is {}x{}, lattice rank is {}",
                matrix.rows(),
                matrix.cols(),
                lattice.rank()
            )));
        }
        let g = lattice.gram();
        if &(&matrix.transpose() * g) * &matrix != *g {
            return Err(Error::NotIsometry);
        }
        debug_assert_eq!(matrix.det()?.abs(), Int::one());
        Ok(Isometry { lattice, matrix })
    }

    pub fn identity(lattice: Arc<GramLattice>) -> Self {
        let n = lattice.rank();
        Isometry {
            matrix: IntMatrix::identity(n),
            lattice,
        }
    }

    pub fn neg_identity(lattice: Arc<GramLattice>) -> Self {
        let n = lattice.rank();
        Isometry {
            matrix: -&IntMatrix::identity(n),
            lattice,
        }
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<GramLattice> {
        Arc::clone(&self.lattice)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Compose with another isometry of the same lattice.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.lattice.gram() != other.lattice.gram() {
            return Err(Error::Precondition(
                "isometries live on different lattices".into(),
            ));
        }
        let matrix = &self.matrix * &other.matrix;
        debug_assert!({
            let g = self.lattice.gram();
            &(&matrix.transpose() * g) * &matrix == *g
        });
        Ok(Isometry {
            lattice: Arc::clone(&self.lattice),
            matrix,
        })
    }

    pub fn pow(&self, k: u64) -> Isometry {
        let matrix = self.matrix.pow(k).expect("isometry matrix is square");
        debug_assert!({
            let g = self.lattice.gram();
            &(&matrix.transpose() * g) * &matrix == *g
        });
        Isometry {
            lattice: Arc::clone(&self.lattice),
            matrix,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let inv = RatMatrix::from_int(&self.matrix)
            .inverse()
            .expect("isometries are invertible")
            .to_int()
            .expect("unimodular inverse is integral");
        Isometry {
            lattice: Arc::clone(&self.lattice),
            matrix: inv,
        }
    }

    pub fn char_poly(&self) -> IntPoly {
        self.matrix.char_poly().expect("square matrix")
    }

    /// Factorization of the characteristic polynomial into cyclotomic
    /// factors. Always succeeds for an isometry of a positive-definite
    /// lattice, which has finite order.
    pub fn cyclotomic_profile(&self) -> CyclotomicProfile {
        CyclotomicProfile::of_poly(&self.char_poly())
            .expect("isometries of definite lattices have cyclotomic characteristic polynomials")
    }

    /// Order of the isometry: the lcm of the cyclotomic indices in its
    /// profile.
    pub fn order(&self) -> u64 {
        self.cyclotomic_profile().order()
    }

    /// Trace of the matrix.
    pub fn trace(&self) -> Int {
        self.matrix.trace().expect("square matrix")
    }

    /// `|det(1 - g^s)|`; zero exactly when `g^s` has nonzero fixed vectors.
    pub fn det_one_minus_power(&self, s: u64) -> Int {
        let m = self.matrix.pow(s).expect("square");
        let diff = &IntMatrix::identity(self.rank()) - &m;
        diff.det().expect("square").abs()
    }

    /// Fixed sublattice `L^g = ker(g - 1)`, primitive in `L`.
    pub fn fixed_sublattice(&self) -> Sublattice {
        let diff = &self.matrix - &IntMatrix::identity(self.rank());
        self.lattice
            .kernel_sublattice(&diff)
            .expect("kernel sublattice of an isometry is even")
    }

    /// Coinvariant sublattice `L_g`: all vectors orthogonal to `L^g`.
    pub fn coinvariant_sublattice(&self) -> Sublattice {
        let fixed = self.fixed_sublattice();
        // Kernel of (basis of L^g)^T G acting on coordinates.
        let map = &fixed.embedding.transpose() * self.lattice.gram();
        self.lattice
            .kernel_sublattice(&map)
            .expect("coinvariant sublattice is even")
    }

    /// True iff every power `g^i`, `1 <= i < order`, is fixed point free;
    /// equivalently the profile is a single cyclotomic factor at the order.
    pub fn is_completely_fixed_point_free(&self) -> bool {
        let profile = self.cyclotomic_profile();
        let n = profile.order();
        profile.factors().len() == 1 && profile.factors()[0].0 == n
    }

    /// Dimensions of the eigenspaces of `g` on the complexified space:
    /// entry `j` is the multiplicity of `exp(2 pi i j / n)`, `n` the order.
    /// `exp(2 pi i j / n)` is a primitive `d`-th root for `d = n/gcd(n,j)`,
    /// so the dimension is the profile multiplicity of `Phi_d`.
    pub fn eigenspace_dims(&self) -> Vec<usize> {
        let profile = self.cyclotomic_profile();
        let n = profile.order();
        (0..n)
            .map(|j| profile.multiplicity(n / gcd(n, j)))
            .collect()
    }

    /// Restriction to a sublattice that `g` stabilizes; errors when the
    /// sublattice is not `g`-stable.
    pub fn restrict_to(&self, sub: &Sublattice) -> Result<Isometry> {
        let e = &sub.embedding;
        let image = &self.matrix * e;
        // Solve E X = image over the rationals and require integrality.
        let et = RatMatrix::from_int(&e.transpose());
        let ete = et.mul_int(e);
        let inv = ete.inverse().map_err(|_| {
            Error::Precondition("sublattice embedding is rank deficient".into())
        })?;
        let x = inv.mul(&et.mul_int(&image));
        let x = x.to_int().ok_or(Error::NotStable)?;
        if (e * &x) != image {
            return Err(Error::NotStable);
        }
        Isometry::new(Arc::new(sub.lattice.clone()), x)
    }

    /// Conjugation-invariant class data: order, profile, trace sequence of
    /// all powers and fixed-sublattice ranks of all powers.
    pub fn class_invariant(&self) -> ClassInvariant {
        let profile = self.cyclotomic_profile();
        let n = profile.order();
        let mut traces = Vec::with_capacity(n as usize);
        let mut fixed_ranks = Vec::with_capacity(n as usize);
        let mut power = self.clone();
        for s in 1..=n {
            traces.push(power.trace());
            fixed_ranks.push(profile.fixed_rank_of_power(s));
            if s < n {
                power = power.compose(self).expect("same lattice");
            }
        }
        ClassInvariant {
            order: n,
            profile,
            traces,
            fixed_ranks,
        }
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Isometry(order {}, rank {})",
            self.order(),
            self.rank()
        )
    }
}

/// Multiset of pairs `(d, multiplicity)` with
/// `charpoly = prod Phi_d^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicProfile {
    factors: Vec<(u64, usize)>,
}

impl CyclotomicProfile {
    pub fn new(mut factors: Vec<(u64, usize)>) -> Self {
        factors.retain(|&(_, m)| m > 0);
        factors.sort_unstable();
        CyclotomicProfile { factors }
    }

    /// Factor a monic polynomial into cyclotomics; `None` when a
    /// non-cyclotomic factor remains.
    pub fn of_poly(poly: &IntPoly) -> Option<CyclotomicProfile> {
        let deg = poly.degree()?;
        if poly.leading() != Some(&Int::one()) {
            return None;
        }
        let mut rest = poly.clone();
        let mut factors = Vec::new();
        if deg == 0 {
            return Some(CyclotomicProfile { factors });
        }
        // phi(d) >= sqrt(d/2), so d <= 2 deg^2 suffices as a scan bound.
        let bound = 2 * (deg as u64) * (deg as u64) + 1;
        for d in 1..=bound {
            if euler_phi(d) as usize > deg {
                continue;
            }
            let phi_d = cyclotomic(d);
            let mut mult = 0;
            loop {
                match rest.div_rem(&phi_d) {
                    Ok((q, r)) if r.is_zero() => {
                        rest = q;
                        mult += 1;
                        if rest.degree() == Some(0) {
                            break;
                        }
                    }
                    _ => break,
                }
            }
            if mult > 0 {
                factors.push((d, mult));
            }
            if rest.degree() == Some(0) {
                break;
            }
        }
        if rest.degree() == Some(0) && rest.coeff(0).is_one() {
            Some(CyclotomicProfile::new(factors))
        } else {
            None
        }
    }

    pub fn factors(&self) -> &[(u64, usize)] {
        &self.factors
    }

    pub fn multiplicity(&self, d: u64) -> usize {
        self.factors
            .iter()
            .find(|&&(e, _)| e == d)
            .map_or(0, |&(_, m)| m)
    }

    /// Total degree `sum mult * phi(d)`.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|&(d, m)| euler_phi(d) as usize * m)
            .sum()
    }

    /// lcm of the cyclotomic indices; the order of any matrix with this
    /// characteristic polynomial and semisimple action.
    pub fn order(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &(d, _)| lcm(acc, d))
    }

    /// Rebuild the characteristic polynomial.
    pub fn reconstruct(&self) -> IntPoly {
        let mut p = IntPoly::one();
        for &(d, m) in &self.factors {
            let phi_d = cyclotomic(d);
            for _ in 0..m {
                p = &p * &phi_d;
            }
        }
        p
    }

    /// Rank of the fixed sublattice of the `s`-th power: the total degree
    /// of the factors whose index divides `s`.
    pub fn fixed_rank_of_power(&self, s: u64) -> usize {
        self.factors
            .iter()
            .filter(|&&(d, _)| s.is_multiple_of(d))
            .map(|&(d, m)| euler_phi(d) as usize * m)
            .sum()
    }

    /// Expected trace: `sum mult(d) * moebius(d)`.
    pub fn trace(&self) -> i64 {
        self.factors
            .iter()
            .map(|&(d, m)| m as i64 * moebius(d))
            .sum()
    }

    /// Render as e.g. `Phi6^4` or `Phi2^2 Phi4`.
    pub fn display(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(d, m)| {
                if m == 1 {
                    format!("Phi{d}")
                } else {
                    format!("Phi{d}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Conjugation-invariant identification data for an isometry class: the
/// order, the cyclotomic profile, the trace of every power and the fixed
/// ranks of every power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInvariant {
    pub order: u64,
    pub profile: CyclotomicProfile,
    pub traces: Vec<Int>,
    pub fixed_ranks: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn a2() -> Arc<GramLattice> {
        Arc::new(
            GramLattice::named(
                IntMatrix::from_i64_rows(&[vec![2, -1], vec![-1, 2]]),
                "A2",
            )
            .unwrap(),
        )
    }

    fn coxeter_a2() -> Isometry {
        Isometry::new(a2(), IntMatrix::from_i64_rows(&[vec![0, -1], vec![1, -1]])).unwrap()
    }

    #[test]
    fn constructor_rejects_non_isometry() {
        let bad = IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            Isometry::new(a2(), bad),
            Err(Error::NotIsometry)
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(Isometry::identity(a2()).order(), 1);
        assert_eq!(Isometry::neg_identity(a2()).order(), 2);
        assert_eq!(coxeter_a2().order(), 3);
    }

    #[test]
    fn profile_of_coxeter() {
        let p = coxeter_a2().cyclotomic_profile();
        assert_eq!(p.factors(), &[(3, 1)]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.reconstruct(), coxeter_a2().char_poly());
    }

    #[test]
    fn fixed_and_coinvariant_ranks() {
        let id = Isometry::identity(a2());
        assert_eq!(id.fixed_sublattice().rank(), 2);
        assert_eq!(id.coinvariant_sublattice().rank(), 0);

        let neg = Isometry::neg_identity(a2());
        assert_eq!(neg.fixed_sublattice().rank(), 0);
        assert_eq!(neg.coinvariant_sublattice().rank(), 2);

        let cox = coxeter_a2();
        assert_eq!(cox.fixed_sublattice().rank(), 0);
        assert_eq!(cox.det_one_minus_power(1), Int::from(3));
    }

    #[test]
    fn block_isometry_coinvariant_is_second_factor() {
        // A2 perp A2 with identity on the first factor, Coxeter on the second.
        let gram = IntMatrix::from_i64_rows(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, 0, 0],
            vec![0, 0, 2, -1],
            vec![0, 0, -1, 2],
        ]);
        let l = Arc::new(GramLattice::new(gram, None).unwrap());
        let m = IntMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 0, -1],
            vec![0, 0, 1, -1],
        ]);
        let g = Isometry::new(l, m).unwrap();
        let fixed = g.fixed_sublattice();
        let coinv = g.coinvariant_sublattice();
        assert_eq!(fixed.rank(), 2);
        assert_eq!(coinv.rank(), 2);
        // The coinvariant part is again an A2.
        assert_eq!(coinv.lattice.det(), Int::from(3));
        // Restriction of g to the coinvariant part is fixed point free.
        let restricted = g.restrict_to(&coinv).unwrap();
        assert_eq!(restricted.order(), 3);
        assert_eq!(restricted.fixed_sublattice().rank(), 0);
    }

    #[test]
    fn completely_fixed_point_free_checks() {
        assert!(Isometry::neg_identity(a2()).is_completely_fixed_point_free());
        assert!(coxeter_a2().is_completely_fixed_point_free());

        // Coxeter element of A3 has order 4 but its square has fixed vectors.
        let a3 = Arc::new(
            GramLattice::new(
                IntMatrix::from_i64_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
                None,
            )
            .unwrap(),
        );
        let cox3 = Isometry::new(
            a3,
            IntMatrix::from_i64_rows(&[vec![0, 0, -1], vec![1, 0, -1], vec![0, 1, -1]]),
        )
        .unwrap();
        assert_eq!(cox3.order(), 4);
        assert!(!cox3.is_completely_fixed_point_free());
        assert_eq!(cox3.cyclotomic_profile().factors(), &[(2, 1), (4, 1)]);
    }

    #[test]
    fn eigenspace_dims_examples() {
        let cox = coxeter_a2();
        assert_eq!(cox.eigenspace_dims(), vec![0, 1, 1]);
        let id = Isometry::identity(a2());
        assert_eq!(id.eigenspace_dims(), vec![2]);
        let neg = Isometry::neg_identity(a2());
        assert_eq!(neg.eigenspace_dims(), vec![0, 2]);
    }

    #[test]
    fn cfpf_iff_all_powers_have_trivial_fixed_space() {
        for g in [
            Isometry::identity(a2()),
            Isometry::neg_identity(a2()),
            coxeter_a2(),
        ] {
            let n = g.order();
            let direct = (1..n).all(|i| !g.det_one_minus_power(i).is_zero());
            assert_eq!(g.is_completely_fixed_point_free(), direct);
        }
    }

    #[test]
    fn class_invariant_is_conjugation_invariant() {
        let cox = coxeter_a2();
        // Conjugate by an isometry of A2 (a simple reflection).
        let refl = Isometry::new(
            a2(),
            IntMatrix::from_i64_rows(&[vec![-1, 1], vec![0, 1]]),
        )
        .unwrap();
        let conj = refl
            .compose(&cox)
            .unwrap()
            .compose(&refl.inverse())
            .unwrap();
        assert_eq!(cox.class_invariant(), conj.class_invariant());
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
    }
}
