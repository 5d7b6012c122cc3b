//! Seeded random-product search for group elements matching a requested
//! class invariant (order, cyclotomic profile, power identities).
//!
//! Candidates are generated as a random walk in the group generated by the
//! supplied isometries, restarted every `max_word_len` steps so each
//! candidate is a word of bounded length. Filtering is staged: a cheap
//! machine-integer trace test first, then order and power identities, and
//! only then the exact profile via the characteristic polynomial.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::isometry::{CyclotomicProfile, Isometry};
use crate::lattice::GramLattice;

/// Constraints identifying a target class.
#[derive(Clone, Debug)]
pub struct TargetClass {
    pub order: u64,
    /// Required cyclotomic profile of the characteristic polynomial.
    pub profile: Vec<(u64, usize)>,
    /// Require `g^k = -1` for this `k` (usually `order/2`).
    pub power_minus_identity: Option<u64>,
    /// Free-form label carried through reports; never used for matching.
    pub label: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchParams {
    pub seed: u64,
    pub budget: u64,
    /// Restart the walk at the identity every this many steps; `0` means
    /// never restart. Bounded words cannot reach classes that only
    /// contain long elements (in a Weyl group the central `-1` alone can
    /// need as many letters as there are positive roots), so the default
    /// is an unbounded walk.
    pub max_word_len: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            seed: 2024,
            budget: 1_000_000,
            max_word_len: 0,
        }
    }
}

/// Search result: the representative if one was found within budget, the
/// seed used (echoed for reproducibility) and the number of words tried.
pub struct SearchOutcome {
    pub isometry: Option<Isometry>,
    pub seed: u64,
    pub words_tried: u64,
}

/// Square machine-integer matrices, flat row-major; fast path for the walk.
#[derive(Clone, PartialEq)]
struct M64 {
    n: usize,
    a: Vec<i64>,
}

impl M64 {
    fn identity(n: usize) -> Self {
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        M64 { n, a }
    }

    fn neg_identity(n: usize) -> Self {
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = -1;
        }
        M64 { n, a }
    }

    fn from_int(m: &IntMatrix) -> Option<Self> {
        let n = m.rows();
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(i64::try_from(&m[(i, j)]).ok()?);
            }
        }
        Some(M64 { n, a })
    }

    fn to_int(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = crate::exact::Int::from(self.a[i * self.n + j]);
            }
        }
        m
    }

    fn mul(&self, rhs: &M64) -> M64 {
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let v = self.a[i * n + k];
                if v == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j]
                        .checked_add(v.checked_mul(rhs.a[k * n + j]).expect("entry overflow"))
                        .expect("entry overflow");
                }
            }
        }
        M64 { n, a: out }
    }

    fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.a[i * self.n + i]).sum()
    }
}

fn expected_trace(profile: &[(u64, usize)]) -> i64 {
    profile
        .iter()
        .map(|&(d, m)| m as i64 * crate::isometry::moebius(d))
        .sum()
}

/// Check order and the optional power identity using machine integers.
/// Returns true when `m` has exactly the target order and satisfies the
/// required `g^k = -1`.
fn order_and_power_ok(m: &M64, target: &TargetClass) -> bool {
    let n = target.order;
    let id = M64::identity(m.n);
    let neg = M64::neg_identity(m.n);
    let mut p = m.clone();
    for s in 1..=n {
        if s > 1 {
            p = p.mul(m);
        }
        if s < n && p == id {
            return false; // order divides s < n
        }
        if let Some(k) = target.power_minity_key() {
            if s == k && p != neg {
                return false;
            }
        }
        if s == n && p != id {
            return false;
        }
    }
    true
}

impl TargetClass {
    fn power_minity_key(&self) -> Option<u64> {
        self.power_minus_identity
    }

    pub fn profile_struct(&self) -> CyclotomicProfile {
        CyclotomicProfile::new(self.profile.clone())
    }
}

/// Deterministic seeded search for an isometry of `lattice` in the group
/// generated by `generators` whose class data matches `target`. Exhausting
/// the budget returns `isometry: None`, not an error.
pub fn find_isometry_with_profile(
    lattice: Arc<GramLattice>,
    generators: &[Isometry],
    target: &TargetClass,
    params: SearchParams,
) -> Result<SearchOutcome> {
    if generators.is_empty() {
        return Err(Error::Precondition("no generators supplied".into()));
    }
    let gens64: Vec<M64> = generators
        .iter()
        .map(|g| {
            M64::from_int(g.matrix()).ok_or_else(|| {
                Error::Precondition("generator entries exceed the machine range".into())
            })
        })
        .collect::<Result<_>>()?;
    let n = lattice.rank();
    let want_trace = expected_trace(&target.profile);
    let target_profile = target.profile_struct();
    if target_profile.degree() != n {
        return Err(Error::Precondition(format!(
            "target profile has degree {}, lattice rank is {n}",
            target_profile.degree()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut current = M64::identity(n);
    let mut word_len = 0usize;
    let id = M64::identity(n);

    for tried in 0..params.budget {
        if params.max_word_len > 0 && word_len >= params.max_word_len {
            current = id.clone();
            word_len = 0;
        }
        let pick = rng.gen_range(0..gens64.len());
        current = current.mul(&gens64[pick]);
        word_len += 1;

        if current.trace() != want_trace {
            continue;
        }
        if !order_and_power_ok(&current, target) {
            continue;
        }
        // Exact verification of the full profile.
        let candidate = Isometry::new(Arc::clone(&lattice), current.to_int())?;
        if candidate.cyclotomic_profile() == target_profile {
            return Ok(SearchOutcome {
                isometry: Some(candidate),
                seed: params.seed,
                words_tried: tried + 1,
            });
        }
    }
    Ok(SearchOutcome {
        isometry: None,
        seed: params.seed,
        words_tried: params.budget,
    })
}

/// Simple-root reflection generators for a root-lattice Gram matrix whose
/// basis vectors are norm-2 roots: `s_i(x) = x - (x|a_i) a_i`.
pub fn simple_reflections(lattice: &Arc<GramLattice>) -> Result<Vec<Isometry>> {
    let g = lattice.gram();
    let n = lattice.rank();
    // Reflections in basis vectors require norm-2 basis vectors. For a
    // rescaled Gram (all entries doubled) the same matrices still preserve
    // the form, so accept norm 2 up to an overall even scale.
    let scale = &g[(0, 0)] / crate::exact::Int::from(2);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if g[(i, i)] != crate::exact::Int::from(2) * &scale {
            return Err(Error::Precondition(
                "basis vectors must all have the same norm for reflection generators".into(),
            ));
        }
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            // (e_j | a_i) / scale in the rescaled form.
            let c = &g[(i, j)] / &scale;
            m[(i, j)] -= c;
        }
        out.push(Isometry::new(Arc::clone(lattice), m)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<GramLattice> {
        Arc::new(
            GramLattice::named(
                IntMatrix::from_i64_rows(&[vec![2, -1], vec![-1, 2]]),
                "A2",
            )
            .unwrap(),
        )
    }

    #[test]
    fn reflections_generate_coxeter_class() {
        let l = a2();
        let gens = simple_reflections(&l).unwrap();
        assert_eq!(gens.len(), 2);
        for g in &gens {
            assert_eq!(g.order(), 2);
        }
        let target = TargetClass {
            order: 3,
            profile: vec![(3, 1)],
            power_minus_identity: None,
            label: None,
        };
        let out = find_isometry_with_profile(
            Arc::clone(&l),
            &gens,
            &target,
            SearchParams {
                seed: 1,
                budget: 10_000,
                max_word_len: 8,
            },
        )
        .unwrap();
        let g = out.isometry.expect("order-3 element exists in W(A2)");
        assert_eq!(g.order(), 3);
        assert!(g.is_completely_fixed_point_free());
    }

    #[test]
    fn neg_identity_target_is_found_when_present() {
        // W(A2) does not contain -1; the search must exhaust its budget.
        let l = a2();
        let gens = simple_reflections(&l).unwrap();
        let target = TargetClass {
            order: 2,
            profile: vec![(2, 2)],
            power_minus_identity: Some(1),
            label: None,
        };
        let out = find_isometry_with_profile(
            Arc::clone(&l),
            &gens,
            &target,
            SearchParams {
                seed: 5,
                budget: 3_000,
                max_word_len: 8,
            },
        )
        .unwrap();
        assert!(out.isometry.is_none());
        assert_eq!(out.words_tried, 3_000);
    }

    #[test]
    fn search_is_deterministic_in_the_seed() {
        let l = a2();
        let gens = simple_reflections(&l).unwrap();
        let target = TargetClass {
            order: 3,
            profile: vec![(3, 1)],
            power_minus_identity: None,
            label: None,
        };
        let run = |seed| {
            let out = find_isometry_with_profile(
                Arc::clone(&l),
                &gens,
                &target,
                SearchParams {
                    seed,
                    budget: 10_000,
                    max_word_len: 8,
                },
            )
            .unwrap();
            (out.isometry.unwrap().matrix().clone(), out.words_tried)
        };
        assert_eq!(run(42), run(42));
    }
}
