//! Permutation actions of isometries on shells of short vectors, with
//! Schreier–Sims base-and-strong-generating-set machinery for exact group
//! orders and backtrack searches for centralizers and cyclic normalizers.

pub mod backtrack;
pub mod schreier;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::isometry::Isometry;
use crate::lattice::CosetShell;

/// A permutation of the points `0..n`, stored as the image vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n as u32).collect(),
        }
    }

    pub fn from_images(map: Vec<u32>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Precondition("invalid permutation image vector".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.map[point as usize]
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            map: other.map.iter().map(|&x| self.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Smallest point moved by the permutation.
    pub fn first_moved_point(&self) -> Option<u32> {
        self.map
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Length of the cycle through `point`.
    pub fn cycle_length(&self, point: u32) -> usize {
        let mut len = 1;
        let mut x = self.apply(point);
        while x != point {
            x = self.apply(x);
            len += 1;
        }
        len
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for i in 0..n as u32 {
            if seen[i as usize] {
                continue;
            }
            let mut len = 0u64;
            let mut x = i;
            loop {
                seen[x as usize] = true;
                len += 1;
                x = self.apply(x);
                if x == i {
                    break;
                }
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        result
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.map)
    }
}

/// A faithful permutation action of lattice isometries on a fixed shell of
/// vectors. The shell must span the ambient space, so only the identity
/// acts trivially.
pub struct ShellAction {
    points: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    rank: usize,
}

impl ShellAction {
    pub fn new(shell: &CosetShell, rank: usize) -> Result<Self> {
        let points = shell.vectors.clone();
        if points.is_empty() {
            return Err(Error::ActionNotFaithful);
        }
        // Spanning check: the vectors must have full rank so that only the
        // identity fixes them all. Accumulate independent vectors until the
        // rank is full; on large shells this exits after a handful.
        let mut independent: Vec<Vec<i64>> = Vec::new();
        for v in &points {
            if independent.len() == rank {
                break;
            }
            independent.push(v.clone());
            let (_, r) = IntMatrix::from_i64_rows(&independent).row_hnf();
            if r < independent.len() {
                independent.pop();
            }
        }
        if independent.len() != rank {
            return Err(Error::ActionNotFaithful);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, v) in points.iter().enumerate() {
            index.insert(v.clone(), i as u32);
        }
        Ok(ShellAction {
            points,
            index,
            rank,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn point(&self, i: u32) -> &[i64] {
        &self.points[i as usize]
    }

    /// All pairwise inner products of the shell vectors under the lattice
    /// form; every induced permutation preserves this table, which makes
    /// it a strong pruning invariant for backtrack searches. Quadratic in
    /// the shell size, so only sensible for small shells.
    pub fn pairwise_products(&self, lattice: &crate::lattice::GramLattice) -> Vec<Vec<i64>> {
        let n = self.rank;
        let m = self.points.len();
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i64::try_from(&lattice.gram()[(i, j)]).expect("small gram entries"))
                    .collect()
            })
            .collect();
        // G v precomputed per point, then dot products.
        let gv: Vec<Vec<i64>> = self
            .points
            .iter()
            .map(|v| {
                (0..n)
                    .map(|i| (0..n).map(|j| gram[i][j] * v[j]).sum())
                    .collect()
            })
            .collect();
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        (0..n)
                            .map(|i| self.points[a][i] * gv[b][i])
                            .sum::<i64>()
                    })
                    .collect()
            })
            .collect()
    }

    /// Induced permutation of an isometry; errors when the isometry moves
    /// a shell vector off the shell (action not closed).
    pub fn permutation_of(&self, iso: &Isometry) -> Result<Permutation> {
        let n = self.rank;
        let m = iso.matrix();
        // Machine-integer copy of the matrix for the hot loop.
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = i64::try_from(&m[(i, j)]).map_err(|_| {
                    Error::Precondition("isometry entries exceed machine range".into())
                })?;
            }
        }
        let mut map = Vec::with_capacity(self.points.len());
        let mut image = vec![0i64; n];
        for v in &self.points {
            for i in 0..n {
                let mut acc: i128 = 0;
                for j in 0..n {
                    acc += rows[i][j] as i128 * v[j] as i128;
                }
                image[i] = i64::try_from(acc)
                    .map_err(|_| Error::Inconsistency("image coordinate overflow".into()))?;
            }
            match self.index.get(image.as_slice()) {
                Some(&idx) => map.push(idx),
                None => return Err(Error::ActionNotClosed),
            }
        }
        Permutation::from_images(map)
    }
}
