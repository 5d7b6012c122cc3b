//! Deterministic incremental Schreier–Sims: builds a base and strong
//! generating set for the group generated by a list of permutations and
//! answers exact order and membership queries.
//!
//! Transversals are stored as Schreier vectors (generator index plus
//! parent point) and materialized on demand, so memory stays linear in
//! the number of points even for large actions. Levels are verified
//! bottom-up; a residue surviving the sift is appended to every level it
//! stabilizes through, and verification restarts at its stopping level.

use num_traits::One;

use crate::exact::Int;
use crate::permgrp::Permutation;

struct Level {
    base: u32,
    /// Generators of the stabilizer of all shallower base points.
    gens: Vec<Permutation>,
    /// schreier[p] = Some((gen, parent)) reaching p from the base point;
    /// the base itself carries (u32::MAX, base).
    schreier: Vec<Option<(u32, u32)>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut schreier = vec![None; degree];
        schreier[base as usize] = Some((u32::MAX, base));
        Level {
            base,
            gens: Vec::new(),
            schreier,
            orbit: vec![base],
        }
    }

    /// Re-close the orbit under the current generator list.
    fn close_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for (gi, s) in self.gens.iter().enumerate() {
                let q = s.apply(p);
                if self.schreier[q as usize].is_none() {
                    self.schreier[q as usize] = Some((gi as u32, p));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }

    fn in_orbit(&self, p: u32) -> bool {
        self.schreier[p as usize].is_some()
    }

    /// Transversal element u with u(base) = point.
    fn transversal_element(&self, point: u32, degree: usize) -> Option<Permutation> {
        self.schreier[point as usize]?;
        let mut word = Vec::new();
        let mut p = point;
        while p != self.base {
            let (gi, parent) = self.schreier[p as usize].expect("orbit point");
            word.push(gi);
            p = parent;
        }
        let mut u = Permutation::identity(degree);
        for &gi in word.iter().rev() {
            u = self.gens[gi as usize].compose(&u);
        }
        Some(u)
    }
}

/// A base and strong generating set for a permutation group.
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Build a BSGS from generators; base points are taken from
    /// `base_hint` first (skipping points the offending residue fixes),
    /// then chosen as the smallest moved point.
    pub fn new(generators: &[Permutation], base_hint: &[u32]) -> Bsgs {
        let degree = generators.first().map_or(0, |g| g.degree());
        let mut bsgs = Bsgs {
            degree,
            levels: Vec::new(),
        };
        let mut hint = base_hint.to_vec();
        let live: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if live.is_empty() {
            return bsgs;
        }
        let first_base = Self::pick_base(&live[0], &mut hint);
        bsgs.levels.push(Level::new(first_base, degree));
        bsgs.levels[0].gens = live;
        bsgs.construct(&mut hint);
        bsgs
    }

    fn pick_base(g: &Permutation, hint: &mut Vec<u32>) -> u32 {
        loop {
            match hint.first().copied() {
                Some(b) => {
                    hint.remove(0);
                    if g.apply(b) != b {
                        return b;
                    }
                }
                None => return g.first_moved_point().expect("non-identity"),
            }
        }
    }

    /// Bottom-up verification loop.
    fn construct(&mut self, hint: &mut Vec<u32>) {
        let mut level = 0usize;
        // Level indices are verified from the current position upward;
        // additions jump verification down to the stopping level.
        loop {
            match self.verify_level(level, hint) {
                Some(j) => level = j,
                None => {
                    if level == 0 {
                        break;
                    }
                    level -= 1;
                }
            }
        }
    }

    /// Check every Schreier generator of `level`; on the first residue
    /// that does not sift, append it to levels `level+1 ..= j` and return
    /// `Some(j)`. Returns `None` when the level verifies clean.
    fn verify_level(&mut self, level: usize, hint: &mut Vec<u32>) -> Option<usize> {
        self.levels[level].close_orbit();
        let orbit_len = self.levels[level].orbit.len();
        let gen_len = self.levels[level].gens.len();
        for oi in 0..orbit_len {
            let p = self.levels[level].orbit[oi];
            let up = self.levels[level]
                .transversal_element(p, self.degree)
                .expect("orbit point");
            for gi in 0..gen_len {
                let s = self.levels[level].gens[gi].clone();
                let q = s.apply(p);
                let uq = self.levels[level]
                    .transversal_element(q, self.degree)
                    .expect("orbit closed");
                let schreier = uq.inverse().compose(&s.compose(&up));
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stop) = self.strip(&schreier, level + 1);
                if residue.is_identity() {
                    continue;
                }
                let mut stop = stop;
                if stop == self.levels.len() {
                    let base = Self::pick_base(&residue, hint);
                    self.levels.push(Level::new(base, self.degree));
                    stop = self.levels.len() - 1;
                }
                // The residue stabilizes every base point above `stop`,
                // so it is a generator of each intermediate stabilizer.
                for l in (level + 1)..=stop {
                    self.levels[l].gens.push(residue.clone());
                    self.levels[l].close_orbit();
                }
                return Some(stop);
            }
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Exact group order: the product of the basic orbit lengths.
    pub fn order(&self) -> Int {
        self.levels
            .iter()
            .fold(Int::one(), |acc, l| acc * Int::from(l.orbit.len() as u64))
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn basic_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    pub fn base_point(&self, level: usize) -> u32 {
        self.levels[level].base
    }

    /// Transversal element mapping the level's base point to `point`.
    pub fn transversal(&self, level: usize, point: u32) -> Option<Permutation> {
        self.levels[level].transversal_element(point, self.degree)
    }

    /// Sift an element through the chain starting at `from`; returns the
    /// residue and the level at which sifting stopped.
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for idx in from..self.levels.len() {
            let level = &self.levels[idx];
            let image = h.apply(level.base);
            if !level.in_orbit(image) {
                return (h, idx);
            }
            let u = level
                .transversal_element(image, self.degree)
                .expect("point in orbit");
            h = u.inverse().compose(&h);
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, _) = self.strip(g, 0);
        residue.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: Vec<u32>) -> Permutation {
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        // S4 from a transposition and a 4-cycle.
        let gens = vec![perm(vec![1, 0, 2, 3]), perm(vec![1, 2, 3, 0])];
        let bsgs = Bsgs::new(&gens, &[]);
        assert_eq!(bsgs.order(), Int::from(24));
        assert!(bsgs.contains(&perm(vec![3, 2, 1, 0])));
    }

    #[test]
    fn alternating_group_order_and_membership() {
        // A5 from two 3-cycles.
        let gens = vec![perm(vec![1, 2, 0, 3, 4]), perm(vec![0, 1, 3, 4, 2])];
        let bsgs = Bsgs::new(&gens, &[]);
        assert_eq!(bsgs.order(), Int::from(60));
        // A transposition is not in A5.
        assert!(!bsgs.contains(&perm(vec![1, 0, 2, 3, 4])));
    }

    #[test]
    fn cyclic_group() {
        let gens = vec![perm(vec![1, 2, 3, 4, 5, 6, 0])];
        let bsgs = Bsgs::new(&gens, &[]);
        assert_eq!(bsgs.order(), Int::from(7));
    }

    #[test]
    fn base_order_does_not_change_group_order() {
        let gens = vec![perm(vec![1, 0, 2, 3, 4]), perm(vec![1, 2, 3, 4, 0])];
        let a = Bsgs::new(&gens, &[]);
        let b = Bsgs::new(&gens, &[4, 2, 0]);
        assert_eq!(a.order(), b.order());
        assert_eq!(a.order(), Int::from(120));
    }

    #[test]
    fn trivial_group() {
        let gens = vec![perm(vec![0, 1, 2])];
        let bsgs = Bsgs::new(&gens, &[]);
        assert_eq!(bsgs.order(), Int::one());
        assert_eq!(bsgs.depth(), 0);
    }

    #[test]
    fn direct_product_of_cycles() {
        let g = perm(vec![1, 2, 0, 4, 5, 3]);
        let bsgs = Bsgs::new(&[g], &[]);
        assert_eq!(bsgs.order(), Int::from(3));
    }

    #[test]
    fn random_subgroups_of_s7_match_exhaustive_closure() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..12 {
            // Random pair of permutations of 7 points.
            let mut v1: Vec<u32> = (0..7).collect();
            let mut v2: Vec<u32> = (0..7).collect();
            v1.shuffle(&mut rng);
            v2.shuffle(&mut rng);
            let g1 = perm(v1);
            let g2 = perm(v2);
            let order_bsgs = Bsgs::new(&[g1.clone(), g2.clone()], &[]).order();
            // Exhaustive closure for the reference order.
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![Permutation::identity(7)];
            seen.insert(queue[0].clone());
            while let Some(x) = queue.pop() {
                for s in [&g1, &g2] {
                    let y = s.compose(&x);
                    if seen.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            assert_eq!(order_bsgs, Int::from(seen.len() as u64));
            let _ = rng.gen::<u8>();
        }
    }
}
