//! Backtrack searches in a permutation group given by a BSGS: centralizer
//! orders, twisted conjugation cosets and normalizers of cyclic subgroups.
//!
//! The search walks the coset tree of the stabilizer chain. Choosing the
//! image of one point propagates along the cycles of the conjugated
//! element (`h(g(x)) = t(h(x))` for target `t`). Two prunings keep the
//! tree near the size of the result: a base ordering adapted to the
//! cycles of `g` (so propagation forces most base images) and, when the
//! points carry a pairwise invariant such as inner products of shell
//! vectors, consistency of the invariant under the partial map.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::Int;
use crate::permgrp::schreier::Bsgs;
use crate::permgrp::Permutation;

/// Base-point ordering adapted to the cycles of `g`: points are listed
/// cycle by cycle, so once the image of a cycle's first point is chosen,
/// the images of the remaining base points in that cycle are forced by
/// propagation.
pub fn cycle_adapted_base(g: &Permutation) -> Vec<u32> {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut base = Vec::with_capacity(n);
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut x = start;
        loop {
            seen[x as usize] = true;
            base.push(x);
            x = g.apply(x);
            if x == start {
                break;
            }
        }
    }
    base
}

/// Partial bijection with undo support.
struct PartialMap {
    fwd: Vec<i64>,
    bwd: Vec<i64>,
    trail: Vec<u32>,
}

impl PartialMap {
    fn new(n: usize) -> Self {
        PartialMap {
            fwd: vec![-1; n],
            bwd: vec![-1; n],
            trail: Vec::new(),
        }
    }

    fn get(&self, x: u32) -> Option<u32> {
        let v = self.fwd[x as usize];
        (v >= 0).then_some(v as u32)
    }

    fn checkpoint(&self) -> usize {
        self.trail.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.fwd[x as usize];
            self.fwd[x as usize] = -1;
            self.bwd[y as usize] = -1;
        }
    }

    fn assign(&mut self, x: u32, y: u32) -> bool {
        if let Some(old) = self.get(x) {
            return old == y;
        }
        if self.bwd[y as usize] >= 0 {
            return false;
        }
        self.fwd[x as usize] = y as i64;
        self.bwd[y as usize] = x as i64;
        self.trail.push(x);
        true
    }
}

/// Stabilizer-chain data with explicit transversal elements and their
/// inverses, materialized once per group for fast backtracking.
pub struct Searcher {
    degree: usize,
    bases: Vec<u32>,
    orbits: Vec<Vec<u32>>,
    trans: Vec<Vec<Option<Permutation>>>,
    trans_inv: Vec<Vec<Option<Permutation>>>,
    order: Int,
    /// Optional pairwise point invariant preserved by every group element
    /// (for shell actions: the inner products of the vectors).
    products: Option<Vec<Vec<i64>>>,
}

impl Searcher {
    pub fn new(bsgs: &Bsgs) -> Searcher {
        let degree = bsgs.degree();
        let depth = bsgs.depth();
        let mut bases = Vec::with_capacity(depth);
        let mut orbits = Vec::with_capacity(depth);
        let mut trans = Vec::with_capacity(depth);
        let mut trans_inv = Vec::with_capacity(depth);
        for level in 0..depth {
            bases.push(bsgs.base_point(level));
            let orbit = bsgs.basic_orbit(level).to_vec();
            let mut t: Vec<Option<Permutation>> = vec![None; degree];
            let mut ti: Vec<Option<Permutation>> = vec![None; degree];
            for &p in &orbit {
                let u = bsgs.transversal(level, p).expect("orbit point");
                ti[p as usize] = Some(u.inverse());
                t[p as usize] = Some(u);
            }
            orbits.push(orbit);
            trans.push(t);
            trans_inv.push(ti);
        }
        Searcher {
            degree,
            bases,
            orbits,
            trans,
            trans_inv,
            order: bsgs.order(),
            products: None,
        }
    }

    /// Install a pairwise invariant `products[x][y]` that every group
    /// element preserves; used to prune inconsistent partial maps early.
    pub fn set_pair_invariant(&mut self, products: Vec<Vec<i64>>) {
        assert_eq!(products.len(), self.degree);
        self.products = Some(products);
    }

    pub fn group_order(&self) -> &Int {
        &self.order
    }

    fn depth(&self) -> usize {
        self.bases.len()
    }

    /// Count (or detect) elements `h` of the group with `h g = target h`.
    pub fn conjugating_count(
        &self,
        g: &Permutation,
        target: &Permutation,
        stop_first: bool,
    ) -> u64 {
        let mut state = State {
            searcher: self,
            g,
            target,
            map: PartialMap::new(self.degree),
            anchors: Vec::new(),
            count: 0,
            stop_first,
        };
        let id = Permutation::identity(self.degree);
        state.dfs(0, &id.clone(), &id);
        state.count
    }

    /// Exact centralizer order of a group element.
    pub fn centralizer_order(&self, g: &Permutation) -> Int {
        Int::from(self.conjugating_count(g, g, false))
    }

    /// Centralizer orders of `g` in the full group and in the quotient by
    /// the central involution `z`: the preimage of the quotient
    /// centralizer is `{h : h g h^{-1} in {g, zg}}`.
    pub fn centralizer_orders_mod_center(
        &self,
        g: &Permutation,
        z: &Permutation,
    ) -> Result<CentralizerOrders> {
        let full = self.conjugating_count(g, g, false);
        let zg = z.compose(g);
        let twisted = if zg == *g {
            0
        } else {
            u64::from(self.conjugating_count(g, &zg, true) > 0)
        };
        let preimage = full * (1 + twisted);
        if !preimage.is_multiple_of(2) {
            return Err(Error::Inconsistency(
                "quotient centralizer preimage has odd order".into(),
            ));
        }
        Ok(CentralizerOrders {
            full: Int::from(full),
            modulo_center: Int::from(preimage / 2),
        })
    }

    /// Normalizer order of the cyclic subgroup generated by `g`.
    pub fn normalizer_of_cyclic_order(&self, g: &Permutation) -> Int {
        let centralizer = self.conjugating_count(g, g, false);
        let n = g.order();
        let mut cosets = Int::one();
        for k in 2..n {
            if num_integer::gcd(k, n) != 1 {
                continue;
            }
            let target = g.pow(k);
            if self.conjugating_count(g, &target, true) > 0 {
                cosets += Int::one();
            }
        }
        Int::from(centralizer) * cosets
    }
}

struct State<'a> {
    searcher: &'a Searcher,
    g: &'a Permutation,
    target: &'a Permutation,
    map: PartialMap,
    /// Base-point assignments made so far, for invariant consistency.
    anchors: Vec<(u32, u32)>,
    count: u64,
    stop_first: bool,
}

impl<'a> State<'a> {
    fn invariant_ok(&self, x: u32, y: u32) -> bool {
        let Some(products) = &self.searcher.products else {
            return true;
        };
        let px = &products[x as usize];
        let py = &products[y as usize];
        if px[x as usize] != py[y as usize] {
            return false;
        }
        self.anchors
            .iter()
            .all(|&(a, ai)| px[a as usize] == py[ai as usize])
    }

    /// Propagate `x -> y` along the entire g-cycle of x.
    fn assign_cycle(&mut self, x: u32, y: u32) -> bool {
        if self.g.cycle_length(x) != self.target.cycle_length(y) {
            return false;
        }
        let (mut cx, mut cy) = (x, y);
        loop {
            if !self.invariant_ok(cx, cy) || !self.map.assign(cx, cy) {
                return false;
            }
            cx = self.g.apply(cx);
            cy = self.target.apply(cy);
            if cx == x {
                break;
            }
        }
        true
    }

    fn dfs(&mut self, level: usize, h: &Permutation, h_inv: &Permutation) {
        if self.stop_first && self.count > 0 {
            return;
        }
        if level == self.searcher.depth() {
            let lhs = h.compose(self.g);
            let rhs = self.target.compose(h);
            if lhs == rhs {
                self.count += 1;
            }
            return;
        }
        let base = self.searcher.bases[level];
        if let Some(required) = self.map.get(base) {
            // The image of this base point is forced; at most one branch.
            let delta = h_inv.apply(required);
            let Some(u) = self.searcher.trans[level][delta as usize].as_ref() else {
                return;
            };
            let ui = self.searcher.trans_inv[level][delta as usize]
                .as_ref()
                .unwrap();
            let mark = self.map.checkpoint();
            if self.assign_cycle(base, required) {
                self.anchors.push((base, required));
                self.dfs(level + 1, &h.compose(u), &ui.compose(h_inv));
                self.anchors.pop();
            }
            self.map.rollback(mark);
            return;
        }
        for idx in 0..self.searcher.orbits[level].len() {
            if self.stop_first && self.count > 0 {
                return;
            }
            let delta = self.searcher.orbits[level][idx];
            let candidate = h.apply(delta);
            let mark = self.map.checkpoint();
            if self.assign_cycle(base, candidate) {
                let u = self.searcher.trans[level][delta as usize]
                    .as_ref()
                    .unwrap();
                let ui = self.searcher.trans_inv[level][delta as usize]
                    .as_ref()
                    .unwrap();
                self.anchors.push((base, candidate));
                self.dfs(level + 1, &h.compose(u), &ui.compose(h_inv));
                self.anchors.pop();
            }
            self.map.rollback(mark);
        }
    }
}

/// Centralizer orders in the full group and modulo a central involution.
pub struct CentralizerOrders {
    pub full: Int,
    pub modulo_center: Int,
}

/// Exact order of the centralizer of `g` in the group described by `bsgs`.
pub fn centralizer_order(bsgs: &Bsgs, g: &Permutation) -> Result<Int> {
    if !bsgs.contains(g) {
        return Err(Error::Precondition(
            "element is not in the group spanned by the generators".into(),
        ));
    }
    Ok(Searcher::new(bsgs).centralizer_order(g))
}

/// True when some group element conjugates `g` onto `target`.
pub fn are_conjugate(bsgs: &Bsgs, g: &Permutation, target: &Permutation) -> Result<bool> {
    if !bsgs.contains(g) || !bsgs.contains(target) {
        return Err(Error::Precondition(
            "element is not in the group spanned by the generators".into(),
        ));
    }
    Ok(Searcher::new(bsgs).conjugating_count(g, target, true) > 0)
}

/// See [`Searcher::centralizer_orders_mod_center`].
pub fn centralizer_orders_mod_center(
    bsgs: &Bsgs,
    g: &Permutation,
    z: &Permutation,
) -> Result<CentralizerOrders> {
    if !bsgs.contains(g) {
        return Err(Error::Precondition(
            "element is not in the group spanned by the generators".into(),
        ));
    }
    if z.is_identity() || !bsgs.contains(z) {
        return Err(Error::Precondition(
            "central element must be a nontrivial group element".into(),
        ));
    }
    Searcher::new(bsgs).centralizer_orders_mod_center(g, z)
}

/// Exact order of the normalizer of the cyclic subgroup generated by `g`.
pub fn normalizer_of_cyclic_order(bsgs: &Bsgs, g: &Permutation) -> Result<Int> {
    if !bsgs.contains(g) {
        return Err(Error::Precondition(
            "element is not in the group spanned by the generators".into(),
        ));
    }
    Ok(Searcher::new(bsgs).normalizer_of_cyclic_order(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: Vec<u32>) -> Permutation {
        Permutation::from_images(v).unwrap()
    }

    fn s4() -> Bsgs {
        Bsgs::new(&[perm(vec![1, 0, 2, 3]), perm(vec![1, 2, 3, 0])], &[])
    }

    #[test]
    fn centralizer_in_s4() {
        let bsgs = s4();
        let t = perm(vec![1, 0, 2, 3]);
        assert_eq!(centralizer_order(&bsgs, &t).unwrap(), Int::from(4));
        let c4 = perm(vec![1, 2, 3, 0]);
        assert_eq!(centralizer_order(&bsgs, &c4).unwrap(), Int::from(4));
        let c3 = perm(vec![1, 2, 0, 3]);
        assert_eq!(centralizer_order(&bsgs, &c3).unwrap(), Int::from(3));
    }

    #[test]
    fn centralizer_of_identity_is_whole_group() {
        let bsgs = s4();
        let id = Permutation::identity(4);
        assert_eq!(centralizer_order(&bsgs, &id).unwrap(), Int::from(24));
    }

    #[test]
    fn conjugacy_probe() {
        let bsgs = s4();
        let a = perm(vec![1, 0, 2, 3]);
        let b = perm(vec![0, 1, 3, 2]);
        let c = perm(vec![1, 2, 0, 3]);
        assert!(are_conjugate(&bsgs, &a, &b).unwrap());
        assert!(!are_conjugate(&bsgs, &a, &c).unwrap());
    }

    #[test]
    fn normalizer_of_cyclic_subgroups_in_s4() {
        let bsgs = s4();
        let c4 = perm(vec![1, 2, 3, 0]);
        assert_eq!(
            normalizer_of_cyclic_order(&bsgs, &c4).unwrap(),
            Int::from(8)
        );
        let c3 = perm(vec![1, 2, 0, 3]);
        assert_eq!(
            normalizer_of_cyclic_order(&bsgs, &c3).unwrap(),
            Int::from(6)
        );
    }

    #[test]
    fn quotient_centralizer_with_central_involution() {
        // C2 x S3 on 2 + 3 points: z swaps the first two points and is
        // central. g = 3-cycle on the last three points.
        let z = perm(vec![1, 0, 2, 3, 4]);
        let s = perm(vec![0, 1, 3, 2, 4]);
        let c = perm(vec![0, 1, 3, 4, 2]);
        let bsgs = Bsgs::new(&[z.clone(), s, c.clone()], &[]);
        assert_eq!(bsgs.order(), Int::from(12));
        let orders = centralizer_orders_mod_center(&bsgs, &c, &z).unwrap();
        // C(c) = <z> x <c> has order 6; zc moves the first two points so
        // it is not conjugate to c, and the quotient centralizer is C3.
        assert_eq!(orders.full, Int::from(6));
        assert_eq!(orders.modulo_center, Int::from(3));
    }

    #[test]
    fn pair_invariant_prunes_consistently() {
        // S4 acting on 4 points with a fake invariant that distinguishes
        // point 3 from the others: only permutations fixing 3 remain
        // consistent, and the centralizer count must be unchanged for an
        // element fixing 3 anyway.
        let bsgs = s4();
        let c3 = perm(vec![1, 2, 0, 3]);
        let mut searcher = Searcher::new(&bsgs);
        let mut products = vec![vec![0i64; 4]; 4];
        for i in 0..4 {
            products[i][i] = if i == 3 { 7 } else { 1 };
        }
        searcher.set_pair_invariant(products);
        assert_eq!(searcher.centralizer_order(&c3), Int::from(3));
    }

    #[test]
    fn rejects_foreign_elements() {
        let a5 = Bsgs::new(&[perm(vec![1, 2, 0, 3, 4]), perm(vec![0, 1, 3, 4, 2])], &[]);
        let t = perm(vec![1, 0, 2, 3, 4]);
        assert!(centralizer_order(&a5, &t).is_err());
    }
}
