//! Permutation groups backed by a stabilizer chain (Schreier-Sims).
//!
//! The chain stores, per level, a base point, the strong generators fixing
//! all earlier base points, and a transversal mapping each orbit point to a
//! coset representative. Orders are exact `BigUint` products of orbit sizes.
//! Base points are chosen deterministically (smallest moved point when a
//! level is created), so chains, orders and element streams are reproducible.

use crate::perm::Permutation;
use crate::{Ctx, Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Clone)]
struct Level {
    base: u16,
    gens: Vec<Permutation>,
    /// transversal[p] maps the base point to p; `None` off the orbit.
    transversal: Vec<Option<Permutation>>,
    /// Inverses of the transversal entries, precomputed for sifting.
    transversal_inv: Vec<Option<Permutation>>,
    /// Orbit points in increasing order; drives the element stream.
    orbit: Vec<u16>,
}

impl Level {
    fn new(base: u16, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            transversal_inv: Vec::new(),
            orbit: vec![base],
        }
    }
}

/// Reusable buffers for allocation-free sifting in scan loops.
pub(crate) struct SiftScratch {
    a: Vec<u16>,
    b: Vec<u16>,
}

impl SiftScratch {
    pub(crate) fn new() -> SiftScratch {
        SiftScratch {
            a: Vec::new(),
            b: Vec::new(),
        }
    }
}

#[derive(Clone)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize) -> StabChain {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    fn with_base_hint(degree: usize, base_hint: &[u16]) -> StabChain {
        let mut chain = StabChain::new(degree);
        for &b in base_hint {
            chain.levels.push(Level::new(b, degree));
        }
        chain
    }

    /// Adds a generator and restores the strong-generation invariant:
    /// the orbit at each level is closed under every strong generator at
    /// that level or below, and every Schreier generator sifts to the
    /// identity.
    fn add_generator(&mut self, g: Permutation) {
        let mut worklist: Vec<(Permutation, usize)> = vec![(g, 0)];
        while let Some((g, level)) = worklist.pop() {
            if let Some(at) = self.sift_in(g, level) {
                // Orbits at every level <= `at` may grow; reclose them
                // deepest first so shallower Schreier generators sift
                // against up-to-date deeper levels.
                for i in (0..=at).rev() {
                    for schreier in self.close_orbit(i) {
                        worklist.push((schreier, i + 1));
                    }
                }
            }
        }
    }

    /// Strips `g` (known to fix all base points before `level`) through the
    /// chain; stores the residue as a new strong generator and returns its
    /// level, or `None` when `g` sifts to the identity.
    fn sift_in(&mut self, g: Permutation, level: usize) -> Option<usize> {
        let mut g = g;
        let mut j = level;
        loop {
            if g.is_identity() {
                return None;
            }
            if j == self.levels.len() {
                let base = g.smallest_moved_point().expect("non-identity");
                self.levels.push(Level::new(base, self.degree));
                self.levels[j].gens.push(g);
                return Some(j);
            }
            let base = self.levels[j].base;
            let image = g.apply(base);
            match &self.levels[j].transversal[image as usize] {
                Some(rep) => {
                    if image != base {
                        g = g.compose_unchecked(&rep.inverse());
                    }
                    j += 1;
                }
                None => {
                    self.levels[j].gens.push(g);
                    return Some(j);
                }
            }
        }
    }

    /// Recomputes the orbit at `level` under all strong generators at this
    /// level or deeper, and returns the Schreier generators of the closing
    /// edges for sifting one level down.
    fn close_orbit(&mut self, level: usize) -> Vec<Permutation> {
        let gens: Vec<Permutation> = self
            .levels
            .iter()
            .skip(level)
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        let mut queue: Vec<u16> = self.levels[level].orbit.clone();
        let mut head = 0;
        let mut schreier: Vec<Permutation> = Vec::new();
        let mut emitted: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let rep_x = self.levels[level].transversal[x as usize]
                .clone()
                .expect("orbit point has a representative");
            for s in &gens {
                let y = s.apply(x);
                if self.levels[level].transversal[y as usize].is_none() {
                    let rep_y = rep_x.compose_unchecked(s);
                    self.levels[level].transversal[y as usize] = Some(rep_y);
                    self.levels[level].orbit.push(y);
                    queue.push(y);
                } else {
                    // Closing edge: rep_x * s * rep_y^-1 stabilizes the base.
                    let rep_y_inv = self.levels[level].transversal[y as usize]
                        .as_ref()
                        .unwrap()
                        .inverse();
                    let cand = rep_x.compose_unchecked(s).compose_unchecked(&rep_y_inv);
                    if !cand.is_identity() && emitted.insert(cand.clone()) {
                        schreier.push(cand);
                    }
                }
            }
        }
        self.levels[level].orbit.sort_unstable();
        schreier
    }

    fn order(&self) -> BigUint {
        let mut n = BigUint::one();
        for level in &self.levels {
            n *= BigUint::from(level.orbit.len());
        }
        n
    }

    /// Precomputes transversal inverses once construction is done.
    fn freeze(&mut self) {
        for level in &mut self.levels {
            level.transversal_inv = level
                .transversal
                .iter()
                .map(|t| t.as_ref().map(|p| p.inverse()))
                .collect();
        }
    }

    /// Allocation-free membership test on a raw image vector.
    fn contains_images(&self, images: &[u16], scratch: &mut SiftScratch) -> bool {
        scratch.a.clear();
        scratch.a.extend_from_slice(images);
        for level in &self.levels {
            let image = scratch.a[level.base as usize];
            match &level.transversal_inv[image as usize] {
                Some(inv) => {
                    // current = current then inv
                    scratch.b.clear();
                    let inv_images = inv.images();
                    for &x in scratch.a.iter() {
                        scratch.b.push(inv_images[x as usize]);
                    }
                    std::mem::swap(&mut scratch.a, &mut scratch.b);
                }
                None => return false,
            }
        }
        scratch.a.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Sift: returns the residue after stripping through every level.
    /// `g` is in the group iff the residue is the identity.
    fn sift(&self, g: &Permutation) -> Permutation {
        let mut current = g.clone();
        for level in &self.levels {
            let image = current.apply(level.base);
            match &level.transversal[image as usize] {
                Some(rep) => current = current.compose_unchecked(&rep.inverse()),
                None => return current,
            }
        }
        current
    }

    fn contains(&self, g: &Permutation) -> bool {
        self.sift(g).is_identity()
    }

    fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

/// A finite permutation group given by generators, with its stabilizer
/// chain and exact order. Cheap to clone and safe to share across threads:
/// all data is immutable after construction.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
    order_u64: Option<u64>,
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::with_base_hint(degree, gens, &[])
    }

    /// Same, but seeds the base with the given points (used to read off
    /// point stabilizers from the chain).
    pub fn with_base_hint(
        degree: usize,
        gens: Vec<Permutation>,
        base_hint: &[u16],
    ) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut chain = StabChain::with_base_hint(degree, base_hint);
        let mut kept: Vec<Permutation> = Vec::new();
        let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
        for g in gens {
            if !g.is_identity() && seen.insert(g.clone()) {
                kept.push(g.clone());
                chain.add_generator(g);
            }
        }
        // Levels created by the base hint may have stayed trivial; they
        // contribute orbit size 1 and are harmless.
        chain.freeze();
        let order = chain.order();
        let order_u64 = order.to_u64();
        Ok(PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators: kept,
                chain,
                order,
                order_u64,
            }),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, vec![]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.inner.order_u64
    }

    pub fn base(&self) -> Vec<u16> {
        self.inner.chain.base()
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.order.is_one()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.commutes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Membership test by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.inner.degree {
            return Err(Error::DegreeMismatch(self.inner.degree, g.degree()));
        }
        Ok(self.inner.chain.contains(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        self.inner.chain.contains(g)
    }

    /// Allocation-free membership test for scan loops.
    pub(crate) fn contains_images(&self, images: &[u16], scratch: &mut SiftScratch) -> bool {
        self.inner.chain.contains_images(images, scratch)
    }

    /// Walks the elements with stream indices in `lo..hi`, calling `f` with
    /// the global index and the element; stops early when `f` returns
    /// `false`. Avoids the per-element clone of the public iterator.
    pub(crate) fn visit_elements_range<F>(&self, lo: u64, hi: u64, mut f: F)
    where
        F: FnMut(u64, &Permutation) -> bool,
    {
        let mut cursor = Elements::new(&self.inner.chain, lo, hi);
        if cursor.radices.is_empty() {
            if lo < hi {
                f(lo, &Permutation::identity(self.inner.degree));
            }
            return;
        }
        let mut idx = lo;
        while idx < hi {
            if cursor.acc.is_empty() {
                cursor.decode(idx);
            } else {
                cursor.advance();
            }
            let element = cursor.acc.last().expect("nonempty chain");
            if !f(idx, element) {
                return;
            }
            idx += 1;
        }
    }

    /// Orbits of the group on its points, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<u16>> {
        let n = self.inner.degree;
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n as u16 {
            if seen[start as usize] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in self.generators() {
                    let y = g.apply(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1 && self.inner.degree > 0
    }

    /// Stabilizer of a point, read off the chain (rebasing if needed).
    pub fn point_stabilizer(&self, point: u16) -> Result<PermGroup> {
        if self.inner.chain.levels.first().map(|l| l.base) != Some(point) {
            let rebased = PermGroup::with_base_hint(
                self.inner.degree,
                self.inner.generators.clone(),
                &[point],
            )?;
            return rebased.point_stabilizer(point);
        }
        let gens: Vec<Permutation> = self
            .inner
            .chain
            .levels
            .iter()
            .skip(1)
            .flat_map(|l| l.gens.iter().cloned())
            .collect();
        PermGroup::from_generators(self.inner.degree, gens)
    }

    /// Deterministic stream of all elements, in the lexicographic order of
    /// the chain's transversal digits. Fails when the order exceeds the
    /// enumeration budget.
    pub fn elements(&self, ctx: &Ctx) -> Result<Elements<'_>> {
        let n = self.order_u64().filter(|&n| n <= ctx.max_order_enum);
        match n {
            Some(n) => Ok(Elements::new(&self.inner.chain, 0, n)),
            None => Err(Error::Budget(format!(
                "element stream of a group of order {} exceeds the enumeration budget {}",
                self.inner.order, ctx.max_order_enum
            ))),
        }
    }

    /// Unbudgeted range view over the element stream; budget enforcement
    /// happens at the callers' entry points.
    #[cfg(test)]
    pub(crate) fn elements_range(&self, lo: u64, hi: u64) -> Elements<'_> {
        Elements::new(&self.inner.chain, lo, hi)
    }

    /// Deterministic pseudo-random element sampler (seeded random words).
    pub fn sampler(&self, seed: u64) -> WordSampler {
        WordSampler::new(self, seed)
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {})",
            self.inner.degree, self.inner.order
        )
    }
}

/// Streaming iterator over a contiguous index range of the element stream.
///
/// Index digits run over the per-level sorted orbits, deepest level fastest;
/// the element at a digit vector `(d_0, .., d_{k-1})` is the product
/// `u_{k-1} * ... * u_0` (deepest representative applied first). Decoding is
/// incremental: advancing usually costs one composition.
pub struct Elements<'a> {
    chain: &'a StabChain,
    radices: Vec<u64>,
    digits: Vec<u64>,
    /// acc[j] = u_j * u_{j-1} * ... * u_0
    acc: Vec<Permutation>,
    next_index: u64,
    end: u64,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabChain, lo: u64, hi: u64) -> Elements<'a> {
        let radices: Vec<u64> = chain.levels.iter().map(|l| l.orbit.len() as u64).collect();
        Elements {
            chain,
            radices,
            digits: Vec::new(),
            acc: Vec::new(),
            next_index: lo,
            end: hi,
        }
    }

    fn rep(&self, level: usize, digit: u64) -> &Permutation {
        let l = &self.chain.levels[level];
        l.transversal[l.orbit[digit as usize] as usize]
            .as_ref()
            .expect("transversal present on orbit")
    }

    fn decode(&mut self, index: u64) {
        let k = self.radices.len();
        let mut digits = vec![0u64; k];
        let mut rest = index;
        for j in (0..k).rev() {
            digits[j] = rest % self.radices[j];
            rest /= self.radices[j];
        }
        // digits[0] is the slowest (level 0), digits[k-1] the fastest.
        self.digits = digits;
        self.acc.clear();
        for j in 0..k {
            let u = self.rep(j, self.digits[j]);
            let prod = if j == 0 {
                u.clone()
            } else {
                u.compose_unchecked(&self.acc[j - 1])
            };
            self.acc.push(prod);
        }
    }

    fn advance(&mut self) {
        let k = self.radices.len();
        let mut j = k;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            self.digits[j] += 1;
            if self.digits[j] < self.radices[j] {
                break;
            }
            self.digits[j] = 0;
        }
        for level in j..k {
            let l = &self.chain.levels[level];
            let u = l.transversal[l.orbit[self.digits[level] as usize] as usize]
                .as_ref()
                .expect("transversal present on orbit");
            if level == 0 {
                self.acc[0].clone_from(u);
            } else {
                let (left, right) = self.acc.split_at_mut(level);
                right[0].assign_compose(u, &left[level - 1]);
            }
        }
    }
}

impl<'a> Iterator for Elements<'a> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next_index >= self.end {
            return None;
        }
        if self.radices.is_empty() {
            self.next_index += 1;
            return Some(Permutation::identity(self.chain.degree));
        }
        if self.acc.is_empty() {
            self.decode(self.next_index);
        } else {
            self.advance();
        }
        self.next_index += 1;
        Some(self.acc.last().expect("nonempty chain").clone())
    }
}

/// Seeded product-replacement-style random word generator.
pub struct WordSampler {
    degree: usize,
    pool: Vec<Permutation>,
    rng: ChaCha8Rng,
}

impl WordSampler {
    fn new(group: &PermGroup, seed: u64) -> WordSampler {
        let mut pool: Vec<Permutation> = Vec::new();
        if group.generators().is_empty() {
            pool.push(Permutation::identity(group.degree()));
        } else {
            while pool.len() < 8 {
                for g in group.generators() {
                    pool.push(g.clone());
                }
            }
        }
        let mut sampler = WordSampler {
            degree: group.degree(),
            pool,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..64 {
            sampler.step();
        }
        sampler
    }

    fn step(&mut self) {
        let n = self.pool.len();
        if n < 2 {
            return;
        }
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) {
            self.pool[j].clone()
        } else {
            self.pool[j].inverse()
        };
        self.pool[i] = self.pool[i].compose_unchecked(&other);
    }

    pub fn next_element(&mut self) -> Permutation {
        if self.pool.len() < 2 {
            return Permutation::identity(self.degree);
        }
        self.step();
        let i = self.rng.gen_range(0..self.pool.len());
        self.pool[i].clone()
    }
}

/// A subgroup handle: a group together with the ambient group it sits in.
#[derive(Clone)]
pub struct Subgroup {
    parent: PermGroup,
    group: PermGroup,
}

impl Subgroup {
    /// Checks that every generator of `group` lies in `parent`.
    pub fn new(parent: PermGroup, group: PermGroup) -> Result<Subgroup> {
        if parent.degree() != group.degree() {
            return Err(Error::DegreeMismatch(parent.degree(), group.degree()));
        }
        for g in group.generators() {
            if !parent.contains_unchecked(g) {
                return Err(Error::NotSubgroup);
            }
        }
        Ok(Subgroup { parent, group })
    }

    /// Skips the membership validation; for internal construction where the
    /// generators are known to lie in the parent.
    pub(crate) fn new_unchecked(parent: PermGroup, group: PermGroup) -> Subgroup {
        Subgroup { parent, group }
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> &BigUint {
        self.group.order()
    }

    /// The conjugate subgroup `H^g` with generators `g^-1 h g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Subgroup> {
        if !self.parent.contains(g)? {
            return Err(Error::NotMember);
        }
        let gens = self
            .group
            .generators()
            .iter()
            .map(|h| h.conjugate_by(g))
            .collect::<Result<Vec<_>>>()?;
        let group = PermGroup::from_generators(self.parent.degree(), gens)?;
        Ok(Subgroup {
            parent: self.parent.clone(),
            group,
        })
    }

    /// Two-sided containment test via generator membership plus order.
    pub fn same_subgroup(&self, other: &Subgroup) -> bool {
        self.group.order() == other.group.order()
            && other
                .group
                .generators()
                .iter()
                .all(|g| self.group.contains_unchecked(g))
    }

    /// Whole group as a subgroup of itself.
    pub fn full(group: &PermGroup) -> Subgroup {
        Subgroup {
            parent: group.clone(),
            group: group.clone(),
        }
    }

    pub fn trivial(parent: &PermGroup) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            group: PermGroup::trivial(parent.degree()),
        }
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} in order {})",
            self.group.order(),
            self.parent.order()
        )
    }
}
