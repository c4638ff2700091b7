//! Sylow subgroups, normalizers, centralizers, centers, reality tests,
//! extended centralizers, normal closures, derived series, and the
//! nilpotent-Hall-pair search.
//!
//! Two complementary engines drive everything here:
//!
//! * streamed full-group scans with generator-conjugation pruning, for
//!   groups within the enumeration budget;
//! * conjugacy-orbit machinery (orbit-stabilizer for element centralizers,
//!   cycle-structure transporter enumeration for reality and cyclic
//!   normalizers, p-central localization for Sylow subgroups) which keeps
//!   the large catalog groups affordable.
//!
//! Scans may run chunked over a thread pool; hits are merged back in
//! stream order, so results are identical to a sequential scan.

use crate::group::SiftScratch;
use crate::perm::Permutation;
use crate::{Ctx, Error, PermGroup, Result, Subgroup};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

const SCAN_CHUNK: u64 = 8192;

fn budgeted_order(g: &PermGroup, ctx: &Ctx, what: &str) -> Result<u64> {
    match g.order_u64() {
        Some(n) if n <= ctx.max_order_enum => Ok(n),
        _ => Err(Error::Budget(format!(
            "{} over a group of order {} exceeds the enumeration budget {}",
            what,
            g.order(),
            ctx.max_order_enum
        ))),
    }
}

/// Exponent of `p` in `n`.
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Per-thread scratch space for scan loops.
pub(crate) struct ScanBufs {
    sift: SiftScratch,
    tmp: Vec<u16>,
}

impl ScanBufs {
    fn new() -> ScanBufs {
        ScanBufs {
            sift: SiftScratch::new(),
            tmp: Vec::new(),
        }
    }
}

/// Streamed scan collecting the subgroup of all elements passing `test`.
/// `test` must define a subgroup; `seed` elements are assumed members.
fn scan_subgroup<F>(g: &PermGroup, seed: Vec<Permutation>, test: F, ctx: &Ctx, what: &str) -> Result<PermGroup>
where
    F: Fn(&Permutation, &mut ScanBufs) -> bool + Sync,
{
    let n = budgeted_order(g, ctx, what)?;
    let degree = g.degree();
    let mut k = PermGroup::from_generators(degree, seed)?;
    let threads = rayon::current_num_threads().max(1) as u64;
    let superblock = SCAN_CHUNK * threads * 4;
    let mut start = 0u64;
    while start < n {
        if k.order() == g.order() {
            break;
        }
        let end = (start + superblock).min(n);
        let chunks: Vec<(u64, u64)> = (start..end)
            .step_by(SCAN_CHUNK as usize)
            .map(|lo| (lo, (lo + SCAN_CHUNK).min(end)))
            .collect();
        let snapshot = k.clone();
        let hits: Vec<Vec<(u64, Permutation)>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut bufs = ScanBufs::new();
                let mut found = Vec::new();
                g.visit_elements_range(lo, hi, |idx, e| {
                    if !snapshot.contains_images(e.images(), &mut bufs.sift)
                        && test(e, &mut bufs)
                    {
                        found.push((idx, e.clone()));
                    }
                    true
                });
                found
            })
            .collect();
        for block in hits {
            for (_, e) in block {
                if !k.contains_unchecked(&e) {
                    let mut gens = k.generators().to_vec();
                    gens.push(e);
                    k = PermGroup::from_generators(degree, gens)?;
                }
            }
        }
        start = end;
    }
    Ok(k)
}

/// First element (in stream order) for which `test` produces a value.
fn scan_find_first<T, F>(g: &PermGroup, test: F, ctx: &Ctx, what: &str) -> Result<Option<T>>
where
    T: Send,
    F: Fn(&Permutation, &mut ScanBufs) -> Option<T> + Sync,
{
    let n = budgeted_order(g, ctx, what)?;
    let threads = rayon::current_num_threads().max(1) as u64;
    let superblock = SCAN_CHUNK * threads * 4;
    let mut start = 0u64;
    while start < n {
        let end = (start + superblock).min(n);
        let chunks: Vec<(u64, u64)> = (start..end)
            .step_by(SCAN_CHUNK as usize)
            .map(|lo| (lo, (lo + SCAN_CHUNK).min(end)))
            .collect();
        let found: Vec<Option<(u64, T)>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut bufs = ScanBufs::new();
                let mut hit = None;
                g.visit_elements_range(lo, hi, |idx, e| match test(e, &mut bufs) {
                    Some(t) => {
                        hit = Some((idx, t));
                        false
                    }
                    None => true,
                });
                hit
            })
            .collect();
        if let Some((_, t)) = found.into_iter().flatten().min_by_key(|(idx, _)| *idx) {
            return Ok(Some(t));
        }
        start = end;
    }
    Ok(None)
}

/// Does `e` normalize `h`? Tests membership of each conjugated generator,
/// bailing out on the first failure.
fn normalizes(h: &PermGroup, e: &Permutation, bufs: &mut ScanBufs) -> bool {
    let e_images = e.images();
    for gen in h.generators() {
        bufs.tmp.clear();
        bufs.tmp.resize(e_images.len(), 0);
        let g_images = gen.images();
        for x in 0..e_images.len() {
            // (e^-1 gen e)(e(x)) = e(gen(x))
            bufs.tmp[e_images[x] as usize] = e_images[g_images[x] as usize];
        }
        if !h.contains_images(&bufs.tmp, &mut bufs.sift) {
            return false;
        }
    }
    true
}

fn centralizes(h_gens: &[Permutation], e: &Permutation) -> bool {
    h_gens.iter().all(|g| g.commutes_with(e))
}

/// Outcome of a conjugacy-orbit walk started at `z`.
enum ClassWalk {
    /// Class fully enumerated without meeting the target.
    Complete {
        /// Conjugates in BFS order, each with a transporter from `z`.
        orbit: Vec<(Permutation, Permutation)>,
    },
    /// Target met: a `u` with `z^u = target`.
    Found(Permutation),
    /// Class larger than the cap.
    Capped,
}

/// BFS over the conjugates of `z` under the generators of `g`.
fn class_walk(g: &PermGroup, z: &Permutation, target: Option<&Permutation>, cap: u64) -> ClassWalk {
    let identity = Permutation::identity(g.degree());
    if target == Some(z) {
        return ClassWalk::Found(identity);
    }
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut orbit: Vec<(Permutation, Permutation)> = vec![(z.clone(), identity)];
    index.insert(z.clone(), 0);
    let mut head = 0;
    while head < orbit.len() {
        let (w, u) = orbit[head].clone();
        head += 1;
        for s in g.generators() {
            let w2 = w.conjugate_by(s).expect("same degree");
            if index.contains_key(&w2) {
                continue;
            }
            let u2 = u.compose_unchecked(s);
            if target == Some(&w2) {
                return ClassWalk::Found(u2);
            }
            if orbit.len() as u64 >= cap {
                return ClassWalk::Capped;
            }
            index.insert(w2.clone(), orbit.len());
            orbit.push((w2, u2));
        }
    }
    ClassWalk::Complete { orbit }
}

/// Size of the centralizer of `z` in the full symmetric group, i.e. the
/// number of cycle-structure-compatible conjugators for any fixed target.
fn sym_centralizer_order(z: &Permutation) -> BigUint {
    let mut by_len: HashMap<usize, u32> = HashMap::new();
    let mut moved = 0usize;
    for c in z.cycles() {
        *by_len.entry(c.len()).or_insert(0) += 1;
        moved += c.len();
    }
    let fixed = z.degree() - moved;
    if fixed > 0 {
        by_len.insert(1, fixed as u32);
    }
    let mut total = BigUint::one();
    for (len, count) in by_len {
        for i in 1..=count {
            total *= BigUint::from(i);
        }
        total *= BigUint::from(len).pow(count);
    }
    total
}

/// Cycles of `z` including fixed points as 1-cycles, grouped by length.
fn cycles_with_fixed(z: &Permutation) -> Vec<Vec<u16>> {
    let mut cycles = z.cycles();
    for f in z.fixed_points() {
        cycles.push(vec![f]);
    }
    cycles.sort_by_key(|c| (c.len(), c[0]));
    cycles
}

/// Exhaustive search for `u in G` with `z^u = w`, enumerating every
/// conjugator in the ambient symmetric group compatible with the cycle
/// structures. Complete: `Ok(None)` proves there is no such element of
/// `g`. Errors when the candidate count exceeds `cap`.
fn transporter_search(
    g: &PermGroup,
    z: &Permutation,
    w: &Permutation,
    cap: u64,
) -> Result<Option<Permutation>> {
    if z.degree() != w.degree() {
        return Err(Error::DegreeMismatch(z.degree(), w.degree()));
    }
    let count = sym_centralizer_order(z);
    if count > BigUint::from(cap) {
        return Err(Error::Budget(format!(
            "transporter search would enumerate {} candidates (cap {})",
            count, cap
        )));
    }
    let zc = cycles_with_fixed(z);
    let wc = cycles_with_fixed(w);
    let type_of = |cs: &[Vec<u16>]| {
        let mut t: Vec<usize> = cs.iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    };
    if type_of(&zc) != type_of(&wc) {
        return Ok(None); // not even conjugate in Sym
    }
    let degree = z.degree();
    let mut images = vec![0u16; degree];
    let mut used = vec![false; wc.len()];
    let mut scratch = SiftScratch::new();

    fn rec(
        g: &PermGroup,
        zc: &[Vec<u16>],
        wc: &[Vec<u16>],
        used: &mut [bool],
        images: &mut [u16],
        scratch: &mut SiftScratch,
        at: usize,
    ) -> Option<Permutation> {
        if at == zc.len() {
            if g.contains_images(images, scratch) {
                return Some(Permutation::from_raw(images.to_vec()));
            }
            return None;
        }
        let cycle = &zc[at];
        for (ti, tcycle) in wc.iter().enumerate() {
            if used[ti] || tcycle.len() != cycle.len() {
                continue;
            }
            used[ti] = true;
            for shift in 0..cycle.len() {
                for (i, &pt) in cycle.iter().enumerate() {
                    images[pt as usize] = tcycle[(i + shift) % tcycle.len()];
                }
                if let Some(hit) = rec(g, zc, wc, used, images, scratch, at + 1) {
                    used[ti] = false;
                    return Some(hit);
                }
            }
            used[ti] = false;
        }
        None
    }

    Ok(rec(g, &zc, &wc, &mut used, &mut images, &mut scratch, 0))
}

/// Centralizer of an element through the orbit-stabilizer theorem:
/// walk the conjugacy class, then assemble Schreier generators until the
/// known order |G| / |class| is reached. `None` when the class is capped.
fn centralizer_element_orbit(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<Option<PermGroup>> {
    let orbit = match class_walk(g, z, None, ctx.max_class_size) {
        ClassWalk::Complete { orbit } => orbit,
        ClassWalk::Capped => return Ok(None),
        ClassWalk::Found(_) => unreachable!("no target supplied"),
    };
    let size = BigUint::from(orbit.len());
    let expected = g.order() / &size;
    let index: HashMap<&Permutation, usize> =
        orbit.iter().enumerate().map(|(i, (w, _))| (w, i)).collect();
    let mut c = PermGroup::trivial(g.degree());
    'outer: for (w, u) in &orbit {
        for s in g.generators() {
            let w2 = w.conjugate_by(s).expect("same degree");
            let u2 = &orbit[index[&w2]].1;
            // u * s * u2^-1 stabilizes z under conjugation.
            let schreier = u.compose_unchecked(s).compose_unchecked(&u2.inverse());
            if !c.contains_unchecked(&schreier) {
                let mut gens = c.generators().to_vec();
                gens.push(schreier);
                c = PermGroup::from_generators(g.degree(), gens)?;
                if c.order() == &expected {
                    break 'outer;
                }
            }
        }
    }
    if c.order() != &expected {
        return Err(Error::Invalid(format!(
            "schreier generators gave a stabilizer of order {} instead of {}",
            c.order(),
            expected
        )));
    }
    Ok(Some(c))
}

/// Normalizer of a cyclic subgroup via power-map transporters: `N_G(<z>)`
/// is the union over generators `z^k` of the transporter cosets, all
/// reachable by the cycle-structure search. `None` when inapplicable
/// within the cap.
fn cyclic_normalizer(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<Option<PermGroup>> {
    let count = sym_centralizer_order(z);
    if count > BigUint::from(ctx.transporter_cap) {
        return Ok(None);
    }
    let m = z.order();
    let degree = g.degree();
    // Complete centralizer first: every symmetric-group conjugator fixing z
    // that lies in G. Collected incrementally to keep the generator list
    // short.
    let zc = cycles_with_fixed(z);
    let mut c = PermGroup::from_generators(degree, vec![z.clone()])?;
    {
        let mut used = vec![false; zc.len()];
        let mut images = vec![0u16; degree];
        let mut scratch = SiftScratch::new();
        collect_centralizer(
            g, &zc, &mut used, &mut images, &mut scratch, 0, &mut c, degree,
        )?;
    }
    let mut n = c.clone();
    for k in 2..m {
        if num_integer::gcd(k, m) != 1 {
            continue;
        }
        let w = z.pow(k);
        if let Some(u) = transporter_search(g, z, &w, ctx.transporter_cap)? {
            if !n.contains_unchecked(&u) {
                let mut gens = n.generators().to_vec();
                gens.push(u);
                n = PermGroup::from_generators(degree, gens)?;
            }
        }
    }
    Ok(Some(n))
}

/// Enumerates all Sym-conjugators fixing `z` (target = z itself) and grows
/// `c` by those lying in `g`.
#[allow(clippy::too_many_arguments)]
fn collect_centralizer(
    g: &PermGroup,
    zc: &[Vec<u16>],
    used: &mut [bool],
    images: &mut [u16],
    scratch: &mut SiftScratch,
    at: usize,
    c: &mut PermGroup,
    degree: usize,
) -> Result<()> {
    if at == zc.len() {
        if !c.contains_images(images, scratch) && g.contains_images(images, scratch) {
            let mut gens = c.generators().to_vec();
            gens.push(Permutation::from_raw(images.to_vec()));
            *c = PermGroup::from_generators(degree, gens)?;
        }
        return Ok(());
    }
    let cycle = &zc[at];
    for ti in 0..zc.len() {
        if used[ti] || zc[ti].len() != cycle.len() {
            continue;
        }
        used[ti] = true;
        for shift in 0..cycle.len() {
            for (i, &pt) in cycle.iter().enumerate() {
                images[pt as usize] = zc[ti][(i + shift) % cycle.len()];
            }
            collect_centralizer(g, zc, used, images, scratch, at + 1, c, degree)?;
        }
        used[ti] = false;
    }
    Ok(())
}

/// Common fixed points of all generators of `h`.
fn common_fixed_points(h: &PermGroup) -> Vec<u16> {
    (0..h.degree() as u16)
        .filter(|&x| h.generators().iter().all(|g| g.apply(x) == x))
        .collect()
}

fn normalizer_group(g: &PermGroup, h: &PermGroup, ctx: &Ctx) -> Result<PermGroup> {
    if h.is_trivial() || h.order() == g.order() {
        return Ok(g.clone());
    }
    // Cyclic fast path: single-generator subgroups with few compatible
    // conjugators.
    if h.generators().len() == 1 {
        if let Some(n) = cyclic_normalizer(g, &h.generators()[0], ctx)? {
            return Ok(n);
        }
    }
    if g.order_u64().is_some_and(|n| n <= ctx.max_order_enum) {
        let h_for_test = h.clone();
        return scan_subgroup(
            g,
            h.generators().to_vec(),
            move |e, bufs| normalizes(&h_for_test, e, bufs),
            ctx,
            "normalizer scan",
        );
    }
    // The normalizer permutes the fixed points of H; with exactly one
    // fixed point it lives in that point stabilizer.
    let fixed = common_fixed_points(h);
    if fixed.len() == 1 {
        let stab = g.point_stabilizer(fixed[0])?;
        if stab.order() < g.order() {
            return normalizer_group(&stab, h, ctx);
        }
    }
    Err(Error::Budget(format!(
        "normalizer in a group of order {} exceeds the enumeration budget {}",
        g.order(),
        ctx.max_order_enum
    )))
}

/// `N_G(H)`, by streamed scan with generator-conjugation pruning, with a
/// transporter-based fast path for cyclic `H`.
pub fn normalizer(g: &PermGroup, h: &Subgroup, ctx: &Ctx) -> Result<Subgroup> {
    let hg = reparent(g, h)?;
    let n = normalizer_group(g, &hg, ctx)?;
    Ok(Subgroup::new_unchecked(g.clone(), n))
}

fn reparent(g: &PermGroup, h: &Subgroup) -> Result<PermGroup> {
    if g.degree() != h.group().degree() {
        return Err(Error::DegreeMismatch(g.degree(), h.group().degree()));
    }
    for x in h.group().generators() {
        if !g.contains_unchecked(x) {
            return Err(Error::NotSubgroup);
        }
    }
    Ok(h.group().clone())
}

fn centralizer_group(g: &PermGroup, h: &PermGroup, ctx: &Ctx) -> Result<PermGroup> {
    centralizer_of_gens(g, h.generators(), ctx)
}

/// `C_G(<gens>)`, peeling one generator at a time through the
/// orbit-stabilizer route when the ambient group is too large to scan.
fn centralizer_of_gens(g: &PermGroup, gens: &[Permutation], ctx: &Ctx) -> Result<PermGroup> {
    let gens: Vec<Permutation> = gens.iter().filter(|x| !x.is_identity()).cloned().collect();
    match gens.len() {
        0 => return Ok(g.clone()),
        1 => return centralizer_element_group(g, &gens[0], ctx),
        _ => {}
    }
    if g.order_u64().is_some_and(|n| n <= ctx.max_order_enum) {
        let test_gens = gens.clone();
        return scan_subgroup(
            g,
            vec![],
            move |e, _| centralizes(&test_gens, e),
            ctx,
            "centralizer scan",
        );
    }
    // Cut down to the centralizer of the first generator, inside which the
    // remaining generators are handled recursively.
    let first = centralizer_element_group(g, &gens[0], ctx)?;
    centralizer_of_gens(&first, &gens[1..], ctx)
}

fn centralizer_element_group(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<PermGroup> {
    if z.is_identity() {
        return Ok(g.clone());
    }
    if let Some(c) = centralizer_element_orbit(g, z, ctx)? {
        return Ok(c);
    }
    let z = z.clone();
    scan_subgroup(
        g,
        vec![z.clone()],
        move |e, _| z.commutes_with(e),
        ctx,
        "element centralizer scan",
    )
}

/// `C_G(H)`: everything commuting with every generator of `H`.
pub fn centralizer(g: &PermGroup, h: &Subgroup, ctx: &Ctx) -> Result<Subgroup> {
    let hg = reparent(g, h)?;
    let c = centralizer_group(g, &hg, ctx)?;
    Ok(Subgroup::new_unchecked(g.clone(), c))
}

/// `C_G(z)`, the centralizer of a single element.
pub fn centralizer_element(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<Subgroup> {
    if !g.contains(z)? {
        return Err(Error::NotMember);
    }
    let c = centralizer_element_group(g, z, ctx)?;
    Ok(Subgroup::new_unchecked(g.clone(), c))
}

/// `Z(H) = C_H(H)` as a subgroup of `H`.
pub fn center(h: &PermGroup, ctx: &Ctx) -> Result<Subgroup> {
    if h.is_abelian() {
        return Ok(Subgroup::full(h));
    }
    let z = centralizer_group(h, h, ctx)?;
    Ok(Subgroup::new_unchecked(h.clone(), z))
}

/// True iff `z` is conjugate to its inverse in `g`.
pub fn is_real(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<bool> {
    Ok(real_witness(g, z, ctx)?.is_some())
}

/// A `u` with `z^u = z^-1` when `z` is real in `g`.
///
/// Tries the class orbit first (budgeted by class size); when the class is
/// too large, falls back to the complete cycle-structure transporter
/// enumeration, which is cheap exactly when the class is huge.
pub fn real_witness(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<Option<Permutation>> {
    if !g.contains(z)? {
        return Err(Error::NotMember);
    }
    let inv = z.inverse();
    // Few compatible conjugators: the exhaustive enumeration is complete
    // and far cheaper than walking the (then necessarily large) class.
    if sym_centralizer_order(z) <= BigUint::from(100_000u32) {
        return transporter_search(g, z, &inv, ctx.transporter_cap);
    }
    match class_walk(g, z, Some(&inv), ctx.max_class_size) {
        ClassWalk::Found(u) => Ok(Some(u)),
        ClassWalk::Complete { .. } => Ok(None),
        ClassWalk::Capped => transporter_search(g, z, &inv, ctx.transporter_cap),
    }
}

/// The extended centralizer `{y in G : z^y = z or z^-1}`; contains the
/// centralizer with index 1 or 2 (2 exactly when z is real and z != z^-1).
pub fn extended_centralizer(g: &PermGroup, z: &Permutation, ctx: &Ctx) -> Result<Subgroup> {
    if z.is_identity() {
        return Err(Error::Invalid("extended centralizer of the identity".into()));
    }
    let c = centralizer_element(g, z, ctx)?;
    match real_witness(g, z, ctx)? {
        Some(u) => {
            let mut gens = c.group().generators().to_vec();
            gens.push(u);
            let h = PermGroup::from_generators(g.degree(), gens)?;
            Ok(Subgroup::new_unchecked(g.clone(), h))
        }
        None => Ok(c),
    }
}

/// Smallest normal subgroup of `g` containing `h`: closes the generators
/// of `h` under conjugation by the generators of `g`.
pub fn normal_closure(g: &PermGroup, h: &Subgroup, _ctx: &Ctx) -> Result<Subgroup> {
    let hg = reparent(g, h)?;
    let degree = g.degree();
    let mut gens: Vec<Permutation> = hg.generators().to_vec();
    let mut k = hg;
    let mut queue: Vec<Permutation> = gens.clone();
    while let Some(x) = queue.pop() {
        for s in g.generators() {
            let y = x.conjugate_by(s)?;
            if !k.contains_unchecked(&y) {
                gens.push(y.clone());
                queue.push(y);
                k = PermGroup::from_generators(degree, gens.clone())?;
            }
        }
    }
    Ok(Subgroup::new_unchecked(g.clone(), k))
}

/// Successive derived subgroups down to stabilization.
pub fn derived_series(g: &PermGroup, ctx: &Ctx) -> Result<Vec<Subgroup>> {
    let mut series = vec![Subgroup::full(g)];
    let mut current = g.clone();
    for _ in 0..128 {
        let mut comms = Vec::new();
        let gens = current.generators();
        for (i, a) in gens.iter().enumerate() {
            for b in gens.iter().skip(i + 1) {
                let comm = a
                    .inverse()
                    .compose(&b.inverse())?
                    .compose(a)?
                    .compose(b)?;
                if !comm.is_identity() {
                    comms.push(comm);
                }
            }
        }
        let inner = PermGroup::from_generators(g.degree(), comms)?;
        let derived = normal_closure(&current, &Subgroup::new_unchecked(current.clone(), inner), ctx)?;
        if derived.group().order() == current.order() {
            return Ok(series);
        }
        series.push(Subgroup::new_unchecked(g.clone(), derived.group().clone()));
        if derived.group().is_trivial() {
            return Ok(series);
        }
        current = derived.group().clone();
    }
    Err(Error::Invalid("derived series did not stabilize".into()))
}

pub fn is_soluble(g: &PermGroup, ctx: &Ctx) -> Result<bool> {
    let series = derived_series(g, ctx)?;
    Ok(series.last().map(|s| s.group().is_trivial()).unwrap_or(true))
}

/// Sylow p-subgroup.
///
/// Within the scan threshold this follows the ascent contract: seed with
/// the p-power of a found element, then repeatedly extend inside the
/// normalizer until the full p-part is reached. Above the threshold the
/// construction localizes first: find a p-element whose class size is
/// coprime to p (equivalently, one lying in the center of some Sylow
/// p-subgroup), and recurse into its centralizer, which contains a full
/// Sylow p-subgroup of the whole group.
pub fn sylow(g: &PermGroup, p: u64, ctx: &Ctx) -> Result<Subgroup> {
    if !crate::arith::is_prime(&BigUint::from(p)) {
        return Err(Error::Invalid(format!("{} is not prime", p)));
    }
    let vp = valuation(g.order(), p);
    if vp == 0 {
        return Ok(Subgroup::trivial(g));
    }
    let inner = sylow_group(g, p, vp, ctx, 0)?;
    debug_assert_eq!(inner.order(), &BigUint::from(p).pow(vp));
    Ok(Subgroup::new_unchecked(g.clone(), inner))
}

fn sylow_group(g: &PermGroup, p: u64, vp: u32, ctx: &Ctx, depth: u32) -> Result<PermGroup> {
    if depth > 64 {
        return Err(Error::Budget("sylow localization did not terminate".into()));
    }
    let target = BigUint::from(p).pow(vp);
    if g.order() == &target {
        return Ok(g.clone());
    }
    // Cyclic Sylow shortcut: an element whose p-part already has full
    // order generates a Sylow subgroup on its own.
    let mut sampler = g.sampler(ctx.seed ^ 0xa5a5);
    for _ in 0..96 {
        if let Some(h) = p_part(&sampler.next_element(), p) {
            if h.order() == (p as u128).pow(vp) {
                return PermGroup::from_generators(g.degree(), vec![h]);
            }
        }
    }
    match g.order_u64() {
        Some(n) if n <= ctx.sylow_scan_threshold && n <= ctx.max_order_enum => {
            sylow_by_ascent(g, p, vp, ctx)
        }
        _ => sylow_by_descent(g, p, vp, ctx, depth),
    }
}

/// p-part of a permutation: its power of order the full p-power.
fn p_part(e: &Permutation, p: u64) -> Option<Permutation> {
    let ord = e.order();
    let mut a = 0u32;
    let mut rest = ord;
    while rest.is_multiple_of(p as u128) {
        rest /= p as u128;
        a += 1;
    }
    if a == 0 {
        None
    } else {
        Some(e.pow(rest))
    }
}

fn sylow_by_ascent(g: &PermGroup, p: u64, vp: u32, ctx: &Ctx) -> Result<PermGroup> {
    let target = BigUint::from(p).pow(vp);
    // Seed from sampled words, falling back to the element stream.
    let mut sampler = g.sampler(ctx.seed);
    let mut seed: Option<Permutation> = None;
    for _ in 0..96 {
        if let Some(h) = p_part(&sampler.next_element(), p) {
            let better = match &seed {
                Some(old) => h.order() > old.order(),
                None => true,
            };
            if better {
                seed = Some(h);
            }
        }
    }
    if seed.is_none() {
        seed = scan_find_first(
            g,
            |e, _| p_part(e, p),
            ctx,
            "sylow seed scan",
        )?;
    }
    let seed = seed.ok_or_else(|| {
        Error::Invalid(format!("no element of order divisible by {} found", p))
    })?;
    let mut p_sub = PermGroup::from_generators(g.degree(), vec![seed])?;
    while p_sub.order() < &target {
        let n = normalizer_group(g, &p_sub, ctx)?;
        let ext = find_p_extension(&n, p, &p_sub, ctx)?.ok_or_else(|| {
            Error::Invalid("normalizer growth failed to produce an extension".into())
        })?;
        let mut gens = p_sub.generators().to_vec();
        gens.push(ext);
        p_sub = PermGroup::from_generators(g.degree(), gens)?;
    }
    debug_assert_eq!(p_sub.order(), &target);
    Ok(p_sub)
}

/// First element of `n_group` (stream order) whose p-part falls outside
/// `p_sub`; adjoining it strictly extends the p-subgroup.
fn find_p_extension(
    n_group: &PermGroup,
    p: u64,
    p_sub: &PermGroup,
    ctx: &Ctx,
) -> Result<Option<Permutation>> {
    let p_sub = p_sub.clone();
    scan_find_first(
        n_group,
        move |e, bufs| {
            let h = p_part(e, p)?;
            if p_sub.contains_images(h.images(), &mut bufs.sift) {
                None
            } else {
                Some(h)
            }
        },
        ctx,
        "sylow extension scan",
    )
}

/// Candidate p-elements for the centralizer descent: sampled p-parts plus
/// their commuting products (disjoint cycles of the same prime combine
/// into the kind of element that sits in the center of a Sylow subgroup).
fn descent_candidates(g: &PermGroup, p: u64, seed: u64) -> Vec<Permutation> {
    let mut sampler = g.sampler(seed);
    let mut base: Vec<Permutation> = Vec::new();
    for _ in 0..640 {
        if let Some(z) = p_part(&sampler.next_element(), p) {
            if !base.contains(&z) {
                base.push(z);
                if base.len() >= 48 {
                    break;
                }
            }
        }
    }
    let mut candidates = base.clone();
    for i in 0..base.len() {
        let mut z = base[i].clone();
        for b in &base {
            if !b.commutes_with(&z) {
                continue;
            }
            let product = z.compose_unchecked(b);
            if product.is_identity() {
                continue;
            }
            if product.moved_points().len() > z.moved_points().len() {
                z = product;
            }
        }
        if !candidates.contains(&z) {
            candidates.push(z);
        }
    }
    // Large symmetric-group centralizer means small class: walk the cheap
    // candidates first.
    candidates.sort_by(|a, b| {
        sym_centralizer_order(b)
            .cmp(&sym_centralizer_order(a))
            .then_with(|| a.cmp(b))
    });
    candidates
}

fn sylow_by_descent(g: &PermGroup, p: u64, vp: u32, ctx: &Ctx, depth: u32) -> Result<PermGroup> {
    for z in descent_candidates(g, p, ctx.seed ^ ((depth as u64) << 8)) {
        let orbit = match class_walk(g, &z, None, ctx.max_class_size) {
            ClassWalk::Complete { orbit } => orbit,
            ClassWalk::Capped => continue,
            ClassWalk::Found(_) => unreachable!(),
        };
        let size = orbit.len() as u64;
        if size == 1 || size.is_multiple_of(p) {
            continue; // central, or not p-central
        }
        drop(orbit);
        let c = centralizer_element_group(g, &z, ctx)?;
        debug_assert_eq!(valuation(c.order(), p), vp);
        if c.order() < g.order() {
            return sylow_group(&c, p, vp, ctx, depth + 1);
        }
    }
    // Localization found no p-central element; fall back to the scanned
    // ascent while the group still fits the enumeration budget.
    if g.order_u64().is_some_and(|n| n <= ctx.max_order_enum) {
        return sylow_by_ascent(g, p, vp, ctx);
    }
    Err(Error::Budget(format!(
        "could not localize a {}-central element in a group of order {}",
        p,
        g.order()
    )))
}

/// True iff some Sylow p-subgroup commutes elementwise with some Sylow
/// q-subgroup. Fixes one P and walks the conjugates of one Q.
pub fn nilpotent_hall_pair_exists(g: &PermGroup, p: u64, q: u64, ctx: &Ctx) -> Result<bool> {
    if p == q {
        return Err(Error::Invalid("the two primes must differ".into()));
    }
    if valuation(g.order(), p) == 0 || valuation(g.order(), q) == 0 {
        return Err(Error::Invalid(format!(
            "both primes must divide the group order {}",
            g.order()
        )));
    }
    let p_syl = sylow(g, p, ctx)?;
    let q_syl = sylow(g, q, ctx)?;
    let p_gens = p_syl.group().generators().to_vec();
    let commute_with_p = |q_group: &PermGroup| -> bool {
        q_group
            .generators()
            .iter()
            .all(|b| p_gens.iter().all(|a| a.commutes_with(b)))
    };
    // Orbit of Q under conjugation, keyed by the sorted element list.
    let key_of = |elems: &[Permutation]| -> Vec<Permutation> {
        let mut v = elems.to_vec();
        v.sort_unstable();
        v
    };
    let q_elems: Vec<Permutation> = q_syl.group().elements(ctx)?.collect();
    let start_key = key_of(&q_elems);
    if commute_with_p(q_syl.group()) {
        return Ok(true);
    }
    let mut seen: std::collections::HashSet<Vec<Permutation>> = std::collections::HashSet::new();
    seen.insert(start_key);
    let mut queue: Vec<Vec<Permutation>> = vec![q_elems];
    while let Some(elems) = queue.pop() {
        for s in g.generators() {
            let conj: Vec<Permutation> = elems
                .iter()
                .map(|x| x.conjugate_by(s).expect("same degree"))
                .collect();
            let key = key_of(&conj);
            if seen.contains(&key) {
                continue;
            }
            if seen.len() as u64 > ctx.max_class_size {
                return Err(Error::Budget(
                    "subgroup conjugate orbit exceeds the class budget".into(),
                ));
            }
            // Every element commutes with P iff the subgroup does.
            if conj.iter().all(|b| p_gens.iter().all(|a| a.commutes_with(b))) {
                return Ok(true);
            }
            seen.insert(key);
            queue.push(conj);
        }
    }
    Ok(false)
}

/// The Frattini product order `|N * N_G(S)|` for `S` a Sylow p-subgroup of
/// the normal subgroup `N`; the Frattini argument makes this equal `|G|`.
pub fn frattini_product_order(
    g: &PermGroup,
    n: &Subgroup,
    p: u64,
    ctx: &Ctx,
) -> Result<BigUint> {
    let n_group = reparent(g, n)?;
    // Normality check.
    for x in n_group.generators() {
        for s in g.generators() {
            if !n_group.contains_unchecked(&x.conjugate_by(s)?) {
                return Err(Error::NotNormal);
            }
        }
    }
    let s = sylow(&n_group, p, ctx)?;
    let s_in_g = Subgroup::new_unchecked(g.clone(), s.group().clone());
    let ngs = normalizer(g, &s_in_g, ctx)?;
    let inter = intersection_order(&n_group, ngs.group(), ctx)?;
    Ok(n_group.order() * ngs.group().order() / inter)
}

/// |A ∩ B| by streaming the smaller group and sifting into the other.
pub fn intersection_order(a: &PermGroup, b: &PermGroup, ctx: &Ctx) -> Result<BigUint> {
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let _ = budgeted_order(small, ctx, "intersection")?;
    let mut count: u64 = 0;
    let mut scratch = SiftScratch::new();
    small.visit_elements_range(0, small.order_u64().unwrap(), |_, e| {
        if large.contains_images(e.images(), &mut scratch) {
            count += 1;
        }
        true
    });
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn sylow_orders_in_s4_and_a5() {
        let c = ctx();
        let s4 = catalog::symmetric(4).unwrap();
        assert_eq!(sylow(&s4, 2, &c).unwrap().order(), &BigUint::from(8u32));
        assert_eq!(sylow(&s4, 3, &c).unwrap().order(), &BigUint::from(3u32));
        let a5 = catalog::alternating(5).unwrap();
        assert!(sylow(&a5, 7, &c).unwrap().group().is_trivial());
        assert_eq!(sylow(&a5, 2, &c).unwrap().order(), &BigUint::from(4u32));
        assert!(sylow(&a5, 4, &c).is_err());
    }

    #[test]
    fn normalizer_and_centralizer_in_a5() {
        let c = ctx();
        let a5 = catalog::alternating(5).unwrap();
        let syl5 = sylow(&a5, 5, &c).unwrap();
        let n = normalizer(&a5, &syl5, &c).unwrap();
        assert_eq!(n.order(), &BigUint::from(10u32));
        let z = centralizer(&a5, &syl5, &c).unwrap();
        assert_eq!(z.order(), &BigUint::from(5u32));
        // Whole group is normal in itself.
        let full = Subgroup::full(&a5);
        assert_eq!(normalizer(&a5, &full, &c).unwrap().order(), a5.order());
    }

    #[test]
    fn centralizer_of_three_cycle_in_s3() {
        let c = ctx();
        let s3 = catalog::symmetric(3).unwrap();
        let rot = p("(1,2,3)", 3);
        let cz = centralizer_element(&s3, &rot, &c).unwrap();
        assert_eq!(cz.order(), &BigUint::from(3u32));
    }

    #[test]
    fn center_cases() {
        let c = ctx();
        let s3 = catalog::symmetric(3).unwrap();
        assert!(center(&s3, &c).unwrap().group().is_trivial());
        let c6 = catalog::cyclic(6).unwrap();
        assert_eq!(center(&c6, &c).unwrap().order(), &BigUint::from(6u32));
        let d8 = catalog::dihedral(8).unwrap();
        assert_eq!(center(&d8, &c).unwrap().order(), &BigUint::from(2u32));
    }

    #[test]
    fn reality_in_small_groups() {
        let c = ctx();
        let s7 = catalog::symmetric(7).unwrap();
        let seven = p("(1,2,3,4,5,6,7)", 7);
        assert!(is_real(&s7, &seven, &c).unwrap());
        let a7 = catalog::alternating(7).unwrap();
        assert!(!is_real(&a7, &seven, &c).unwrap());
        let a5 = catalog::alternating(5).unwrap();
        assert!(is_real(&a5, &p("(1,2,3,4,5)", 5), &c).unwrap());
        // Witness really conjugates z to its inverse.
        let w = real_witness(&a5, &p("(1,2,3,4,5)", 5), &c).unwrap().unwrap();
        assert_eq!(
            p("(1,2,3,4,5)", 5).conjugate_by(&w).unwrap(),
            p("(1,2,3,4,5)", 5).inverse()
        );
    }

    #[test]
    fn extended_centralizer_index() {
        let c = ctx();
        let a5 = catalog::alternating(5).unwrap();
        let z5 = p("(1,2,3,4,5)", 5);
        let cz = centralizer_element(&a5, &z5, &c).unwrap();
        let ext = extended_centralizer(&a5, &z5, &c).unwrap();
        assert_eq!(ext.order().clone() / cz.order().clone(), BigUint::from(2u32));
        let a7 = catalog::alternating(7).unwrap();
        let z7 = p("(1,2,3,4,5,6,7)", 7);
        let cz = centralizer_element(&a7, &z7, &c).unwrap();
        let ext = extended_centralizer(&a7, &z7, &c).unwrap();
        assert_eq!(ext.order(), cz.order());
        // Involutions: extended centralizer equals the centralizer.
        let s4 = catalog::symmetric(4).unwrap();
        let inv = p("(1,2)", 4);
        assert_eq!(
            extended_centralizer(&s4, &inv, &c).unwrap().order(),
            centralizer_element(&s4, &inv, &c).unwrap().order()
        );
    }

    #[test]
    fn normal_closure_cases() {
        let c = ctx();
        let s4 = catalog::symmetric(4).unwrap();
        let three = PermGroup::from_generators(4, vec![p("(1,2,3)", 4)]).unwrap();
        let h = Subgroup::new(s4.clone(), three).unwrap();
        let nc = normal_closure(&s4, &h, &c).unwrap();
        assert_eq!(nc.order(), &BigUint::from(12u32)); // A_4
        let triv = Subgroup::trivial(&s4);
        assert!(normal_closure(&s4, &triv, &c).unwrap().group().is_trivial());
        let c6 = catalog::cyclic(6).unwrap();
        let sub = PermGroup::from_generators(6, vec![p("(1,3,5)(2,4,6)", 6)]).unwrap();
        let h = Subgroup::new(c6.clone(), sub).unwrap();
        assert_eq!(normal_closure(&c6, &h, &c).unwrap().order(), &BigUint::from(3u32));
    }

    #[test]
    fn derived_series_and_solubility() {
        let c = ctx();
        let s3 = catalog::symmetric(3).unwrap();
        let series = derived_series(&s3, &c).unwrap();
        let orders: Vec<u64> = series
            .iter()
            .map(|s| s.group().order_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![6, 3, 1]);
        assert!(is_soluble(&catalog::symmetric(4).unwrap(), &c).unwrap());
        assert!(!is_soluble(&catalog::alternating(5).unwrap(), &c).unwrap());
        assert!(is_soluble(&catalog::frobenius20().unwrap(), &c).unwrap());
    }

    #[test]
    fn nilpotent_hall_pairs() {
        let c = ctx();
        let c6 = catalog::cyclic(6).unwrap();
        assert!(nilpotent_hall_pair_exists(&c6, 2, 3, &c).unwrap());
        let a5 = catalog::alternating(5).unwrap();
        assert!(!nilpotent_hall_pair_exists(&a5, 2, 3, &c).unwrap());
        let prod = catalog::direct_product(
            &catalog::symmetric(3).unwrap(),
            &catalog::cyclic(5).unwrap(),
        )
        .unwrap();
        assert!(nilpotent_hall_pair_exists(&prod, 3, 5, &c).unwrap());
        assert!(!nilpotent_hall_pair_exists(&prod, 2, 3, &c).unwrap());
        assert!(nilpotent_hall_pair_exists(&a5, 5, 5, &c).is_err());
    }

    #[test]
    fn frattini_identity_instances() {
        let c = ctx();
        let s4 = catalog::symmetric(4).unwrap();
        let a4 = catalog::alternating(4).unwrap();
        let n = Subgroup::new(s4.clone(), a4).unwrap();
        assert_eq!(
            frattini_product_order(&s4, &n, 3, &c).unwrap(),
            BigUint::from(24u32)
        );
        let s5 = catalog::symmetric(5).unwrap();
        let a5 = catalog::alternating(5).unwrap();
        let n = Subgroup::new(s5.clone(), a5).unwrap();
        assert_eq!(
            frattini_product_order(&s5, &n, 5, &c).unwrap(),
            BigUint::from(120u32)
        );
        // Whole group: trivially |G|.
        assert_eq!(
            frattini_product_order(&s4, &Subgroup::full(&s4), 2, &c).unwrap(),
            BigUint::from(24u32)
        );
        // Non-normal subgroup is rejected.
        let c2 = PermGroup::from_generators(4, vec![p("(1,2)", 4)]).unwrap();
        let bad = Subgroup::new(s4.clone(), c2).unwrap();
        assert!(matches!(
            frattini_product_order(&s4, &bad, 2, &c),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn sylow_of_psl27_normalizer_order() {
        let c = ctx();
        let g = catalog::psl2(7, &c).unwrap();
        let syl7 = sylow(&g, 7, &c).unwrap();
        assert_eq!(syl7.order(), &BigUint::from(7u32));
        let n = normalizer(&g, &syl7, &c).unwrap();
        assert_eq!(n.order(), &BigUint::from(21u32));
    }

    #[test]
    fn transporter_search_is_complete() {
        let c = ctx();
        // 7-cycles in A_7 are not real: the exhaustive transporter search
        // must agree with the class-orbit route.
        let a7 = catalog::alternating(7).unwrap();
        let z = p("(1,2,3,4,5,6,7)", 7);
        let via_search = transporter_search(&a7, &z, &z.inverse(), c.transporter_cap).unwrap();
        assert!(via_search.is_none());
        let s7 = catalog::symmetric(7).unwrap();
        let w = transporter_search(&s7, &z, &z.inverse(), c.transporter_cap)
            .unwrap()
            .unwrap();
        assert_eq!(z.conjugate_by(&w).unwrap(), z.inverse());
    }

    #[test]
    fn valuation_counts_exactly() {
        assert_eq!(valuation(&BigUint::from(48u32), 2), 4);
        assert_eq!(valuation(&BigUint::from(48u32), 3), 1);
        assert_eq!(valuation(&BigUint::from(48u32), 5), 0);
    }
}
