//! Covering-formation machinery: formation specifications over a prime
//! characteristic, the family Sigma_F of pairwise-unrelated prime sets,
//! prime connectivity, membership tests for product classes and for the
//! soluble covering-formations, and the Sylow-normalizer closure harness.

use crate::subgrp;
use crate::{Ctx, Error, PermGroup, Result, Subgroup};
use num_bigint::BigUint;
use std::collections::{BTreeMap, BTreeSet};

/// A covering-formation specification: a characteristic `pi` and, for each
/// prime p in it, the set `pi(p)` with p related to q iff q is in pi(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormationSpec {
    pub pi: BTreeSet<u64>,
    pub relation: BTreeMap<u64, BTreeSet<u64>>,
}

impl FormationSpec {
    /// The spec induced by a partition: `pi(p)` is the block containing p.
    pub fn from_partition(partition: &PrimePartition) -> FormationSpec {
        let mut pi = BTreeSet::new();
        let mut relation = BTreeMap::new();
        for block in &partition.blocks {
            for &p in block {
                pi.insert(p);
                relation.insert(p, block.iter().copied().collect());
            }
        }
        FormationSpec { pi, relation }
    }

    pub fn pi_of(&self, p: u64) -> Option<&BTreeSet<u64>> {
        self.relation.get(&p)
    }

    pub fn related(&self, p: u64, q: u64) -> bool {
        self.relation.get(&p).is_some_and(|s| s.contains(&q))
    }

    /// The two defining conditions: p in pi(p) subset of pi, and symmetry.
    pub fn validate(&self) -> bool {
        for &p in &self.pi {
            match self.relation.get(&p) {
                Some(set) => {
                    if !set.contains(&p) || !set.is_subset(&self.pi) {
                        return false;
                    }
                    for &q in set {
                        if !self.related(q, p) {
                            return false;
                        }
                    }
                }
                None => return false,
            }
        }
        self.relation.keys().all(|p| self.pi.contains(p))
    }

    /// Is `sigma` in Sigma_F, i.e. pairwise unrelated within `pi`?
    pub fn sigma_family_member(&self, sigma: &BTreeSet<u64>) -> Result<bool> {
        if !sigma.is_subset(&self.pi) {
            return Err(Error::Invalid(format!(
                "sigma {:?} is not a subset of the characteristic",
                sigma
            )));
        }
        for &p in sigma {
            for &q in sigma {
                if p != q && self.related(p, q) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Connected components of the relation (its transitive closure).
    pub fn prime_components(&self) -> Vec<BTreeSet<u64>> {
        let mut remaining: BTreeSet<u64> = self.pi.clone();
        let mut components = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::new();
            let mut queue = vec![start];
            while let Some(p) = queue.pop() {
                if !comp.insert(p) {
                    continue;
                }
                remaining.remove(&p);
                if let Some(adj) = self.relation.get(&p) {
                    for &q in adj {
                        if !comp.contains(&q) {
                            queue.push(q);
                        }
                    }
                }
            }
            components.push(comp);
        }
        components
    }
}

/// Disjoint nonempty blocks of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePartition {
    pub blocks: Vec<BTreeSet<u64>>,
}

impl PrimePartition {
    pub fn new(blocks: Vec<BTreeSet<u64>>) -> Result<PrimePartition> {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Invalid("empty partition block".into()));
            }
            for &p in block {
                if !seen.insert(p) {
                    return Err(Error::Invalid(format!("prime {} in two blocks", p)));
                }
            }
        }
        Ok(PrimePartition { blocks })
    }

    /// Parses "2,3|5|7,11" into blocks.
    pub fn parse(text: &str) -> Result<PrimePartition> {
        let mut blocks = Vec::new();
        for part in text.split('|') {
            let mut block = BTreeSet::new();
            for num in part.split(',') {
                let trimmed = num.trim();
                if trimmed.is_empty() {
                    continue;
                }
                let p: u64 = trimmed.parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("invalid prime '{}'", trimmed),
                })?;
                block.insert(p);
            }
            if !block.is_empty() {
                blocks.push(block);
            }
        }
        PrimePartition::new(blocks)
    }

    pub fn covers(&self, primes: &[u64]) -> bool {
        primes
            .iter()
            .all(|p| self.blocks.iter().any(|b| b.contains(p)))
    }
}

fn prime_set(g: &PermGroup, ctx: &Ctx) -> Result<Vec<u64>> {
    crate::arith::factorize(g.order(), ctx)?.primes_u64()
}

/// Membership in the product class of a partition: G is the direct product
/// of Hall tau_i-subgroups iff, for every block meeting pi(G), the normal
/// closure of a subgroup generated by one Sylow p-subgroup per block prime
/// is a tau_i-group.
pub fn in_product_class(g: &PermGroup, partition: &PrimePartition, ctx: &Ctx) -> Result<bool> {
    let primes = prime_set(g, ctx)?;
    if !partition.covers(&primes) {
        return Err(Error::Invalid(format!(
            "prime set {:?} is not covered by the partition",
            primes
        )));
    }
    for block in &partition.blocks {
        let in_g: Vec<u64> = primes.iter().copied().filter(|p| block.contains(p)).collect();
        if in_g.is_empty() {
            continue;
        }
        let mut gens = Vec::new();
        for &p in &in_g {
            gens.extend(subgrp::sylow(g, p, ctx)?.group().generators().to_vec());
        }
        let h = PermGroup::from_generators(g.degree(), gens)?;
        let closure = subgrp::normal_closure(g, &Subgroup::new_unchecked(g.clone(), h), ctx)?;
        let closure_primes = prime_set(closure.group(), ctx)?;
        if !closure_primes.iter().all(|p| block.contains(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in E_sigma^n for a two-prime sigma: nilpotent Hall
/// sigma-subgroups exist. Vacuously true when at most one of the primes
/// divides the order (a Sylow subgroup is a nilpotent Hall subgroup).
pub fn in_e_sigma_n(g: &PermGroup, sigma: (u64, u64), ctx: &Ctx) -> Result<bool> {
    let (p, q) = sigma;
    if p == q {
        return Err(Error::Invalid("sigma must contain two distinct primes".into()));
    }
    let divides =
        |p: u64| subgrp::valuation(g.order(), p) > 0;
    if !divides(p) || !divides(q) {
        return Ok(true);
    }
    subgrp::nilpotent_hall_pair_exists(g, p, q, ctx)
}

/// Membership in the soluble covering-formation defined by `spec`:
/// for every two-element sigma in Sigma_F inside pi(G), nilpotent Hall
/// sigma-subgroups exist. The contract covers the soluble universe only.
pub fn soluble_covering_membership(
    g: &PermGroup,
    spec: &FormationSpec,
    ctx: &Ctx,
) -> Result<bool> {
    if !subgrp::is_soluble(g, ctx)? {
        return Err(Error::Invalid(
            "soluble_covering_membership requires a soluble group".into(),
        ));
    }
    let primes = prime_set(g, ctx)?;
    for p in &primes {
        if !spec.pi.contains(p) {
            return Err(Error::Invalid(format!(
                "prime {} of the group is outside the characteristic",
                p
            )));
        }
    }
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if !spec.related(p, q) && !in_e_sigma_n(g, (p, q), ctx)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Report of one Sylow-normalizer closure check.
#[derive(Debug, Clone)]
pub struct NClosureReport {
    pub group_label: String,
    pub group_in_class: bool,
    /// (prime, |N_G(G_p)|, member?) per prime divisor.
    pub normalizers: Vec<(u64, BigUint, bool)>,
    pub equivalence_holds: bool,
}

/// Evaluates `membership` on G and on every Sylow normalizer, reporting
/// whether "G in X iff all Sylow normalizers in X" holds for this instance.
pub fn n_closure_check(
    g: &PermGroup,
    label: &str,
    membership: &dyn Fn(&PermGroup) -> Result<bool>,
    ctx: &Ctx,
) -> Result<NClosureReport> {
    let group_in_class = membership(g)?;
    let mut normalizers = Vec::new();
    let mut all_in = true;
    for p in prime_set(g, ctx)? {
        let syl = subgrp::sylow(g, p, ctx)?;
        let n = subgrp::normalizer(g, &syl, ctx)?;
        let member = membership(n.group())?;
        all_in &= member;
        normalizers.push((p, n.group().order().clone(), member));
    }
    Ok(NClosureReport {
        group_label: label.to_string(),
        group_in_class,
        normalizers,
        equivalence_holds: group_in_class == all_in,
    })
}

/// Nilpotence: every Sylow subgroup is normal (joint order product equals
/// the group order when each normalizer is the whole group).
pub fn is_nilpotent(g: &PermGroup, ctx: &Ctx) -> Result<bool> {
    for p in prime_set(g, ctx)? {
        let syl = subgrp::sylow(g, p, ctx)?;
        let n = subgrp::normalizer(g, &syl, ctx)?;
        if n.group().order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    fn blocks(text: &str) -> PrimePartition {
        PrimePartition::parse(text).unwrap()
    }

    #[test]
    fn spec_validation() {
        let spec = FormationSpec::from_partition(&blocks("2,3|5"));
        assert!(spec.validate());
        // 3 in pi(2) but 2 not in pi(3): violates symmetry.
        let mut bad = spec.clone();
        bad.relation.get_mut(&3).unwrap().remove(&2);
        assert!(!bad.validate());
        // p not in pi(p): violates reflexivity.
        let mut bad = spec.clone();
        bad.relation.get_mut(&5).unwrap().remove(&5);
        assert!(!bad.validate());
    }

    #[test]
    fn sigma_family_and_components() {
        let spec = FormationSpec::from_partition(&blocks("2,3|5"));
        let of = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
        assert!(spec.sigma_family_member(&of(&[2])).unwrap());
        assert!(spec.sigma_family_member(&of(&[2, 5])).unwrap());
        assert!(!spec.sigma_family_member(&of(&[2, 3])).unwrap());
        assert!(spec.sigma_family_member(&of(&[2, 7])).is_err());
        assert_eq!(spec.prime_components(), vec![of(&[2, 3]), of(&[5])]);
    }

    #[test]
    fn product_class_membership() {
        let c = ctx();
        let s3c5 = catalog::parse_group("S3 x C5", &c).unwrap().1;
        assert!(in_product_class(&s3c5, &blocks("2,3|5"), &c).unwrap());
        assert!(!in_product_class(&s3c5, &blocks("2|3|5"), &c).unwrap());
        let a5 = catalog::alternating(5).unwrap();
        assert!(in_product_class(&a5, &blocks("2,3,5"), &c).unwrap());
        assert!(in_product_class(&s3c5, &blocks("2,3|5,7"), &c).unwrap());
        assert!(in_product_class(&s3c5, &blocks("2,3|7"), &c).is_err());
    }

    #[test]
    fn e_sigma_n_membership() {
        let c = ctx();
        let a5 = catalog::alternating(5).unwrap();
        assert!(!in_e_sigma_n(&a5, (2, 3), &c).unwrap());
        assert!(in_e_sigma_n(&a5, (7, 11), &c).unwrap()); // vacuous
        assert!(in_e_sigma_n(&a5, (2, 7), &c).unwrap()); // one prime only
        let c6 = catalog::cyclic(6).unwrap();
        assert!(in_e_sigma_n(&c6, (2, 3), &c).unwrap());
    }

    #[test]
    fn soluble_membership_cases() {
        let c = ctx();
        let s3c5 = catalog::parse_group("S3 x C5", &c).unwrap().1;
        let spec = FormationSpec::from_partition(&blocks("2,3|5"));
        assert!(soluble_covering_membership(&s3c5, &spec, &c).unwrap());
        // F20 = C5 : C4 with blocks {2} | {5}: the 2/5 pair never commutes.
        let f20 = catalog::frobenius20().unwrap();
        let spec25 = FormationSpec::from_partition(&blocks("2|5"));
        assert!(!soluble_covering_membership(&f20, &spec25, &c).unwrap());
        // Nilpotent groups lie in every valid covering class.
        let c30 = catalog::cyclic(30).unwrap();
        let spec_all = FormationSpec::from_partition(&blocks("2|3|5"));
        assert!(soluble_covering_membership(&c30, &spec_all, &c).unwrap());
        // Non-soluble inputs are rejected.
        let a5 = catalog::alternating(5).unwrap();
        let spec235 = FormationSpec::from_partition(&blocks("2,3,5"));
        assert!(soluble_covering_membership(&a5, &spec235, &c).is_err());
    }

    #[test]
    fn n_closure_on_small_instances() {
        let c = ctx();
        // S3 x C5, blocks {2,3} | {5}: both sides true.
        let s3c5 = catalog::parse_group("S3 x C5", &c).unwrap().1;
        let part = blocks("2,3|5");
        let member = move |g: &PermGroup| in_product_class(g, &part, &c);
        let report = n_closure_check(&s3c5, "S3 x C5", &member, &ctx()).unwrap();
        assert!(report.group_in_class);
        assert!(report.equivalence_holds);
        // D10, blocks {2} | {5}: both sides false (N(Syl_5) = D10 itself).
        let d10 = catalog::dihedral(10).unwrap();
        let part = blocks("2|5");
        let c2 = ctx();
        let member = move |g: &PermGroup| in_product_class(g, &part, &c2);
        let report = n_closure_check(&d10, "D10", &member, &ctx()).unwrap();
        assert!(!report.group_in_class);
        assert!(report.equivalence_holds);
        assert!(report.normalizers.iter().any(|(p, n, m)| *p == 5 && *n == BigUint::from(10u32) && !m));
    }

    #[test]
    fn nilpotent_detection() {
        let c = ctx();
        assert!(is_nilpotent(&catalog::cyclic(12).unwrap(), &c).unwrap());
        assert!(!is_nilpotent(&catalog::symmetric(3).unwrap(), &c).unwrap());
    }
}
