//! Number theory and Lie-type arithmetic: exact factorization, Zsigmondy
//! primitive primes, order formulas, Weyl group orders, the fineness
//! predicate, sigma partitions and the arrow predictor.

use crate::{Ctx, Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exact prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: BigUint,
    factors: BTreeMap<BigUint, u32>,
}

impl Factorization {
    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    pub fn primes(&self) -> Vec<BigUint> {
        self.factors.keys().cloned().collect()
    }

    /// Prime set as machine integers; errors if some prime exceeds u64.
    pub fn primes_u64(&self) -> Result<Vec<u64>> {
        self.factors
            .keys()
            .map(|p| {
                p.to_u64()
                    .ok_or_else(|| Error::Invalid(format!("prime {} exceeds u64", p)))
            })
            .collect()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.get(&BigUint::from(p)).copied().unwrap_or(0)
    }

    /// The p-part `p^v_p(n)`.
    pub fn p_part(&self, p: u64) -> BigUint {
        BigUint::from(p).pow(self.exponent_of(p))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{}", p)?;
            } else {
                write!(f, "{}^{}", p, e)?;
            }
        }
        Ok(())
    }
}

/// Deterministic Miller-Rabin, reliable far beyond the sizes handled here.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(small);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint, seed: u64) -> Option<BigUint> {
    // Brent's cycle-finding variant; n must be odd composite.
    let c = BigUint::from(seed * 2 + 1);
    let mut y = BigUint::from(seed + 2);
    let mut g = BigUint::one();
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let limit = 1u64 << 22;
    let mut steps: u64 = 0;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = (&y * &y + &c) % n;
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let m = 128.min(r - k);
            for _ in 0..m {
                y = (&y * &y + &c) % n;
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (&q * &diff) % n;
            }
            g = q.gcd(n);
            k += m;
            steps += m;
            if steps > limit {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        // Backtrack to find the factor one step at a time.
        loop {
            ys = (&ys * &ys + &c) % n;
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g.is_one() || &g == n {
        None
    } else {
        Some(g)
    }
}

/// Complete factorization: trial division up to the configured bound, then
/// Miller-Rabin plus Pollard rho on what remains. Gives up (with the
/// remaining cofactor in the error) when rho exhausts its restarts.
pub fn factorize(n: &BigUint, ctx: &Ctx) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Invalid("factorize(0)".into()));
    }
    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= ctx.factor_trial_bound {
        let bd = BigUint::from(d);
        if &bd * &bd > rest {
            break;
        }
        while (&rest % &bd).is_zero() {
            *factors.entry(bd.clone()).or_insert(0) += 1;
            rest /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *factors.entry(m).or_insert(0) += 1;
            continue;
        }
        let mut found = None;
        for round in 0..ctx.pollard_restarts {
            if let Some(f) = pollard_rho(&m, round as u64 + 1) {
                found = Some(f);
                break;
            }
        }
        match found {
            Some(f) => {
                let other = &m / &f;
                stack.push(f);
                stack.push(other);
            }
            None => return Err(Error::FactorBound(m)),
        }
    }
    Ok(Factorization {
        value: n.clone(),
        factors,
    })
}

pub fn factorize_u64(n: u64, ctx: &Ctx) -> Result<Factorization> {
    factorize(&BigUint::from(n), ctx)
}

/// Multiplicative order of `base` modulo the prime `r`.
fn mult_order(base: &BigUint, r: &BigUint, ctx: &Ctx) -> Result<BigUint> {
    let r_minus_1 = r - 1u32;
    let fac = factorize(&r_minus_1, ctx)?;
    let mut ord = r_minus_1.clone();
    for (p, e) in fac.factors() {
        for _ in 0..*e {
            let cand = &ord / p;
            if base.modpow(&cand, r).is_one() {
                ord = cand;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

/// True exactly in the cases where no primitive prime for `(p, n)` exists:
/// `n = 2` with `p + 1` a power of two (for prime `p`: a Mersenne prime),
/// or `(p, n) = (2, 6)`.
pub fn is_zsigmondy_exception(p: u64, n: u32) -> bool {
    (n == 2 && (p + 1).is_power_of_two()) || (p == 2 && n == 6)
}

/// The n-th cyclotomic polynomial evaluated at p, through the Moebius
/// product over the divisors of n.
pub fn cyclotomic_value(n: u32, p: u64) -> BigUint {
    fn moebius(mut n: u32) -> i32 {
        let mut mu = 1;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                n /= d;
                if n.is_multiple_of(d) {
                    return 0;
                }
                mu = -mu;
            }
            d += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    }
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let value = BigUint::from(p).pow(d) - 1u32;
            match moebius(n / d) {
                1 => numerator *= value,
                -1 => denominator *= value,
                _ => {}
            }
        }
    }
    debug_assert!((&numerator % &denominator).is_zero());
    numerator / denominator
}

/// The product of the primitive-prime part of `p^n - 1`: the cyclotomic
/// value stripped of prime divisors of n. Every prime factor of a
/// cyclotomic value either has multiplicative order exactly n (so is
/// primitive and 1 mod n) or divides n; stripping the latter leaves
/// exactly the primitive content.
pub fn primitive_part(p: u64, n: u32) -> BigUint {
    let mut value = cyclotomic_value(n, p);
    let mut m = n as u64;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            let db = BigUint::from(d);
            while (&value % &db).is_zero() {
                value /= &db;
            }
        }
        d += 1;
    }
    if m > 1 {
        let db = BigUint::from(m);
        while (&value % &db).is_zero() {
            value /= &db;
        }
    }
    value
}

/// Whether a primitive prime for `(p, n)` exists; no factorization needed.
pub fn zsigmondy_exists(p: u64, n: u32) -> Result<bool> {
    if p < 2 || n < 2 {
        return Err(Error::Invalid("zsigmondy requires p >= 2, n >= 2".into()));
    }
    Ok(primitive_part(p, n) > BigUint::one())
}

/// All primes primitive with respect to the pair `(p, n)`: divisors of
/// `p^n - 1` dividing no `p^e - 1` with `e < n`, i.e. of multiplicative
/// order exactly `n`. These are the prime factors of `primitive_part`.
pub fn primitive_primes(p: u64, n: u32, ctx: &Ctx) -> Result<Vec<BigUint>> {
    if p < 2 || n < 1 {
        return Err(Error::Invalid("primitive_primes requires p >= 2, n >= 1".into()));
    }
    let part = primitive_part(p, n);
    let fac = factorize(&part, ctx)?;
    if cfg!(debug_assertions) {
        let base = BigUint::from(p);
        for r in fac.primes() {
            debug_assert_eq!(mult_order(&base, &r, ctx)?, BigUint::from(n));
        }
    }
    Ok(fac.primes())
}

/// Smallest primitive prime for `(p, n)`, absent exactly in the
/// exceptional cases. The primitive part is trial-divided first, so the
/// budgeted factorization only runs when every primitive prime is large.
pub fn zsigmondy(p: u64, n: u32, ctx: &Ctx) -> Result<Option<BigUint>> {
    if p < 2 || n < 2 {
        return Err(Error::Invalid("zsigmondy requires p >= 2, n >= 2".into()));
    }
    let part = primitive_part(p, n);
    if part.is_one() {
        return Ok(None);
    }
    // Primitive primes are 1 mod n: trial-divide along that progression.
    let mut r = n as u64 + 1;
    while r <= ctx.factor_trial_bound {
        if (&part % BigUint::from(r)).is_zero() {
            return Ok(Some(BigUint::from(r)));
        }
        r += n as u64;
    }
    let primes = factorize(&part, ctx)?.primes();
    Ok(primes.into_iter().next())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// `q^k + eps` as a BigUint (eps = +-1); panics if negative, which cannot
/// happen for q >= 2, k >= 1.
fn q_pow_plus(q: u64, k: u32, eps: i64) -> BigUint {
    let t = BigUint::from(q).pow(k);
    match eps {
        1 => t + 1u32,
        -1 => t - 1u32,
        _ => unreachable!(),
    }
}

/// Order of `E6^eps(q)` from the displayed product
/// `(1/d) q^36 (q-e)^6 (q+e)^4 (q^2-eq+1)^2 (q^2+eq+1)^3 (q^2+1)^2
///  (q^4-q^2+1)(q^4+1) (q^5-e)/(q-e) (q^6+eq^3+1)` with `d = (3, q-e)`.
pub fn order_e6(q: u64, eps: Sign) -> BigUint {
    let e = eps.as_i64();
    let qb = BigUint::from(q);
    let q2 = &qb * &qb;
    let q3 = &q2 * &qb;
    let q4 = &q2 * &q2;
    let q6 = &q3 * &q3;
    let add = |a: &BigUint, b: &BigUint| a + b;
    let sub = |a: &BigUint, b: &BigUint| a - b;
    let signed = |plus: BigUint, minus: BigUint| if e == 1 { plus } else { minus };

    let q_minus_e = signed(&qb - 1u32, &qb + 1u32);
    let q_plus_e = signed(&qb + 1u32, &qb - 1u32);
    // q^2 - e q + 1 and q^2 + e q + 1
    let q2_minus_eq = signed(sub(&add(&q2, &BigUint::one()), &qb), add(&add(&q2, &qb), &BigUint::one()));
    let q2_plus_eq = signed(add(&add(&q2, &qb), &BigUint::one()), sub(&add(&q2, &BigUint::one()), &qb));
    let q2_plus_1 = &q2 + 1u32;
    let q4_minus_q2_plus_1 = &q4 - &q2 + 1u32;
    let q4_plus_1 = &q4 + 1u32;
    // (q^5 - e)/(q - e)
    let q5_minus_e = q_pow_plus(q, 5, -e);
    let quotient = &q5_minus_e / &q_minus_e;
    debug_assert!((&q5_minus_e % &q_minus_e).is_zero());
    // q^6 + e q^3 + 1
    let q6_term = signed(add(&add(&q6, &q3), &BigUint::one()), sub(&add(&q6, &BigUint::one()), &q3));

    let d = BigUint::from(3u32).gcd(&q_minus_e);
    let mut order = qb.pow(36);
    order *= q_minus_e.pow(6);
    order *= q_plus_e.pow(4);
    order *= q2_minus_eq.pow(2);
    order *= q2_plus_eq.pow(3);
    order *= q2_plus_1.pow(2);
    order *= q4_minus_q2_plus_1;
    order *= q4_plus_1;
    order *= quotient;
    order *= q6_term;
    debug_assert!((&order % &d).is_zero());
    order / d
}

/// `|PSL_l(q)|` (eps = +) or `|PSU_l(q)|` (eps = -), classical degree
/// product divided by `d = (l, q -+ eps 1)`.
pub fn order_linear(l: u32, eps: Sign, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut order = qb.pow(l * (l - 1) / 2);
    for i in 2..=l {
        let factor = match eps {
            Sign::Plus => q_pow_plus(q, i, -1),
            // q^i - (-1)^i
            Sign::Minus => {
                if i % 2 == 0 {
                    q_pow_plus(q, i, -1)
                } else {
                    q_pow_plus(q, i, 1)
                }
            }
        };
        order *= factor;
    }
    let d = match eps {
        Sign::Plus => BigUint::from(l).gcd(&(qb.clone() - 1u32)),
        Sign::Minus => BigUint::from(l).gcd(&(qb.clone() + 1u32)),
    };
    debug_assert!((&order % &d).is_zero());
    order / d
}

/// `|P Omega^eps_{2n}(q)|` with `n = 2l + 1` (the D_{2l+1} family).
pub fn order_orthogonal(l: u32, eps: Sign, q: u64) -> BigUint {
    let n = 2 * l + 1;
    let qb = BigUint::from(q);
    let mut order = qb.pow(n * (n - 1));
    let middle = match eps {
        Sign::Plus => q_pow_plus(q, n, -1),
        Sign::Minus => q_pow_plus(q, n, 1),
    };
    order *= &middle;
    for i in 1..n {
        order *= q_pow_plus(q, 2 * i, -1);
    }
    let d = BigUint::from(4u32).gcd(&middle);
    debug_assert!((&order % &d).is_zero());
    order / d
}

/// Lie-type families handled by the arithmetic layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LieFamily {
    A,
    TwoA,
    B,
    C,
    D,
    TwoD,
    E6,
    TwoE6,
    E7,
    E8,
    F4,
    G2,
    TwoB2,
    ThreeD4,
    TwoF4,
    TwoG2,
}

impl LieFamily {
    pub fn parse(s: &str) -> Result<LieFamily> {
        Ok(match s {
            "A" => LieFamily::A,
            "2A" => LieFamily::TwoA,
            "B" => LieFamily::B,
            "C" => LieFamily::C,
            "D" => LieFamily::D,
            "2D" => LieFamily::TwoD,
            "E6" => LieFamily::E6,
            "2E6" => LieFamily::TwoE6,
            "E7" => LieFamily::E7,
            "E8" => LieFamily::E8,
            "F4" => LieFamily::F4,
            "G2" => LieFamily::G2,
            "2B2" => LieFamily::TwoB2,
            "3D4" => LieFamily::ThreeD4,
            "2F4" => LieFamily::TwoF4,
            "2G2" => LieFamily::TwoG2,
            other => return Err(Error::UnsupportedFamily(other.to_string())),
        })
    }

    pub fn is_twisted(self) -> bool {
        matches!(
            self,
            LieFamily::TwoA
                | LieFamily::TwoD
                | LieFamily::TwoE6
                | LieFamily::TwoB2
                | LieFamily::ThreeD4
                | LieFamily::TwoF4
                | LieFamily::TwoG2
        )
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieFamily::A => "A",
            LieFamily::TwoA => "2A",
            LieFamily::B => "B",
            LieFamily::C => "C",
            LieFamily::D => "D",
            LieFamily::TwoD => "2D",
            LieFamily::E6 => "E6",
            LieFamily::TwoE6 => "2E6",
            LieFamily::E7 => "E7",
            LieFamily::E8 => "E8",
            LieFamily::F4 => "F4",
            LieFamily::G2 => "G2",
            LieFamily::TwoB2 => "2B2",
            LieFamily::ThreeD4 => "3D4",
            LieFamily::TwoF4 => "2F4",
            LieFamily::TwoG2 => "2G2",
        };
        write!(f, "{}", s)
    }
}

/// A group of Lie type described arithmetically: family, rank, defining
/// characteristic `r`, field exponent `t`, `q = r^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTypeSpec {
    pub family: LieFamily,
    pub rank: u32,
    pub r: u64,
    pub t: u32,
    pub q: u64,
}

impl LieTypeSpec {
    pub fn new(family: LieFamily, rank: u32, q: u64, ctx: &Ctx) -> Result<LieTypeSpec> {
        let (r, t) = prime_power_split(q, ctx)?;
        let rank_ok = match family {
            LieFamily::A | LieFamily::TwoA => rank >= 1,
            LieFamily::B | LieFamily::C => rank >= 2,
            LieFamily::D | LieFamily::TwoD => rank >= 3,
            LieFamily::E6 | LieFamily::TwoE6 => rank == 6,
            LieFamily::E7 => rank == 7,
            LieFamily::E8 => rank == 8,
            LieFamily::F4 | LieFamily::TwoF4 => rank == 4,
            LieFamily::G2 | LieFamily::TwoG2 => rank == 2,
            LieFamily::TwoB2 => rank == 2,
            LieFamily::ThreeD4 => rank == 4,
        };
        if !rank_ok {
            return Err(Error::Invalid(format!(
                "invalid rank {} for family {}",
                rank, family
            )));
        }
        match family {
            LieFamily::TwoB2 | LieFamily::TwoF4 if r != 2 => {
                return Err(Error::Invalid(format!("{} requires characteristic 2", family)))
            }
            LieFamily::TwoG2 if r != 3 => {
                return Err(Error::Invalid("2G2 requires characteristic 3".into()))
            }
            _ => {}
        }
        Ok(LieTypeSpec {
            family,
            rank,
            r,
            t,
            q,
        })
    }
}

impl fmt::Display for LieTypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}({})", self.family, self.rank, self.q)
    }
}

/// Splits a prime power `q = r^t`.
pub fn prime_power_split(q: u64, ctx: &Ctx) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Invalid(format!("{} is not a prime power", q)));
    }
    let fac = factorize_u64(q, ctx)?;
    let primes = fac.primes_u64()?;
    if primes.len() != 1 {
        return Err(Error::Invalid(format!("{} is not a prime power", q)));
    }
    Ok((primes[0], fac.exponent_of(primes[0])))
}

/// Weyl group orders: A_n -> (n+1)!; D_n -> 2^(n-1) n!;
/// 2D_n -> 2^(n-1) (n-1)!; E6 -> 51840 (twice |PSp_4(3)|); 2E6 -> 1152
/// (the Weyl group of F_4, order 2^7 3^2).
///
/// For D_n the abstract description "elementary abelian of order 2^n
/// extended by S_n" names the ambient signed-permutation group of order
/// 2^n n!; the Weyl group itself is its even-sign-vector half, 2^(n-1) n!,
/// and that is what this function returns. Only the prime set {2, ..,
/// primes of n!} feeds the predictor, and both readings agree on it.
pub fn weyl_order(family: LieFamily, rank: u32) -> Result<BigUint> {
    fn fact(n: u32) -> BigUint {
        (1..=n).map(BigUint::from).product()
    }
    match family {
        LieFamily::A => Ok(fact(rank + 1)),
        LieFamily::D => {
            if rank < 2 {
                return Err(Error::Invalid("D requires rank >= 2".into()));
            }
            Ok(BigUint::from(2u32).pow(rank - 1) * fact(rank))
        }
        LieFamily::TwoD => {
            if rank < 2 {
                return Err(Error::Invalid("2D requires rank >= 2".into()));
            }
            Ok(BigUint::from(2u32).pow(rank - 1) * fact(rank - 1))
        }
        LieFamily::E6 => Ok(BigUint::from(51840u32)),
        LieFamily::TwoE6 => Ok(BigUint::from(1152u32)),
        other => Err(Error::UnsupportedFamily(format!(
            "weyl_order not defined here for {}",
            other
        ))),
    }
}

/// Fineness: a group of Lie type is fine unless its root system is
/// A_l (l > 1), D_{2l+1}, or E_6, all untwisted. All semisimple elements
/// of odd prime order in a fine group are real.
pub fn is_fine(spec: &LieTypeSpec) -> bool {
    match spec.family {
        LieFamily::A => spec.rank <= 1,
        LieFamily::D => spec.rank.is_multiple_of(2),
        LieFamily::E6 => false,
        _ => true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaProvenance {
    Orthogonal,
    Linear,
}

/// The sigma partition of the prime set of a Lie-type order: sigma1 the
/// designated primitive primes, sigma3 = {r, 2}, sigma2 the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPartition {
    pub sigma1: Vec<u64>,
    pub sigma2: Vec<u64>,
    pub sigma3: Vec<u64>,
    pub provenance: SigmaProvenance,
    /// For each prime in sigma1, the index j it is primitive for (the
    /// block size that drives its predicted arrows).
    pub j_of: BTreeMap<u64, u32>,
}

impl SigmaPartition {
    pub fn all_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .sigma1
            .iter()
            .chain(self.sigma2.iter())
            .chain(self.sigma3.iter())
            .copied()
            .collect();
        v.sort_unstable();
        v
    }
}

fn primitive_primes_u64(q: u64, n: u32, ctx: &Ctx) -> Result<Vec<u64>> {
    primitive_primes(q, n, ctx)?
        .into_iter()
        .map(|p| {
            p.to_u64()
                .ok_or_else(|| Error::Invalid(format!("primitive prime {} exceeds u64", p)))
        })
        .collect()
}

/// Sigma partition for linear/unitary socle `L_l^eps(q)`, l > 2.
///
/// sigma1 collects, for every admissible block size `j <= l < 2j`, the
/// primes primitive for `(q, j)` when eps = + ; for eps = - those dividing
/// `q^j - (eps)^j` that are primitive for `(q, j)` (j even) or `(q, 2j)`
/// (j odd).
pub fn sigma_partition_linear(l: u32, eps: Sign, q: u64, ctx: &Ctx) -> Result<SigmaPartition> {
    if l <= 2 {
        return Err(Error::Invalid("sigma_partition_linear requires l > 2".into()));
    }
    let (r, _) = prime_power_split(q, ctx)?;
    let order = order_linear(l, eps, q);
    let pi = factorize(&order, ctx)?.primes_u64()?;
    let mut sigma1 = Vec::new();
    let mut j_of = BTreeMap::new();
    let j_lo = l / 2 + 1;
    for j in j_lo..=l {
        let prims = match eps {
            Sign::Plus => primitive_primes_u64(q, j, ctx)?,
            Sign::Minus => {
                if j % 2 == 0 {
                    primitive_primes_u64(q, j, ctx)?
                } else {
                    primitive_primes_u64(q, 2 * j, ctx)?
                }
            }
        };
        for p in prims {
            if pi.contains(&p) && !sigma1.contains(&p) {
                sigma1.push(p);
                j_of.insert(p, j);
            }
        }
    }
    sigma1.sort_unstable();
    let mut sigma3 = vec![2, r];
    sigma3.sort_unstable();
    sigma3.dedup();
    let sigma2: Vec<u64> = pi
        .iter()
        .copied()
        .filter(|p| !sigma1.contains(p) && !sigma3.contains(p))
        .collect();
    let sigma3 = sigma3.into_iter().filter(|p| pi.contains(p)).collect();
    Ok(SigmaPartition {
        sigma1,
        sigma2,
        sigma3,
        provenance: SigmaProvenance::Linear,
        j_of,
    })
}

/// Sigma partition for orthogonal socle `P Omega^eps_{4l+2}(q)`, l >= 1:
/// sigma1 is the set of primes primitive for `(q, 2l+1)` (eps = +) or
/// `(q, 4l+2)` (eps = -).
pub fn sigma_partition_orthogonal(l: u32, eps: Sign, q: u64, ctx: &Ctx) -> Result<SigmaPartition> {
    if l < 1 {
        return Err(Error::Invalid("sigma_partition_orthogonal requires l >= 1".into()));
    }
    let (r, _) = prime_power_split(q, ctx)?;
    let order = order_orthogonal(l, eps, q);
    let pi = factorize(&order, ctx)?.primes_u64()?;
    let n = match eps {
        Sign::Plus => 2 * l + 1,
        Sign::Minus => 4 * l + 2,
    };
    let mut sigma1: Vec<u64> = if is_zsigmondy_exception(q, n) {
        Vec::new()
    } else {
        primitive_primes_u64(q, n, ctx)?
            .into_iter()
            .filter(|p| pi.contains(p))
            .collect()
    };
    sigma1.sort_unstable();
    let j_of: BTreeMap<u64, u32> = sigma1.iter().map(|&p| (p, 2 * l + 1)).collect();
    let mut sigma3 = vec![2, r];
    sigma3.sort_unstable();
    sigma3.dedup();
    let sigma2: Vec<u64> = pi
        .iter()
        .copied()
        .filter(|p| !sigma1.contains(p) && !sigma3.contains(p))
        .collect();
    let sigma3 = sigma3.into_iter().filter(|p| pi.contains(p)).collect();
    Ok(SigmaPartition {
        sigma1,
        sigma2,
        sigma3,
        provenance: SigmaProvenance::Orthogonal,
        j_of,
    })
}

/// An arrow the arithmetic guarantees to lie in the Sylow graph of the
/// named group, with the result that proves it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PredictedArrow {
    pub from: u64,
    pub to: u64,
    pub justification: &'static str,
}

fn push_arrow(out: &mut Vec<PredictedArrow>, from: u64, to: u64, tag: &'static str) {
    if from == to {
        return;
    }
    if !out.iter().any(|a| a.from == from && a.to == to) {
        out.push(PredictedArrow {
            from,
            to,
            justification: tag,
        });
    }
}

/// Arrows the arithmetic guarantees to lie in the Sylow graph of the
/// socle; sound (a subset of the true arrow set), never complete, applied
/// strictly by each rule's stated hypotheses.
///
/// E6/2E6 over GF(q), eps the sign, r the characteristic:
/// * `E6-R1`: a prime s >= 5 dividing q^4-q^2+1, q^2+q+1, q^2-q+1,
///   q^2+1 or q^4+1 gives s -> 2 (such Sylow subgroups are abelian with
///   real generators);
/// * `E6-R2`: a prime s != 5 dividing q^4 + eps q^3 + q^2 + eps q + 1
///   but not q - eps gives s -> 5 (a Frobenius normalizer of the quintic
///   torus);
/// * `E6-R3`: 5 -> 2 whenever 5 divides the order, and r -> 2 for odd r;
/// * `E6-R4`: 3 -> 2 always.
///
/// `linear-sigma` (socle L_l^eps(q), l > 2): odd primes of sigma_2 point
/// to 2; the characteristic points to every prime of r - 1; a sigma_1
/// prime with block size j points to every prime divisor of j.
///
/// `orthogonal-sigma` (socle P Omega^eps_{4l+2}(q)): odd primes of
/// sigma_2 point to 2; an odd characteristic points to 2; sigma_1 primes
/// point to every prime divisor of 2l + 1.
pub fn predicted_edges(spec: &LieTypeSpec, ctx: &Ctx) -> Result<Vec<PredictedArrow>> {
    let q = spec.q;
    let r = spec.r;
    let mut out = Vec::new();
    match spec.family {
        LieFamily::E6 | LieFamily::TwoE6 => {
            let eps = if spec.family == LieFamily::E6 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let e = eps.as_i64();
            let pi = factorize(&order_e6(q, eps), ctx)?.primes_u64()?;
            let qb = BigUint::from(q);
            let q2 = &qb * &qb;
            let q4 = &q2 * &q2;
            // s >= 5 dividing q^4-q^2+1, q^2+-q+1, q^2+1 or q^4+1: s -> 2.
            let mut le1_values: Vec<BigUint> = vec![
                &q4 - &q2 + 1u32,
                &q2 + &qb + 1u32,
                &q2 - &qb + 1u32,
                &q2 + 1u32,
                &q4 + 1u32,
            ];
            for v in le1_values.drain(..) {
                for s in factorize(&v, ctx)?.primes_u64()? {
                    if s >= 5 && pi.contains(&s) {
                        push_arrow(&mut out, s, 2, "E6-R1");
                    }
                }
            }
            // s != 5 dividing q^4 + e q^3 + q^2 + e q + 1, not dividing
            // q - e: s -> 5.
            let quintic = {
                let q3 = &q2 * &qb;
                if e == 1 {
                    &q4 + &q3 + &q2 + &qb + 1u32
                } else {
                    &q4 - &q3 + &q2 - &qb + 1u32
                }
            };
            let q_minus_e = q_pow_plus(q, 1, -e);
            for s in factorize(&quintic, ctx)?.primes_u64()? {
                if s != 5 && !(&q_minus_e % BigUint::from(s)).is_zero() && pi.contains(&s) {
                    push_arrow(&mut out, s, 5, "E6-R2");
                }
            }
            if pi.contains(&5) {
                push_arrow(&mut out, 5, 2, "E6-R3");
            }
            if r != 2 {
                push_arrow(&mut out, r, 2, "E6-R3");
            }
            push_arrow(&mut out, 3, 2, "E6-R4");
        }
        LieFamily::A | LieFamily::TwoA => {
            let eps = if spec.family == LieFamily::A {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let sigma = sigma_partition_linear(spec.rank, eps, q, ctx)?;
            for &p in &sigma.sigma2 {
                if p % 2 == 1 {
                    push_arrow(&mut out, p, 2, "linear-sigma");
                }
            }
            if r > 2 {
                for s in factorize_u64(r - 1, ctx)?.primes_u64()? {
                    push_arrow(&mut out, r, s, "linear-sigma");
                }
            }
            for (&p, &j) in &sigma.j_of {
                for s in factorize_u64(j as u64, ctx)?.primes_u64()? {
                    push_arrow(&mut out, p, s, "linear-sigma");
                }
            }
        }
        LieFamily::D | LieFamily::TwoD => {
            // Interpreted as the P Omega_{4l+2} family: rank = 2l + 1.
            if spec.rank.is_multiple_of(2) || spec.rank < 3 {
                return Err(Error::UnsupportedFamily(format!(
                    "orthogonal predictor needs rank 2l+1 >= 3, got {}",
                    spec.rank
                )));
            }
            let l = (spec.rank - 1) / 2;
            let eps = if spec.family == LieFamily::D {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let sigma = sigma_partition_orthogonal(l, eps, q, ctx)?;
            for &p in &sigma.sigma2 {
                if p % 2 == 1 {
                    push_arrow(&mut out, p, 2, "orthogonal-sigma");
                }
            }
            if r > 2 {
                push_arrow(&mut out, r, 2, "orthogonal-sigma");
            }
            for &p in &sigma.sigma1 {
                for s in factorize_u64((2 * l + 1) as u64, ctx)?.primes_u64()? {
                    push_arrow(&mut out, p, s, "orthogonal-sigma");
                }
            }
        }
        other => {
            return Err(Error::UnsupportedFamily(format!(
                "no edge predictor for {}",
                other
            )))
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn factorize_small_values() {
        let f = factorize_u64(60, &ctx()).unwrap();
        assert_eq!(f.to_string(), "2^2 * 3 * 5");
        assert_eq!(f.exponent_of(2), 2);
        let one = factorize_u64(1, &ctx()).unwrap();
        assert!(one.factors().is_empty());
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn factorize_m23_order() {
        let f = factorize_u64(10_200_960, &ctx()).unwrap();
        let expected: Vec<(u64, u32)> = vec![(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)];
        for (p, e) in expected {
            assert_eq!(f.exponent_of(p), e, "exponent of {}", p);
        }
        assert_eq!(f.primes_u64().unwrap(), vec![2, 3, 5, 7, 11, 23]);
    }

    #[test]
    fn factorize_large_cofactors() {
        // 2^67 - 1 = 193707721 * 761838257287 — beyond trial division.
        let n = (BigUint::from(1u32) << 67) - 1u32;
        let f = factorize(&n, &ctx()).unwrap();
        let primes = f.primes();
        assert_eq!(primes.len(), 2);
        assert_eq!(
            primes[0] .to_string(),
            "193707721"
        );
    }

    #[test]
    fn zsigmondy_examples() {
        let c = ctx();
        assert_eq!(zsigmondy(2, 6, &c).unwrap(), None);
        assert_eq!(zsigmondy(3, 2, &c).unwrap(), None); // 3 is Mersenne
        assert_eq!(zsigmondy(2, 4, &c).unwrap(), Some(BigUint::from(5u32)));
        assert_eq!(zsigmondy(2, 11, &c).unwrap(), Some(BigUint::from(23u32)));
    }

    #[test]
    fn zsigmondy_against_brute_force_oracle() {
        // Independent oracle: for each prime divisor of p^n - 1 check
        // directly whether it divides some smaller p^e - 1.
        let c = ctx();
        for p in 2u64..=12 {
            for n in 2u32..=10 {
                let value = BigUint::from(p).pow(n) - 1u32;
                let mut brute: Vec<BigUint> = Vec::new();
                for r in factorize(&value, &c).unwrap().primes() {
                    let divides_earlier = (1..n).any(|e| {
                        let smaller = BigUint::from(p).pow(e) - 1u32;
                        (&smaller % &r).is_zero()
                    });
                    if !divides_earlier {
                        brute.push(r);
                    }
                }
                brute.sort();
                let got = primitive_primes(p, n, &c).unwrap();
                assert_eq!(got, brute, "primitive primes for ({}, {})", p, n);
                assert_eq!(
                    got.is_empty(),
                    is_zsigmondy_exception(p, n),
                    "exception classification for ({}, {})",
                    p,
                    n
                );
            }
        }
    }

    #[test]
    fn order_e6_against_degree_product() {
        // Classical oracle: |E6(q)| = (1/d) q^36 prod (q^di - 1) over
        // degrees {2,5,6,8,9,12}; twisted form flips the signs at the
        // odd degrees 5 and 9.
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let qb = BigUint::from(q);
            let plus: BigUint = [2u32, 5, 6, 8, 9, 12]
                .iter()
                .map(|&d| qb.pow(d) - 1u32)
                .product();
            let d_plus = BigUint::from(3u32).gcd(&(qb.clone() - 1u32));
            assert_eq!(
                order_e6(q, Sign::Plus),
                qb.pow(36) * plus / d_plus,
                "E6({})",
                q
            );
            let minus: BigUint = [
                qb.pow(2) - 1u32,
                qb.pow(5) + 1u32,
                qb.pow(6) - 1u32,
                qb.pow(8) - 1u32,
                qb.pow(9) + 1u32,
                qb.pow(12) - 1u32,
            ]
            .into_iter()
            .product();
            let d_minus = BigUint::from(3u32).gcd(&(qb.clone() + 1u32));
            assert_eq!(
                order_e6(q, Sign::Minus),
                qb.pow(36) * minus / d_minus,
                "2E6({})",
                q
            );
        }
    }

    #[test]
    fn order_e6_visible_factors() {
        for q in [2u64, 3, 4, 5] {
            let q4_plus_1 = BigUint::from(q).pow(4) + 1u32;
            assert!((order_e6(q, Sign::Plus) % q4_plus_1).is_zero());
        }
    }

    #[test]
    fn classical_orders() {
        assert_eq!(order_linear(2, Sign::Plus, 7), BigUint::from(168u32));
        assert_eq!(order_linear(4, Sign::Plus, 2), BigUint::from(20160u32));
        assert_eq!(order_linear(3, Sign::Plus, 3), BigUint::from(5616u32));
        // PSU_4(2) = P Omega_6^-(2) has order 25920.
        assert_eq!(order_linear(4, Sign::Minus, 2), BigUint::from(25920u32));
        assert_eq!(order_orthogonal(1, Sign::Minus, 2), BigUint::from(25920u32));
        // P Omega_6^+(2) = A_8.
        assert_eq!(order_orthogonal(1, Sign::Plus, 2), BigUint::from(20160u32));
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_order(LieFamily::A, 4).unwrap(), BigUint::from(120u32));
        assert_eq!(weyl_order(LieFamily::TwoE6, 6).unwrap(), BigUint::from(1152u32));
        // 2 * |PSp_4(3)|, with |PSp_4(3)| = 3^4 (3^2-1)(3^4-1) / 2 = 25920.
        let psp43 = BigUint::from(3u32).pow(4)
            * (BigUint::from(3u32).pow(2) - 1u32)
            * (BigUint::from(3u32).pow(4) - 1u32)
            / BigUint::from(2u32);
        assert_eq!(psp43, BigUint::from(25920u32));
        assert_eq!(weyl_order(LieFamily::E6, 6).unwrap(), psp43 * 2u32);
        assert_eq!(
            weyl_order(LieFamily::D, 4).unwrap(),
            BigUint::from(8u32 * 24u32)
        );
        assert_eq!(
            weyl_order(LieFamily::TwoD, 4).unwrap(),
            BigUint::from(8u32 * 6u32)
        );
        assert!(weyl_order(LieFamily::G2, 2).is_err());
    }

    #[test]
    fn fineness_classification() {
        let c = ctx();
        let fine = |fam, rank, q| is_fine(&LieTypeSpec::new(fam, rank, q, &c).unwrap());
        assert!(fine(LieFamily::A, 1, 4));
        assert!(!fine(LieFamily::A, 2, 4));
        assert!(!fine(LieFamily::E6, 6, 2));
        assert!(fine(LieFamily::TwoE6, 6, 2));
        assert!(fine(LieFamily::D, 4, 2));
        assert!(!fine(LieFamily::D, 5, 2));
        assert!(fine(LieFamily::TwoD, 5, 2));
        assert!(fine(LieFamily::B, 3, 3));
    }

    #[test]
    fn sigma_partition_l4_2() {
        let sigma = sigma_partition_linear(4, Sign::Plus, 2, &ctx()).unwrap();
        assert_eq!(sigma.sigma1, vec![5, 7]);
        assert_eq!(sigma.sigma2, vec![3]);
        assert_eq!(sigma.sigma3, vec![2]);
        assert_eq!(sigma.j_of[&7], 3);
        assert_eq!(sigma.j_of[&5], 4);
    }

    #[test]
    fn sigma_partition_l3_2_follows_the_definition() {
        // j ranges over 2 <= j <= 3 here, and 3 is primitive for (2, 2),
        // so sigma1 = {3, 7} and sigma2 is empty.
        let sigma = sigma_partition_linear(3, Sign::Plus, 2, &ctx()).unwrap();
        assert_eq!(sigma.sigma1, vec![3, 7]);
        assert_eq!(sigma.sigma2, Vec::<u64>::new());
        assert_eq!(sigma.sigma3, vec![2]);
    }

    #[test]
    fn sigma_partition_orthogonal_cases() {
        let c = ctx();
        let plus = sigma_partition_orthogonal(1, Sign::Plus, 2, &c).unwrap();
        assert_eq!(plus.sigma1, vec![7]);
        assert_eq!(plus.sigma3, vec![2]);
        assert_eq!(plus.sigma2, vec![3, 5]);
        // (2, 6) is the Zsigmondy exception: sigma1 empty.
        let minus = sigma_partition_orthogonal(1, Sign::Minus, 2, &c).unwrap();
        assert_eq!(minus.sigma1, Vec::<u64>::new());
        assert_eq!(minus.sigma3, vec![2]);
    }

    #[test]
    fn sigma_partitions_are_partitions() {
        let c = ctx();
        for (l, eps, q) in [
            (3u32, Sign::Plus, 2u64),
            (4, Sign::Plus, 2),
            (4, Sign::Plus, 3),
            (3, Sign::Minus, 2),
            (4, Sign::Minus, 3),
            (5, Sign::Plus, 2),
        ] {
            let sigma = sigma_partition_linear(l, eps, q, &c).unwrap();
            let order = order_linear(l, eps, q);
            let pi = factorize(&order, &c).unwrap().primes_u64().unwrap();
            assert_eq!(sigma.all_primes(), pi, "L_{}^{}({})", l, eps, q);
            for p in &sigma.sigma1 {
                assert!(!sigma.sigma2.contains(p) && !sigma.sigma3.contains(p));
            }
            for p in &sigma.sigma2 {
                assert!(!sigma.sigma3.contains(p));
            }
            // Re-verify sigma1 membership against the primitive-divisor
            // definition directly.
            for (&p, &j) in &sigma.j_of {
                let n = match eps {
                    Sign::Plus => j,
                    Sign::Minus => {
                        if j % 2 == 0 {
                            j
                        } else {
                            2 * j
                        }
                    }
                };
                let pb = BigUint::from(p);
                assert!(((BigUint::from(q).pow(n) - 1u32) % &pb).is_zero());
                for e in 1..n {
                    assert!(
                        !((BigUint::from(q).pow(e) - 1u32) % &pb).is_zero(),
                        "{} not primitive for ({}, {})",
                        p,
                        q,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn predictor_l4_2_matches_the_a8_arrows() {
        let c = ctx();
        let spec = LieTypeSpec::new(LieFamily::A, 4, 2, &c).unwrap();
        let arrows = predicted_edges(&spec, &c).unwrap();
        let pairs: Vec<(u64, u64)> = arrows.iter().map(|a| (a.from, a.to)).collect();
        assert_eq!(pairs, vec![(3, 2), (5, 2), (7, 3)]);
    }

    #[test]
    fn predictor_e6_includes_le3_le4() {
        let c = ctx();
        let spec = LieTypeSpec::new(LieFamily::E6, 6, 4, &c).unwrap();
        let arrows = predicted_edges(&spec, &c).unwrap();
        assert!(arrows.iter().any(|a| a.from == 3 && a.to == 2 && a.justification == "E6-R4"));
        assert!(arrows.iter().any(|a| a.from == 5 && a.to == 2));
        // s | q^4 + 1 = 257 (prime, >= 5): the quartic-torus rule applies.
        assert!(arrows.iter().any(|a| a.from == 257 && a.to == 2 && a.justification == "E6-R1"));
        for a in &arrows {
            assert_ne!(a.from, a.to);
        }
    }

    #[test]
    fn prime_power_splitting() {
        let c = ctx();
        assert_eq!(prime_power_split(27, &c).unwrap(), (3, 3));
        assert_eq!(prime_power_split(1024, &c).unwrap(), (2, 10));
        assert!(prime_power_split(12, &c).is_err());
        assert!(prime_power_split(1, &c).is_err());
    }
}
