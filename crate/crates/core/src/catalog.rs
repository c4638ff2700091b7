//! Constructors for the test groups: symmetric/alternating/cyclic/dihedral
//! families, direct products, projective groups over small finite fields,
//! the Mathieu groups from literal generator data, and the group
//! mini-language behind the CLI (`"A8"`, `"PSL2(27):3"`, `"S3 x C5"`, ...).
//!
//! Matrix groups are converted to permutation actions immediately; nothing
//! downstream ever sees a matrix.

#![allow(clippy::needless_range_loop)]

use crate::arith;
use crate::perm::Permutation;
use crate::{Ctx, Error, PermGroup, Result};
use num_bigint::BigUint;
use std::collections::HashMap;

/// Arithmetic of GF(r^t) for q = r^t <= 1024, with full operation tables.
/// Elements are indices 0..q; the index's base-r digits are the polynomial
/// coefficients modulo a fixed irreducible monic polynomial.
pub struct FiniteField {
    pub r: u64,
    pub t: u32,
    pub q: u64,
    /// Coefficients of the modulus, constant term first, length t+1.
    pub modulus: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
    primitive: u16,
}

impl FiniteField {
    pub fn new(q: u64, ctx: &Ctx) -> Result<FiniteField> {
        if !(2..=1024).contains(&q) {
            return Err(Error::Invalid(format!("field size {} out of range", q)));
        }
        let (r, t) = arith::prime_power_split(q, ctx)?;
        let modulus = find_irreducible(r, t);
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                add[a * qs + b] = add_digits(a as u64, b as u64, r) as u16;
                mul[a * qs + b] = mul_mod(a as u64, b as u64, r, t, &modulus) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u16;
                    break;
                }
            }
        }
        let mut inv = vec![0u16; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        let mut primitive = if q == 2 { 1u16 } else { 0u16 };
        for a in 2..qs {
            let mut x = a;
            let mut ord = 1u64;
            while x != 1 {
                x = mul[x * qs + a] as usize;
                ord += 1;
            }
            if ord == q - 1 {
                primitive = a as u16;
                break;
            }
        }
        if primitive == 0 {
            return Err(Error::Invalid("no primitive element found".into()));
        }
        Ok(FiniteField {
            r,
            t,
            q,
            modulus,
            add,
            mul,
            inv,
            neg,
            primitive,
        })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; 0 maps to 0 (callers guard).
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^(r^k).
    pub fn frobenius(&self, a: u16, k: u32) -> u16 {
        self.pow(a, self.r.pow(k))
    }
}

/// Digitwise base-r addition of indices (polynomial addition).
fn add_digits(a: u64, b: u64, r: u64) -> u64 {
    let mut out = 0u64;
    let mut place = 1u64;
    let (mut a, mut b) = (a, b);
    while a > 0 || b > 0 {
        out += ((a % r + b % r) % r) * place;
        a /= r;
        b /= r;
        place *= r;
    }
    out
}

fn index_to_poly(a: u64, r: u64) -> Vec<u16> {
    let mut digits = Vec::new();
    let mut a = a;
    while a > 0 {
        digits.push((a % r) as u16);
        a /= r;
    }
    digits
}

fn poly_to_index(p: &[u16], r: u64) -> u64 {
    let mut out = 0u64;
    for &c in p.iter().rev() {
        out = out * r + c as u64;
    }
    out
}

/// Polynomial multiplication of indices, reduced modulo the modulus.
fn mul_mod(a: u64, b: u64, r: u64, t: u32, modulus: &[u16]) -> u64 {
    let pa = index_to_poly(a, r);
    let pb = index_to_poly(b, r);
    if pa.is_empty() || pb.is_empty() {
        return 0;
    }
    let mut prod = vec![0u64; pa.len() + pb.len() - 1];
    for (i, &ca) in pa.iter().enumerate() {
        for (j, &cb) in pb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ca as u64 * cb as u64) % r;
        }
    }
    // Reduce: x^t = -(lower part of the modulus).
    for i in (t as usize..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..t as usize {
            let m = modulus[j] as u64;
            let sub = (c * m) % r;
            prod[i - t as usize + j] = (prod[i - t as usize + j] + r - sub) % r;
        }
    }
    prod.truncate(t as usize);
    let digits: Vec<u16> = prod.iter().map(|&c| c as u16).collect();
    poly_to_index(&digits, r)
}

/// Lexicographically smallest monic irreducible polynomial of degree t
/// over GF(r), as coefficients constant-first.
fn find_irreducible(r: u64, t: u32) -> Vec<u16> {
    if t == 1 {
        return vec![0, 1];
    }
    let mut coeffs = vec![0u16; t as usize + 1];
    coeffs[t as usize] = 1;
    let total = r.pow(t);
    for lower in 0..total {
        let digits = index_to_poly(lower, r);
        for i in 0..t as usize {
            coeffs[i] = digits.get(i).copied().unwrap_or(0);
        }
        if poly_is_irreducible(&coeffs, r) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist over every finite field");
}

fn poly_is_irreducible(p: &[u16], r: u64) -> bool {
    let deg = p.len() - 1;
    if p[0] == 0 {
        return false; // divisible by x
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = r.pow(d as u32);
        let mut divisor = vec![0u16; d + 1];
        for lower in 0..count {
            let digits = index_to_poly(lower, r);
            for i in 0..d {
                divisor[i] = digits.get(i).copied().unwrap_or(0);
            }
            divisor[d] = 1;
            if poly_divides(&divisor, p, r) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(d: &[u16], p: &[u16], r: u64) -> bool {
    // Remainder of p by monic d over GF(r), r prime.
    let mut rem: Vec<u64> = p.iter().map(|&c| c as u64).collect();
    let dd = d.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            for (i, &dc) in d.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = (rem[idx] + r * r - (lead * dc as u64) % r) % r;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

fn perm(cycles: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(cycles, degree).expect("literal permutation data")
}

fn check_order(g: PermGroup, expected: BigUint, what: &str) -> Result<PermGroup> {
    if g.order() != &expected {
        return Err(Error::Invalid(format!(
            "{}: constructed order {} but expected {}",
            what,
            g.order(),
            expected
        )));
    }
    Ok(g)
}

/// Symmetric group on n points (natural action).
pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 || n > 64 {
        return Err(Error::Invalid(format!(
            "symmetric degree {} out of range 1..=64",
            n
        )));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_images(swap_images(n, 0, 1))?);
    }
    if n >= 3 {
        gens.push(cycle_all(n));
    }
    let expected = (1..=n as u64).map(BigUint::from).product();
    check_order(PermGroup::from_generators(n, gens)?, expected, "symmetric")
}

/// Alternating group on n points.
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 || n > 64 {
        return Err(Error::Invalid(format!(
            "alternating degree {} out of range 1..=64",
            n
        )));
    }
    let mut gens = Vec::new();
    if n >= 3 {
        let mut images: Vec<u16> = (0..n as u16).collect();
        images[0] = 1;
        images[1] = 2;
        images[2] = 0;
        gens.push(Permutation::from_images(images)?);
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle_all(n));
        } else {
            // (2,3,...,n) fixing the first point: even for even n.
            let mut images: Vec<u16> = (0..n as u16).collect();
            for i in 1..n {
                images[i] = if i + 1 < n { (i + 1) as u16 } else { 1 };
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    let mut expected: BigUint = (1..=n as u64).map(BigUint::from).product();
    if n >= 2 {
        expected /= 2u32;
    }
    check_order(PermGroup::from_generators(n, gens)?, expected, "alternating")
}

fn swap_images(n: usize, a: usize, b: usize) -> Vec<u16> {
    let mut images: Vec<u16> = (0..n as u16).collect();
    images.swap(a, b);
    images
}

fn cycle_all(n: usize) -> Permutation {
    let images: Vec<u16> = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
    Permutation::from_raw(images)
}

/// Cyclic group of order n (one n-cycle).
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 || n > 4096 {
        return Err(Error::Invalid(format!("cyclic order {} out of range", n)));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    check_order(
        PermGroup::from_generators(n, vec![cycle_all(n)])?,
        BigUint::from(n),
        "cyclic",
    )
}

/// Dihedral group of order 2n, acting on n points (order >= 6).
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if !order.is_multiple_of(2) || !(6..=8192).contains(&order) {
        return Err(Error::Invalid(format!(
            "dihedral order {} must be even and >= 6",
            order
        )));
    }
    let n = order / 2;
    let rot = cycle_all(n);
    let refl_images: Vec<u16> = (0..n as u16)
        .map(|i| ((n as u16) - i) % n as u16)
        .collect();
    let refl = Permutation::from_images(refl_images)?;
    check_order(
        PermGroup::from_generators(n, vec![rot, refl])?,
        BigUint::from(order),
        "dihedral",
    )
}

/// The Frobenius group of order 20 (x -> ax + b over GF(5)).
pub fn frobenius20() -> Result<PermGroup> {
    let g = PermGroup::from_generators(5, vec![perm("(1,2,3,4,5)", 5), perm("(2,3,5,4)", 5)])?;
    check_order(g, BigUint::from(20u32), "F20")
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let da = a.degree();
    let db = b.degree();
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for x in 0..da {
            images[x] = g.apply(x as u16);
        }
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for x in 0..db {
            images[da + x] = g.apply(x as u16) + da as u16;
        }
        gens.push(Permutation::from_images(images)?);
    }
    let expected = a.order() * b.order();
    check_order(
        PermGroup::from_generators(degree, gens)?,
        expected,
        "direct product",
    )
}

/// Projective line indexing: affine x at index x, infinity at index q.
struct ProjLine {
    field: FiniteField,
}

impl ProjLine {
    fn infinity(&self) -> u16 {
        self.field.q as u16
    }

    fn degree(&self) -> usize {
        self.field.q as usize + 1
    }

    fn map(&self, f: impl Fn(u16) -> u16, image_of_infinity: u16) -> Result<Permutation> {
        let mut images = vec![0u16; self.degree()];
        for x in 0..self.field.q as u16 {
            images[x as usize] = f(x);
        }
        images[self.infinity() as usize] = image_of_infinity;
        Permutation::from_images(images)
    }
}

fn psl2_generators(line: &ProjLine) -> Result<Vec<Permutation>> {
    let f = &line.field;
    let inf = line.infinity();
    let mut gens = Vec::new();
    // Translations x -> x + basis element.
    for i in 0..f.t {
        let a = f.r.pow(i) as u16;
        gens.push(line.map(|x| f.add(x, a), inf)?);
    }
    // x -> z^2 x for the primitive z (squares of the diagonal torus).
    let z2 = f.mul(f.primitive(), f.primitive());
    if z2 != 1 {
        gens.push(line.map(|x| f.mul(z2, x), inf)?);
    }
    // w: x -> -1/x, swapping 0 and infinity.
    let w = {
        let mut images = vec![0u16; line.degree()];
        for x in 0..f.q as u16 {
            images[x as usize] = if x == 0 { inf } else { f.neg(f.inv(x)) };
        }
        images[inf as usize] = 0;
        Permutation::from_images(images)?
    };
    gens.push(w);
    Ok(gens)
}

/// PSL(2, q) acting on the projective line (q + 1 points).
pub fn psl2(q: u64, ctx: &Ctx) -> Result<PermGroup> {
    let field = FiniteField::new(q, ctx)?;
    let line = ProjLine { field };
    let gens = psl2_generators(&line)?;
    let qb = BigUint::from(q);
    let expected = &qb * (&qb * &qb - 1u32) / BigUint::from(if q.is_multiple_of(2) { 1u32 } else { 2u32 });
    check_order(
        PermGroup::from_generators(line.degree(), gens)?,
        expected,
        "PSL2",
    )
}

/// PGL(2, q) on the projective line.
pub fn pgl2(q: u64, ctx: &Ctx) -> Result<PermGroup> {
    let field = FiniteField::new(q, ctx)?;
    let line = ProjLine { field };
    let mut gens = psl2_generators(&line)?;
    let z = line.field.primitive();
    if z != 1 {
        let f = &line.field;
        gens.push(line.map(|x| f.mul(z, x), line.infinity())?);
    }
    let qb = BigUint::from(q);
    let expected = &qb * (&qb * &qb - 1u32);
    check_order(
        PermGroup::from_generators(line.degree(), gens)?,
        expected,
        "PGL2",
    )
}

/// PSL(2, q) extended by the field automorphism of order k (k | t, k > 1):
/// generated by PSL(2, q) together with x -> x^(r^(t/k)) on the line.
pub fn psl2_field_extension(q: u64, k: u32, ctx: &Ctx) -> Result<PermGroup> {
    let field = FiniteField::new(q, ctx)?;
    if k <= 1 || field.t % k != 0 {
        return Err(Error::Invalid(format!(
            "extension degree {} must be > 1 and divide t = {}",
            k, field.t
        )));
    }
    let line = ProjLine { field };
    let mut gens = psl2_generators(&line)?;
    let f = &line.field;
    let power = f.t / k;
    gens.push(line.map(|x| f.frobenius(x, power), line.infinity())?);
    let qb = BigUint::from(q);
    let expected = &qb * (&qb * &qb - 1u32) / BigUint::from(if q.is_multiple_of(2) { 1u32 } else { 2u32 })
        * BigUint::from(k);
    check_order(
        PermGroup::from_generators(line.degree(), gens)?,
        expected,
        "PSL2 field extension",
    )
}

/// PSL(m, q) for m <= 4 acting on the projective points.
pub fn psl(m: u32, q: u64, ctx: &Ctx) -> Result<PermGroup> {
    if !(2..=4).contains(&m) {
        return Err(Error::Invalid(format!("psl rank {} out of range 2..=4", m)));
    }
    let field = FiniteField::new(q, ctx)?;
    let m = m as usize;
    let num_points = {
        let mut power = 1u64;
        let mut acc = 0u64;
        for _ in 0..m {
            acc += power;
            power *= q;
        }
        acc
    };
    if num_points > 200 {
        return Err(Error::Invalid(format!(
            "projective space with {} points exceeds the 200-point bound",
            num_points
        )));
    }
    // Projective points: vectors with first nonzero coordinate 1.
    let mut points: Vec<Vec<u16>> = Vec::new();
    let mut index: HashMap<Vec<u16>, u16> = HashMap::new();
    let mut v = vec![0u16; m];
    loop {
        if let Some(first) = v.iter().position(|&c| c != 0) {
            if v[first] == 1 {
                index.insert(v.clone(), points.len() as u16);
                points.push(v.clone());
            }
        }
        let mut i = 0;
        while i < m {
            v[i] += 1;
            if (v[i] as u64) < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    debug_assert_eq!(points.len() as u64, num_points);
    let normalize = |w: &mut Vec<u16>| {
        let first = w.iter().position(|&c| c != 0).expect("nonzero vector");
        let c = w[first];
        if c != 1 {
            let cinv = field.inv(c);
            for coord in w.iter_mut() {
                *coord = field.mul(*coord, cinv);
            }
        }
    };
    // Transvection generators: e_j -> e_j + lambda e_i.
    let mut gens = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            for s in 0..field.t {
                let lambda = field.r.pow(s) as u16;
                let mut images = vec![0u16; points.len()];
                for (pi, p) in points.iter().enumerate() {
                    let mut w = p.clone();
                    w[i] = field.add(w[i], field.mul(lambda, p[j]));
                    normalize(&mut w);
                    images[pi] = index[&w];
                }
                gens.push(Permutation::from_images(images)?);
            }
        }
    }
    let expected = arith::order_linear(m as u32, arith::Sign::Plus, q);
    check_order(
        PermGroup::from_generators(points.len(), gens)?,
        expected,
        "PSL",
    )
}

/// Mathieu groups from classical generator data. The literals are verified
/// here by order (and by transitivity in tests), not trusted blindly.
pub fn mathieu(n: usize) -> Result<PermGroup> {
    let (degree, gens, order): (usize, Vec<Permutation>, u64) = match n {
        11 => (
            11,
            vec![
                perm("(1,2,3,4,5,6,7,8,9,10,11)", 11),
                perm("(3,7,11,8)(4,10,5,6)", 11),
            ],
            7_920,
        ),
        12 => (
            12,
            vec![
                perm("(1,2,3,4,5,6,7,8,9,10,11)", 12),
                perm("(3,7,11,8)(4,10,5,6)", 12),
                perm("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12),
            ],
            95_040,
        ),
        // Generators of the stabilizer of the last point in the 23-point
        // action below, restricted to the 22 moved points.
        22 => (
            22,
            vec![
                perm(
                    "(1,16,7)(2,17)(3,9,18)(4,5,19,20,14,11)(6,21,8,10,22,13)(12,15)",
                    22,
                ),
                perm("(1,10,5,15,21)(2,3,4,19,13)(7,8,11,9,20)(12,14,16,22,18)", 22),
            ],
            443_520,
        ),
        23 => (
            23,
            vec![
                perm(
                    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
                    23,
                ),
                perm(
                    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
                    23,
                ),
            ],
            10_200_960,
        ),
        24 => (
            24,
            vec![
                perm(
                    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
                    24,
                ),
                perm(
                    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
                    24,
                ),
                perm(
                    "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
                    24,
                ),
            ],
            244_823_040,
        ),
        other => {
            return Err(Error::Invalid(format!(
                "mathieu({}) unsupported; n must be one of 11, 12, 22, 23, 24",
                other
            )))
        }
    };
    check_order(
        PermGroup::from_generators(degree, gens)?,
        BigUint::from(order),
        "mathieu",
    )
}

/// Parses the group mini-language.
///
/// Grammar (whitespace-separated tokens):
///   expr  := atom ("x" atom)*
///   atom  := "S"n | "A"n | "C"n | "D"n (n = order) | "F20"
///          | "M11" | "M12" | "M22" | "M23" | "M24"
///          | "PSL2(" q ")" [":" k] | "PGL2(" q ")"
///          | "PSL3(" q ")" | "PSL4(" q ")"
pub fn parse_group(text: &str, ctx: &Ctx) -> Result<(String, PermGroup)> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty group expression".into(),
        });
    }
    let mut groups: Vec<(String, PermGroup)> = Vec::new();
    let mut expect_atom = true;
    for (pos, tok) in tokens {
        if expect_atom {
            groups.push(parse_atom(&tok, pos, ctx)?);
            expect_atom = false;
        } else {
            if tok != "x" {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected 'x' between factors, found '{}'", tok),
                });
            }
            expect_atom = true;
        }
    }
    if expect_atom {
        return Err(Error::Parse {
            pos: text.len(),
            msg: "trailing 'x' without a factor".into(),
        });
    }
    let mut iter = groups.into_iter();
    let (mut label, mut acc) = iter.next().expect("nonempty");
    for (l, g) in iter {
        acc = direct_product(&acc, &g)?;
        label = format!("{} x {}", label, l);
    }
    Ok((label, acc))
}

fn tokenize(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if !current.is_empty() {
                out.push((start, std::mem::take(&mut current)));
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((start, current));
    }
    out
}

fn parse_atom(tok: &str, pos: usize, ctx: &Ctx) -> Result<(String, PermGroup)> {
    let err = |msg: String| Error::Parse { pos, msg };
    let parse_num = |s: &str, what: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| err(format!("invalid {} '{}'", what, s)))
    };
    let group = if let Some(rest) = tok.strip_prefix("PSL2(") {
        let (q_str, tail) = rest
            .split_once(')')
            .ok_or_else(|| err("missing ')'".into()))?;
        let q = parse_num(q_str, "field size")?;
        if let Some(k_str) = tail.strip_prefix(':') {
            let k = parse_num(k_str, "extension degree")? as u32;
            psl2_field_extension(q, k, ctx)?
        } else if tail.is_empty() {
            psl2(q, ctx)?
        } else {
            return Err(err(format!("unexpected trailing '{}'", tail)));
        }
    } else if let Some(rest) = tok.strip_prefix("PGL2(") {
        let q_str = rest
            .strip_suffix(')')
            .ok_or_else(|| err("missing ')'".into()))?;
        pgl2(parse_num(q_str, "field size")?, ctx)?
    } else if let Some(rest) = tok.strip_prefix("PSL3(") {
        let q_str = rest
            .strip_suffix(')')
            .ok_or_else(|| err("missing ')'".into()))?;
        psl(3, parse_num(q_str, "field size")?, ctx)?
    } else if let Some(rest) = tok.strip_prefix("PSL4(") {
        let q_str = rest
            .strip_suffix(')')
            .ok_or_else(|| err("missing ')'".into()))?;
        psl(4, parse_num(q_str, "field size")?, ctx)?
    } else if tok == "F20" {
        frobenius20()?
    } else if let Some(rest) = tok.strip_prefix('M') {
        mathieu(parse_num(rest, "Mathieu degree")? as usize)?
    } else if let Some(rest) = tok.strip_prefix('S') {
        symmetric(parse_num(rest, "degree")? as usize)?
    } else if let Some(rest) = tok.strip_prefix('A') {
        alternating(parse_num(rest, "degree")? as usize)?
    } else if let Some(rest) = tok.strip_prefix('C') {
        cyclic(parse_num(rest, "order")? as usize)?
    } else if let Some(rest) = tok.strip_prefix('D') {
        dihedral(parse_num(rest, "order")? as usize)?
    } else {
        return Err(err(format!("unknown group '{}'", tok)));
    };
    Ok((tok.to_string(), group))
}

/// Deterministic catalog of groups with order at most `max_order`, used by
/// the property and formation suites.
pub fn small_catalog(max_order: u64, ctx: &Ctx) -> Result<Vec<(String, PermGroup)>> {
    let specs: Vec<&str> = vec![
        "C2", "C3", "C4", "C5", "C6", "C8", "C9", "C10", "C12", "C15", "C20", "C30",
        "D6", "D8", "D10", "D12", "D16", "D20", "D24",
        "S3", "S4", "S5", "S6", "S7",
        "A4", "A5", "A6", "A7", "A8",
        "F20",
        "PSL2(4)", "PSL2(7)", "PSL2(8)", "PSL2(9)", "PSL2(11)", "PSL2(13)",
        "PGL2(5)", "PGL2(7)",
        "PSL3(2)", "PSL3(3)",
        "M11",
        "S3 x C5", "C2 x A4", "D10 x C3", "S4 x C2", "C6 x S3", "F20 x C3",
        "S3 x S3", "D10 x C2", "C3 x C5", "S4 x S3", "C7 x D6",
    ];
    let mut out = Vec::new();
    for spec in specs {
        let (label, g) = parse_group(spec, ctx)?;
        if g.order_u64().is_some_and(|n| n <= max_order) {
            out.push((label, g));
        }
    }
    Ok(out)
}

/// The soluble sub-corpus (used by the formation suites).
pub fn soluble_catalog(max_order: u64, ctx: &Ctx) -> Result<Vec<(String, PermGroup)>> {
    let mut out = Vec::new();
    for (label, g) in small_catalog(max_order, ctx)? {
        if crate::subgrp::is_soluble(&g, ctx)? {
            out.push((label, g));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::default()
    }

    #[test]
    fn field_axioms_hold_exhaustively_for_small_q() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FiniteField::new(q, &ctx()).unwrap();
            let n = q as u16;
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inverse in GF({})", q);
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Primitive element has full multiplicative order.
            if q > 2 {
                let z = f.primitive();
                let mut x = z;
                let mut ord = 1;
                while x != 1 {
                    x = f.mul(x, z);
                    ord += 1;
                }
                assert_eq!(ord, q - 1);
            }
        }
    }

    #[test]
    fn classical_family_orders() {
        assert_eq!(symmetric(5).unwrap().order(), &BigUint::from(120u32));
        assert_eq!(alternating(8).unwrap().order(), &BigUint::from(20160u32));
        assert_eq!(cyclic(12).unwrap().order(), &BigUint::from(12u32));
        assert_eq!(dihedral(10).unwrap().order(), &BigUint::from(10u32));
        assert_eq!(frobenius20().unwrap().order(), &BigUint::from(20u32));
        let prod = direct_product(&symmetric(3).unwrap(), &cyclic(5).unwrap()).unwrap();
        assert_eq!(prod.order(), &BigUint::from(30u32));
    }

    #[test]
    fn psl2_orders_and_transitivity() {
        let c = ctx();
        for (q, expected) in [
            (4u64, 60u64),
            (5, 60),
            (7, 168),
            (8, 504),
            (9, 360),
            (11, 660),
            (27, 9828),
        ] {
            let g = psl2(q, &c).unwrap();
            assert_eq!(g.order(), &BigUint::from(expected), "PSL2({})", q);
            assert!(g.is_transitive());
        }
        assert_eq!(pgl2(5, &c).unwrap().order(), &BigUint::from(120u32));
        assert_eq!(pgl2(7, &c).unwrap().order(), &BigUint::from(336u32));
    }

    #[test]
    fn psl2_is_2_transitive() {
        let c = ctx();
        for q in [4u64, 5, 7, 9, 11] {
            let g = psl2(q, &c).unwrap();
            let stab = g.point_stabilizer(0).unwrap();
            let orbits = stab.orbits();
            let nontrivial: Vec<_> = orbits.iter().filter(|o| o.len() > 1).collect();
            assert_eq!(nontrivial.len(), 1, "PSL2({}) stabilizer orbits", q);
            assert_eq!(nontrivial[0].len(), g.degree() - 1);
        }
    }

    #[test]
    fn psl2_field_extensions() {
        let c = ctx();
        let g = psl2_field_extension(27, 3, &c).unwrap();
        assert_eq!(g.order(), &BigUint::from(29484u32));
        let g = psl2_field_extension(32, 5, &c).unwrap();
        assert_eq!(g.order(), &BigUint::from(163680u32));
        assert!(psl2_field_extension(27, 2, &c).is_err());
    }

    #[test]
    fn psl_small_ranks() {
        let c = ctx();
        assert_eq!(psl(4, 2, &c).unwrap().order(), &BigUint::from(20160u32));
        assert_eq!(psl(3, 2, &c).unwrap().order(), &BigUint::from(168u32));
        assert_eq!(psl(3, 3, &c).unwrap().order(), &BigUint::from(5616u32));
        // Same order as A_8 (the exceptional isomorphism, used as an oracle).
        assert_eq!(
            psl(4, 2, &c).unwrap().order(),
            alternating(8).unwrap().order()
        );
    }

    #[test]
    fn mathieu_small_are_transitive() {
        assert!(mathieu(11).unwrap().is_transitive());
        assert!(mathieu(12).unwrap().is_transitive());
        assert!(mathieu(13).is_err());
    }

    #[test]
    fn parser_roundtrip_and_errors() {
        let c = ctx();
        let (label, g) = parse_group("A8", &c).unwrap();
        assert_eq!(label, "A8");
        assert_eq!(g.order(), &BigUint::from(20160u32));
        let (label, g) = parse_group("S3 x C5", &c).unwrap();
        assert_eq!(label, "S3 x C5");
        assert_eq!(g.order(), &BigUint::from(30u32));
        let (_, g) = parse_group("PSL2(27):3", &c).unwrap();
        assert_eq!(g.order(), &BigUint::from(29484u32));
        assert!(parse_group("Q8", &c).is_err());
        assert!(parse_group("S3 x", &c).is_err());
        assert!(matches!(parse_group("S3 y C5", &c), Err(Error::Parse { .. })));
    }
}

#[cfg(test)]
mod more_tests {
    use super::*;

    #[test]
    fn large_mathieu_groups_are_transitive() {
        for n in [22usize, 23, 24] {
            assert!(mathieu(n).unwrap().is_transitive(), "M{}", n);
        }
    }
}
