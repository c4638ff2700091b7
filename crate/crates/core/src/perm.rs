//! Finite permutations on the points `0..degree`.
//!
//! Composition is applied left first: `compose(a, b)` is the map
//! `x -> b(a(x))`, so that conjugation `z^g = g^-1 z g` matches the usual
//! right-action convention `x^(zg) = (x^z)^g`. Points are 0-indexed
//! internally; cycle notation (parser and printer) is 1-indexed.

use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// Identity on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::NotBijective {
                    degree: n,
                    value: x as usize,
                });
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `compose(a, b)`: apply `a` first, then `b`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let mut images = Vec::with_capacity(self.images.len());
        for &x in &self.images {
            images.push(other.images[x as usize]);
        }
        Permutation { images }
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Permutation {
        Permutation { images }
    }

    /// `self = a then b`, reusing this permutation's buffer.
    /// `self` must not alias `a` or `b`.
    pub(crate) fn assign_compose(&mut self, a: &Permutation, b: &Permutation) {
        self.images.clear();
        for &x in &a.images {
            self.images.push(b.images[x as usize]);
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    /// Conjugate `self^g = g^-1 * self * g` (right action).
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch(self.degree(), g.degree()));
        }
        let mut images = vec![0u16; self.images.len()];
        for (x, &gx) in g.images.iter().enumerate() {
            // (g^-1 z g)(g(x)) = g(z(x))
            images[gx as usize] = g.images[self.images[x] as usize];
        }
        Ok(Permutation { images })
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        debug_assert_eq!(self.degree(), other.degree());
        for x in 0..self.images.len() {
            if self.images[other.images[x] as usize] != other.images[self.images[x] as usize] {
                return false;
            }
        }
        true
    }

    /// self^k for k >= 0.
    pub fn pow(&self, mut k: u128) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Cycles of length >= 2, each rotated to start at its smallest point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start as u16];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x as u16);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for c in self.cycles() {
            acc = num_integer::lcm(acc, c.len() as u128);
        }
        acc
    }

    pub fn moved_points(&self) -> Vec<u16> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i as u16)
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<u16> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .map(|(i, _)| i as u16)
            .collect()
    }

    pub fn smallest_moved_point(&self) -> Option<u16> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i as u16)
    }

    /// Parses 1-indexed cycle notation, e.g. `"(1,2,3)(4,5)"`; `"()"` is the
    /// identity. Whitespace between tokens is ignored.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let bytes: Vec<char> = text.chars().collect();
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        let mut i = 0usize;
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let mut any = false;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c != '(' {
                return Err(err(i, "expected '('"));
            }
            i += 1;
            let mut cycle: Vec<u16> = Vec::new();
            loop {
                while i < bytes.len() && bytes[i].is_whitespace() {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(err(i, "unterminated cycle"));
                }
                if bytes[i] == ')' {
                    i += 1;
                    break;
                }
                let start = i;
                let mut val: usize = 0;
                let mut digits = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    val = val * 10 + (bytes[i] as usize - '0' as usize);
                    digits += 1;
                    i += 1;
                }
                if digits == 0 {
                    return Err(err(i, "expected a point"));
                }
                if val == 0 || val > degree {
                    return Err(err(start, "point out of range (points are 1-indexed)"));
                }
                let pt = (val - 1) as u16;
                if touched[pt as usize] {
                    return Err(err(start, "point repeated"));
                }
                touched[pt as usize] = true;
                cycle.push(pt);
                while i < bytes.len() && bytes[i].is_whitespace() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == ',' {
                    i += 1;
                }
            }
            any = true;
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    let from = cycle[w];
                    let to = cycle[(w + 1) % cycle.len()];
                    images[from as usize] = to;
                }
            }
        }
        if !any {
            return Err(err(0, "empty input (identity is \"()\")"));
        }
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn compose_applies_left_first() {
        // (0 1) then (1 2), written 1-indexed.
        let a = perm("(1,2)", 3);
        let b = perm("(2,3)", 3);
        let c = a.compose(&b).unwrap();
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1.
        assert_eq!(c.images(), &[2, 0, 1]);
        assert_eq!(c.to_string(), "(1,3,2)");
    }

    #[test]
    fn identity_and_inverse_laws() {
        let p = perm("(1,4,2)(3,5)", 6);
        let id = Permutation::identity(6);
        assert_eq!(p.compose(&id).unwrap(), p);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        assert_eq!(perm("(1,2,3)(4,5)", 5).order(), 6);
        assert_eq!(perm("(1,2,3,4,5,6,7)", 7).order(), 7);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn conjugation_is_a_right_action() {
        let z = perm("(1,2,3)", 5);
        let g = perm("(1,4)(2,5)", 5);
        let h = perm("(3,4)", 5);
        let once = z.conjugate_by(&g).unwrap().conjugate_by(&h).unwrap();
        let both = z.conjugate_by(&g.compose(&h).unwrap()).unwrap();
        assert_eq!(once, both);
        // z^g relabels the cycle through g.
        assert_eq!(z.conjugate_by(&g).unwrap().to_string(), "(3,4,5)");
    }

    #[test]
    fn parser_round_trips_and_rejects_garbage() {
        for text in ["(1,2,3)(4,5)", "(2,6)", "()"] {
            let p = if text == "()" {
                Permutation::identity(6)
            } else {
                perm(text, 6)
            };
            assert_eq!(Permutation::parse_cycles(&p.to_string(), 6).unwrap(), p);
        }
        assert!(Permutation::parse_cycles("(0,1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::parse_cycles("(1,4)", 3).is_err());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch(3, 4))));
    }
}
