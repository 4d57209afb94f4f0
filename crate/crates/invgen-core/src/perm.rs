//! Permutations of `{0, …, n-1}` stored as image sequences.
//!
//! Composition is left-to-right throughout the crate: `(p * q)(x) = q(p(x))`.
//! Points are 0-indexed internally; cycle notation reads and prints 1-indexed
//! points to match the usual mathematical convention.

use crate::error::{GroupError, Result};
use std::fmt;

/// A permutation of `{0, …, degree-1}`, stored as the sequence of images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// Builds a permutation from an image sequence, validating bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(GroupError::InvalidPermutation(format!(
                "degree {n} exceeds supported maximum"
            )));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image sequence {images:?} is not a bijection"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Left-to-right composition: the result maps `x` to `q(p(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        let images = self.images.iter().map(|&x| q.images[x as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    /// Conjugate `self^g = g^{-1} self g` (maps `g(x)` to `g(self(x))`).
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation> {
        if self.degree() != g.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), g.degree()));
        }
        let mut images = vec![0u16; self.degree()];
        for x in 0..self.degree() {
            images[g.images[x] as usize] = g.images[self.images[x] as usize];
        }
        Ok(Permutation { images })
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .count()
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Parses cycle notation with 1-indexed points, e.g. `"(1,2,3)(4,5)"`.
    /// Whitespace is ignored; `"()"` denotes the identity. The permutation is
    /// padded to `degree` points.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let bytes = text.as_bytes();
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        let mut i = 0usize;
        let syntax = |offset: usize, message: &str| GroupError::CycleSyntax {
            offset,
            message: message.to_string(),
        };
        let mut any_cycle = false;
        while i < bytes.len() {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i == bytes.len() {
                break;
            }
            if bytes[i] != b'(' {
                return Err(syntax(i, "expected '('"));
            }
            i += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start {
                    return Err(syntax(i, "expected point number or ')'"));
                }
                let val: usize = text[start..i]
                    .parse()
                    .map_err(|_| syntax(start, "point number out of range"))?;
                if val == 0 {
                    return Err(syntax(start, "points are 1-indexed"));
                }
                if val > degree {
                    return Err(syntax(
                        start,
                        &format!("point {val} exceeds degree {degree}"),
                    ));
                }
                cycle.push(val - 1);
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b',' {
                    i += 1;
                } else if i < bytes.len() && bytes[i] == b')' {
                    i += 1;
                    break;
                } else {
                    return Err(syntax(i, "expected ',' or ')'"));
                }
            }
            any_cycle = true;
            for &p in &cycle {
                if moved[p] {
                    return Err(syntax(0, &format!("point {} appears twice", p + 1)));
                }
                moved[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()] as u16;
            }
        }
        if !any_cycle {
            return Err(syntax(0, "empty permutation text"));
        }
        Permutation::from_images(images)
    }

    /// Prints disjoint cycles with 1-indexed points; identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(',');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}
