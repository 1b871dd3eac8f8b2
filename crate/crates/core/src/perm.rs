//! Permutations of the points `1..=degree` and the cycle notation used to
//! read and write them.
//!
//! Products use the right-action convention: in `p.compose(&q)` the
//! permutation `p` acts first, so `(p*q)(x) = q(p(x))`. A word
//! `a^i b^j` therefore applies `a` `i` times and then `b` `j` times.
//! The catalog checks this convention against the printed Mathieu
//! elements (see `catalog::derived_element_check`).
//!
//! Points are 1-based in every public API that takes or returns a point.
//! [`Permutation::images`] exposes the internal 0-based image array.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid degree {0}: a permutation needs at least one point")]
    InvalidDegree(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection of 1..={degree}")]
    NotBijective { degree: usize },
    #[error("parse error at byte {position} near `{near}`: {message}")]
    Parse {
        position: usize,
        near: String,
        message: String,
    },
}

/// A bijection of `{1, ..., degree}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::InvalidDegree(0));
        }
        Ok(Self::identity_unchecked(degree))
    }

    pub(crate) fn identity_unchecked(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[p - 1]` is the
    /// image of point `p`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::InvalidDegree(0));
        }
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree || seen[img - 1] {
                return Err(PermError::NotBijective { degree });
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// 0-based images; caller guarantees a bijection.
    #[cfg(test)]
    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!(!images.is_empty());
        Permutation { images }
    }

    /// Builds a permutation of `degree` points from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        CycleExpr {
            cycles: cycles.to_vec(),
            declared_degree: Some(degree),
        }
        .to_permutation()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// The internal 0-based image array.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// 1-based images, the inverse of [`Permutation::from_images`].
    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> Result<usize, PermError> {
        if point == 0 || point > self.degree() {
            return Err(PermError::PointOutOfRange {
                point,
                degree: self.degree(),
            });
        }
        Ok(self.images[point - 1] as usize + 1)
    }

    #[inline]
    pub(crate) fn image0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` acts first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked product for internal hot paths (degrees must agree).
    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// Writes `self * other` into `out` without allocating.
    #[inline]
    pub(crate) fn then_into(&self, other: &Permutation, out: &mut Permutation) {
        for (o, &x) in out.images.iter_mut().zip(&self.images) {
            *o = other.images[x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `k`-fold product; negative `k` powers the inverse.
    pub fn power(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity_unchecked(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.then(&sq);
            }
        }
        acc
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Smallest moved point (1-based), if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.first_moved0().map(|p| p + 1)
    }

    pub(crate) fn first_moved0(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Length of the cycle through a 0-based point.
    pub(crate) fn cycle_len0(&self, point: usize) -> usize {
        let mut len = 1;
        let mut x = self.image0(point);
        while x != point {
            x = self.image0(x);
            len += 1;
        }
        len
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its
    /// smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image0(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image0(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut acc = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image0(x);
            }
            acc = lcm(acc, len);
        }
        acc
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses cycle notation; `degree` defaults to the largest point named.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let mut expr = CycleExpr::parse(text)?;
        if degree.is_some() {
            expr.declared_degree = degree;
        }
        expr.to_permutation()
    }

    /// Canonical cycle string; the identity prints as `()`.
    pub fn to_cycles(&self) -> String {
        self.to_string()
    }

    /// Same permutation on `degree >= self.degree()` points, fixing the new
    /// points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, None)
    }
}

/// A parsed cycle expression before it is bound to a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleExpr {
    pub cycles: Vec<Vec<usize>>,
    pub declared_degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Int(usize),
}

struct Lexer<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    /// Starts of the last two tokens, for error context.
    prev_start: usize,
    last_start: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            prev_start: 0,
            last_start: 0,
        }
    }

    fn error(&self, position: usize, end: usize, message: impl Into<String>) -> PermError {
        let start = self.prev_start.min(position);
        let end = end.max(position).min(self.text.len());
        PermError::Parse {
            position,
            near: self.text[start..end].to_string(),
            message: message.into(),
        }
    }

    /// Next token with its byte offset, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(Token, usize)>, PermError> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let Some(&b) = self.bytes.get(self.pos) else {
            return Ok(None);
        };
        let start = self.pos;
        let tok = match b {
            b'(' => {
                self.pos += 1;
                Token::Open
            }
            b')' => {
                self.pos += 1;
                Token::Close
            }
            b',' => {
                self.pos += 1;
                Token::Comma
            }
            b'1'..=b'9' => {
                let mut value: usize = 0;
                while let Some(d @ b'0'..=b'9') = self.bytes.get(self.pos).copied() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((d - b'0') as usize))
                        .ok_or_else(|| self.error(start, self.pos + 1, "integer too large"))?;
                    self.pos += 1;
                }
                Token::Int(value)
            }
            b'0' => return Err(self.error(start, start + 1, "points start at 1")),
            _ => {
                let ch_len = self.text[start..].chars().next().map_or(1, char::len_utf8);
                return Err(self.error(start, start + ch_len, "unexpected character"));
            }
        };
        Ok(Some((tok, start)))
    }

    fn bump(&mut self) -> Result<Option<(Token, usize)>, PermError> {
        let t = self.next()?;
        self.prev_start = self.last_start;
        self.last_start = t.map_or(self.pos, |(_, s)| s);
        Ok(t)
    }
}

impl CycleExpr {
    /// Parses `expr := "()" | cycle+ ; cycle := "(" int ("," int)+ ")"`.
    pub fn parse(text: &str) -> Result<CycleExpr, PermError> {
        let mut lx = Lexer::new(text);
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::HashSet::new();

        let mut tok = lx.bump()?;
        if tok.is_none() {
            return Err(lx.error(0, text.len(), "empty expression"));
        }
        while let Some((t, at)) = tok {
            if t != Token::Open {
                return Err(lx.error(at, at + 1, "expected `(`"));
            }
            let mut cycle = Vec::new();
            loop {
                let next = lx.bump()?;
                match next {
                    Some((Token::Int(p), pos)) => {
                        if !seen.insert(p) {
                            return Err(lx.error(pos, lx.pos, format!("point {p} repeated")));
                        }
                        cycle.push(p);
                        match lx.bump()? {
                            Some((Token::Comma, _)) => continue,
                            Some((Token::Close, pos)) => {
                                if cycle.len() < 2 {
                                    return Err(lx.error(
                                        pos,
                                        pos + 1,
                                        "a cycle needs at least two points",
                                    ));
                                }
                                break;
                            }
                            Some((_, pos)) => {
                                return Err(lx.error(
                                    pos,
                                    pos + 1,
                                    format!("expected `,` or `)` after {p}"),
                                ));
                            }
                            None => return Err(lx.error(text.len(), text.len(), "unclosed cycle")),
                        }
                    }
                    Some((Token::Close, pos)) if cycle.is_empty() => {
                        // "()" is only valid as the whole expression.
                        if !cycles.is_empty() || lx.bump()?.is_some() {
                            return Err(lx.error(pos, pos + 1, "`()` must stand alone"));
                        }
                        return Ok(CycleExpr {
                            cycles: Vec::new(),
                            declared_degree: None,
                        });
                    }
                    Some((_, pos)) => return Err(lx.error(pos, pos + 1, "expected a point")),
                    None => return Err(lx.error(text.len(), text.len(), "unclosed cycle")),
                }
            }
            cycles.push(cycle);
            tok = lx.bump()?;
        }
        Ok(CycleExpr {
            cycles,
            declared_degree: None,
        })
    }

    pub fn max_point(&self) -> Option<usize> {
        self.cycles.iter().flatten().copied().max()
    }

    pub fn to_permutation(&self) -> Result<Permutation, PermError> {
        let degree = match self.declared_degree {
            Some(d) => d,
            None => self.max_point().unwrap_or(1),
        };
        if degree == 0 {
            return Err(PermError::InvalidDegree(0));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in &self.cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if seen[p - 1] {
                    return Err(PermError::NotBijective { degree });
                }
                seen[p - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(PermError::PointOutOfRange {
                        point: next,
                        degree,
                    });
                }
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }
}
