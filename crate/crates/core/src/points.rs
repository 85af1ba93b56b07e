//! Finite sets of nonnegative integer vectors.
//!
//! Text format:
//!
//! ```text
//! points n d count
//! a1 a2 ... an
//! ...
//! ```
//!
//! Rows are lex-sorted and every row has coordinate sum `d`.

use crate::error::{parse_err, Error, Result};
use crate::text::{content_lines, expect_end, expect_keyword, parse_field};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A finite set of points of `Z_{>=0}^n`, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePointSet {
    n: usize,
    points: BTreeSet<Vec<u32>>,
}

impl LatticePointSet {
    pub fn new(n: usize) -> Self {
        LatticePointSet {
            n,
            points: BTreeSet::new(),
        }
    }

    pub fn from_points<I>(n: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut set = LatticePointSet::new(n);
        for p in points {
            set.insert(p)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, point: Vec<u32>) -> Result<bool> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        Ok(self.points.insert(point))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        self.points.contains(point)
    }

    /// Points in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.points.iter()
    }

    pub fn is_subset(&self, other: &LatticePointSet) -> bool {
        self.n == other.n && self.points.is_subset(&other.points)
    }

    /// Points of `self` that are not in `other`, in lex order.
    pub fn difference<'a>(&'a self, other: &'a LatticePointSet) -> impl Iterator<Item = &'a Vec<u32>> {
        self.points.difference(&other.points)
    }

    /// The common coordinate sum, `None` for an empty set.
    ///
    /// Fails if two points have different sums.
    pub fn common_sum(&self) -> Result<Option<u64>> {
        let mut sums = self.points.iter().map(|p| coordinate_sum(p));
        let Some(first) = sums.next() else {
            return Ok(None);
        };
        for s in sums {
            if s != first {
                return Err(Error::NonHomogeneous(first, s));
            }
        }
        Ok(Some(first))
    }

    /// Render in the `points` text format. Fails for non-homogeneous sets,
    /// which the format cannot express.
    pub fn to_text(&self) -> Result<String> {
        let d = self.common_sum()?.unwrap_or(0);
        let mut out = format!("points {} {} {}\n", self.n, d, self.points.len());
        for p in &self.points {
            out.push_str(&join(p));
            out.push('\n');
        }
        Ok(out)
    }
}

pub(crate) fn coordinate_sum(p: &[u32]) -> u64 {
    p.iter().map(|&x| x as u64).sum()
}

pub(crate) fn join<T: fmt::Display>(xs: &[T]) -> String {
    let mut s = String::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&x.to_string());
    }
    s
}

impl fmt::Display for LatticePointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Ok(s) => f.write_str(&s),
            Err(_) => Err(fmt::Error),
        }
    }
}

impl FromStr for LatticePointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let mut toks = header.split_whitespace();
        expect_keyword(hl, toks.next(), "points")?;
        let n: usize = parse_field(hl, toks.next(), "dimension n")?;
        let d: u64 = parse_field(hl, toks.next(), "coordinate sum d")?;
        let count: usize = parse_field(hl, toks.next(), "point count")?;
        expect_end(hl, toks)?;

        let mut set = LatticePointSet::new(n);
        for (ln, line) in lines {
            let point: Vec<u32> = line
                .split_whitespace()
                .map(|t| parse_field(ln, Some(t), "coordinate"))
                .collect::<Result<_>>()?;
            if point.len() != n {
                return Err(parse_err(
                    ln,
                    format!("expected {n} coordinates, found {}", point.len()),
                ));
            }
            if coordinate_sum(&point) != d {
                return Err(parse_err(ln, format!("coordinate sum is not {d}")));
            }
            if !set.insert(point)? {
                return Err(parse_err(ln, "duplicate point"));
            }
        }
        if set.len() != count {
            return Err(parse_err(
                hl,
                format!("header announces {count} points, found {}", set.len()),
            ));
        }
        Ok(set)
    }
}
