//! The Chow ring `Z[H_1, ..., H_n] / (H_1^{m_1+1}, ..., H_n^{m_n+1})` of a
//! product of projective spaces `P^{m_1} x ... x P^{m_n}`.
//!
//! Classes are stored in codimension form: the exponent vector `t` of the
//! monomial `H^t`. For a `d`-dimensional subvariety every stored `t` has
//! `sum t_i = sum m_i - d`. The dimension-form vector `a = m - t` is only
//! produced by explicit conversion ([`MultiClass::dimension_form`],
//! [`MultiClass::multidegree_dim`]).
//!
//! Text format, one term per line after the header, lex-sorted:
//!
//! ```text
//! chowclass n m1 ... mn
//! coefficient e1 ... en
//! ```

use crate::error::{parse_err, Error, Result};
use crate::points::{coordinate_sum, join, LatticePointSet};
use crate::text::{content_lines, expect_end, expect_keyword, parse_field};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A multidegree support: exponent vectors with nonzero coefficient.
pub type SupportSet = LatticePointSet;

/// Per-factor dimensions `m_1, ..., m_n` of `P^{m_1} x ... x P^{m_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    dims: Vec<u32>,
}

impl Ambient {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidAmbient("need at least one factor".into()));
        }
        if let Some(i) = dims.iter().position(|&m| m == 0) {
            return Err(Error::InvalidAmbient(format!("factor {} has dimension 0", i + 1)));
        }
        Ok(Ambient { dims })
    }

    /// `n` copies of `P^m`.
    pub fn uniform(n: usize, m: u32) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// `dim X = sum m_i`.
    pub fn dim(&self) -> u64 {
        coordinate_sum(&self.dims)
    }

    fn in_box(&self, t: &[u32]) -> bool {
        t.iter().zip(&self.dims).all(|(&e, &m)| e <= m)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: len,
            });
        }
        Ok(())
    }
}

/// A sparse element of the Chow ring with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiClass {
    ambient: Ambient,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiClass {
    pub fn zero(ambient: Ambient) -> Self {
        MultiClass {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        let n = ambient.n();
        Self::monomial(ambient, vec![0; n], BigInt::one()).expect("length matches")
    }

    /// `coeff * H^exponents`; the zero class if some exponent exceeds `m_i`.
    pub fn monomial(ambient: Ambient, exponents: Vec<u32>, coeff: BigInt) -> Result<Self> {
        Self::from_terms(ambient, [(exponents, coeff)])
    }

    /// The pulled-back hyperplane class `H_i` (0-based `i`).
    pub fn hyperplane(ambient: Ambient, i: usize) -> Result<Self> {
        if i >= ambient.n() {
            return Err(Error::Precondition(format!(
                "no factor {} in a product of {}",
                i + 1,
                ambient.n()
            )));
        }
        let mut t = vec![0; ambient.n()];
        t[i] = 1;
        Self::monomial(ambient, t, BigInt::one())
    }

    /// Sums up the given terms. Exponents past `m_i` vanish in the ring and
    /// are dropped, as are zero coefficients.
    pub fn from_terms<I>(ambient: Ambient, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut class = MultiClass::zero(ambient);
        for (t, c) in terms {
            class.ambient.check_len(t.len())?;
            class.add_term(t, c);
        }
        Ok(class)
    }

    fn add_term(&mut self, t: Vec<u32>, c: BigInt) {
        if c.is_zero() || !self.ambient.in_box(&t) {
            return;
        }
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lex order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Stored coefficient of `H^t`.
    pub fn coefficient(&self, t: &[u32]) -> BigInt {
        self.terms.get(t).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &MultiClass) -> Result<MultiClass> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> MultiClass {
        if k.is_zero() {
            return MultiClass::zero(self.ambient.clone());
        }
        MultiClass {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
        }
    }

    /// Ring product: exponents add, terms leaving the box vanish.
    pub fn multiply(&self, other: &MultiClass) -> Result<MultiClass> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut out = MultiClass::zero(self.ambient.clone());
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let e: Vec<u32> = s.iter().zip(t).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        Ok(out)
    }

    /// Coefficient of the point class `H_1^{m_1} ... H_n^{m_n}`.
    pub fn degree(&self) -> BigInt {
        self.coefficient(self.ambient.dims())
    }

    /// `c_t`: the coefficient of `H^t`, i.e. `deg(f * H^{m - t})`.
    /// Zero when `t` is off the class's degree slice.
    pub fn multidegree(&self, t: &[u32]) -> Result<BigInt> {
        self.ambient.check_len(t.len())?;
        Ok(self.coefficient(t))
    }

    /// The same number computed through the degree map:
    /// `deg(f * prod H_i^{m_i - t_i})`.
    pub fn multidegree_via_degree(&self, t: &[u32]) -> Result<BigInt> {
        self.ambient.check_len(t.len())?;
        if !self.ambient.in_box(t) {
            return Ok(BigInt::zero());
        }
        let complement: Vec<u32> = self.ambient.dims().iter().zip(t).map(|(m, x)| m - x).collect();
        let h = MultiClass::monomial(self.ambient.clone(), complement, BigInt::one())?;
        Ok(self.multiply(&h)?.degree())
    }

    /// Lookup by dimension-form vector `a`, i.e. the coefficient of `H^{m - a}`.
    pub fn multidegree_dim(&self, a: &[u32]) -> Result<BigInt> {
        self.ambient.check_len(a.len())?;
        if !self.ambient.in_box(a) {
            return Ok(BigInt::zero());
        }
        let t: Vec<u32> = self.ambient.dims().iter().zip(a).map(|(m, x)| m - x).collect();
        Ok(self.coefficient(&t))
    }

    /// `Some(s)` when every term has total degree `s` (the zero class is
    /// homogeneous of degree 0).
    pub fn is_homogeneous(&self) -> Option<u64> {
        let mut sums = self.terms.keys().map(|t| coordinate_sum(t));
        let first = sums.next().unwrap_or(0);
        sums.all(|s| s == first).then_some(first)
    }

    /// Codimension-form support `{t : c_t != 0}`.
    ///
    /// Effective classes have nonnegative multidegrees; a negative coefficient
    /// is logged as a warning and still counted in the support.
    pub fn msupp(&self) -> SupportSet {
        if self.is_homogeneous().is_none() {
            log::warn!("msupp of a non-homogeneous class");
        }
        if self.terms.values().any(|c| c.is_negative()) {
            log::warn!("msupp of a class with negative coefficients");
        }
        LatticePointSet::from_points(self.ambient.n(), self.terms.keys().cloned())
            .expect("stored exponents have length n")
    }

    /// Support in dimension form, `{m - t : c_t != 0}`.
    pub fn dimension_form(&self) -> SupportSet {
        let dims = self.ambient.dims();
        LatticePointSet::from_points(
            self.ambient.n(),
            self.terms
                .keys()
                .map(|t| dims.iter().zip(t).map(|(m, x)| m - x).collect()),
        )
        .expect("stored exponents have length n")
    }
}

impl fmt::Display for MultiClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chowclass {} {}", self.ambient.n(), join(self.ambient.dims()))?;
        for (t, c) in &self.terms {
            writeln!(f, "{} {}", c, join(t))?;
        }
        Ok(())
    }
}

impl FromStr for MultiClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let mut toks = header.split_whitespace();
        expect_keyword(hl, toks.next(), "chowclass")?;
        let n: usize = parse_field(hl, toks.next(), "factor count")?;
        let dims: Vec<u32> = (0..n)
            .map(|_| parse_field(hl, toks.next(), "factor dimension"))
            .collect::<Result<_>>()?;
        expect_end(hl, toks)?;
        let ambient = Ambient::new(dims).map_err(|e| parse_err(hl, e.to_string()))?;

        let mut class = MultiClass::zero(ambient);
        for (ln, line) in lines {
            let mut toks = line.split_whitespace();
            let c: BigInt = parse_field(ln, toks.next(), "coefficient")?;
            let t: Vec<u32> = toks
                .map(|tok| parse_field(ln, Some(tok), "exponent"))
                .collect::<Result<_>>()?;
            if t.len() != n {
                return Err(parse_err(ln, format!("expected {n} exponents, found {}", t.len())));
            }
            if !class.ambient.in_box(&t) {
                return Err(parse_err(ln, "exponent exceeds its factor dimension"));
            }
            class.add_term(t, c);
        }
        Ok(class)
    }
}
