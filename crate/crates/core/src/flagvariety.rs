//! Degrees of monomials in the Schubert divisor classes of the complete flag
//! variety `Fl(V)`, `dim V = n + 1`.
//!
//! Two independent routes:
//!
//! * coinvariant algebra `Z[x_1..x_{n+1}] / (e_1, ..., e_{n+1})` with
//!   `z_k = x_1 + ... + x_k`; a product's degree is the coefficient of the
//!   staircase monomial `x_1^n x_2^{n-1} ... x_n` in its normal form;
//! * Monk's rule: each factor `z_k` moves a permutation `w` to `w t_{ij}`
//!   (`i <= k < j`) when the length goes up by one, and the degree counts the
//!   resulting chains from the identity to the longest element.
//!
//! Normal forms use the Gröbner basis `h_{n+2-i}(x_1, ..., x_i)`,
//! `i = 1..n+1`, of complete homogeneous polynomials. Its leading terms
//! `x_i^{n+2-i}` (lex with `x_{n+1} > ... > x_1`) are pairwise coprime, and
//! the standard monomials are the staircase monomials `x^a`, `a_i <= n+1-i`.

use crate::error::{Error, Result};
use crate::points::{coordinate_sum, LatticePointSet};
use crate::polymatroid::{bounded_lattice_points, RankFunction};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

/// Largest `n` accepted by [`flag_support`].
pub const MAX_FLAG_N: usize = 4;

/// A polynomial in `nvars` variables with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

fn accumulate(map: &mut BTreeMap<Vec<u32>, BigInt>, key: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
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

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], BigInt::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: BigInt) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = Self::zero(nvars);
        accumulate(&mut p.terms, exponents, coeff);
        p
    }

    /// `x_i`, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    /// `z_k = x_1 + ... + x_k`.
    pub fn schubert_divisor(nvars: usize, k: usize) -> Self {
        (1..=k).fold(Self::zero(nvars), |acc, i| acc.add(&Self::var(nvars, i)))
    }

    /// `e_r(x_1, ..., x_nvars)`.
    pub fn elementary_symmetric(nvars: usize, r: usize) -> Self {
        let mut p = Self::zero(nvars);
        for mask in 0..1usize << nvars {
            if mask.count_ones() as usize == r {
                let e = (0..nvars).map(|i| (mask >> i & 1) as u32).collect();
                accumulate(&mut p.terms, e, BigInt::one());
            }
        }
        p
    }

    /// `h_k` in the first `upto` variables.
    pub fn complete_homogeneous(nvars: usize, k: u32, upto: usize) -> Self {
        let mut p = Self::zero(nvars);
        for e in monomials_of_degree(upto, k) {
            let mut full = e;
            full.resize(nvars, 0);
            accumulate(&mut p.terms, full, BigInt::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                accumulate(&mut out.terms, e, c * d);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }
}

/// Exponent vectors of length `nvars` and total degree `k`.
fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            go(i + 1, left - x, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, k, &mut vec![0; nvars], &mut out);
    out
}

/// An element of the coinvariant algebra in staircase normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinvariantElement {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl CoinvariantElement {
    pub fn one(n: usize) -> Self {
        reduce(n, &Polynomial::one(n + 1)).expect("variable count matches")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial {
            nvars: self.n + 1,
            terms: self.terms.clone(),
        }
    }

    /// Normal form of `self * p`.
    pub fn mul_poly(&self, p: &Polynomial) -> Result<CoinvariantElement> {
        reduce(self.n, &self.to_polynomial().mul(p))
    }

    /// Coefficient of the staircase monomial, the degree of the top-degree
    /// part.
    pub fn degree(&self) -> BigInt {
        self.coefficient(&staircase(self.n))
    }
}

/// `(n, n-1, ..., 1, 0)`.
pub fn staircase(n: usize) -> Vec<u32> {
    (0..=n).rev().map(|x| x as u32).collect()
}

/// Rewriting rules: for 0-based `i`, `x_i^{N-i} -> -(h_{N-i}(x_0..x_i) - x_i^{N-i})`
/// with `N = n + 1`.
fn rewrite_tails(n: usize) -> Vec<Vec<(Vec<u32>, BigInt)>> {
    let nv = n + 1;
    (0..nv)
        .map(|i| {
            let k = (nv - i) as u32;
            monomials_of_degree(i + 1, k)
                .into_iter()
                .filter(|e| e[i] != k)
                .map(|mut e| {
                    e.resize(nv, 0);
                    (e, -BigInt::one())
                })
                .collect()
        })
        .collect()
}

/// Normal form of `p` modulo the elementary symmetric polynomials in
/// `n + 1` variables.
pub fn reduce(n: usize, p: &Polynomial) -> Result<CoinvariantElement> {
    let nv = n + 1;
    if p.nvars() != nv {
        return Err(Error::DimensionMismatch {
            expected: nv,
            found: p.nvars(),
        });
    }
    let tails = rewrite_tails(n);
    // keyed by reversed exponents so `pop_last` yields the lex-largest
    // monomial with x_{n+1} most significant; rewrites only produce smaller
    // keys, so every monomial is expanded once with its final coefficient
    let rev = |e: &[u32]| e.iter().rev().copied().collect::<Vec<u32>>();
    let mut work: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (e, c) in p.terms() {
        accumulate(&mut work, rev(e), c.clone());
    }
    let mut out = BTreeMap::new();
    while let Some((key, c)) = work.pop_last() {
        let e = rev(&key);
        let bad = (0..nv).rev().find(|&i| e[i] as usize >= nv - i);
        match bad {
            None => accumulate(&mut out, e, c),
            Some(i) => {
                let mut base = e.clone();
                base[i] -= (nv - i) as u32;
                for (t, tc) in &tails[i] {
                    let m: Vec<u32> = base.iter().zip(t).map(|(x, y)| x + y).collect();
                    accumulate(&mut work, rev(&m), &c * tc);
                }
            }
        }
    }
    Ok(CoinvariantElement { n, terms: out })
}

/// `n(n+1)/2`, the dimension of the complete flag variety of `K^{n+1}`.
pub fn flag_dim(n: usize) -> u64 {
    (n * (n + 1) / 2) as u64
}

/// `deg(z_1^{a_1} ... z_n^{a_n})` by coinvariant reduction; `n = a.len()`.
/// Zero off the slice `sum a = n(n+1)/2`.
pub fn schubert_divisor_degree(a: &[u32]) -> BigInt {
    let n = a.len();
    if coordinate_sum(a) != flag_dim(n) {
        return BigInt::zero();
    }
    let nv = n + 1;
    let mut acc = CoinvariantElement::one(n);
    for (k, &ak) in a.iter().enumerate() {
        let z = Polynomial::schubert_divisor(nv, k + 1);
        for _ in 0..ak {
            acc = acc.mul_poly(&z).expect("variable count matches");
            if acc.is_zero() {
                return BigInt::zero();
            }
        }
    }
    acc.degree()
}

/// A permutation of `1..=len` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; word.len()];
        for &x in &word {
            let i = x as usize;
            if i == 0 || i > word.len() || seen[i - 1] {
                return Err(Error::Precondition(format!("{word:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((1..=len as u8).collect())
    }

    /// `w_0 = (len, len-1, ..., 1)`.
    pub fn longest(len: usize) -> Self {
        Permutation((1..=len as u8).rev().collect())
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| w[i] > w[j])
            .count()
    }

    /// Whether `w t_{ij}` (swap positions `i < j`, 0-based) is a Bruhat cover
    /// of `w`: `w(i) < w(j)` with no value of `w` between them strictly
    /// inside the positions.
    fn covers_by_swap(&self, i: usize, j: usize) -> bool {
        let w = &self.0;
        w[i] < w[j] && !(i + 1..j).any(|p| w[i] < w[p] && w[p] < w[j])
    }

    fn swapped(&self, i: usize, j: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(i, j);
        Permutation(w)
    }
}

/// Monk-chain count for `z_1^{a_1} ... z_n^{a_n}`, applying the factors in
/// that order.
pub fn monk_chain_count(a: &[u32]) -> BigInt {
    let word: Vec<usize> = a
        .iter()
        .enumerate()
        .flat_map(|(k, &ak)| std::iter::repeat_n(k + 1, ak as usize))
        .collect();
    monk_chain_count_word(a.len(), &word)
}

/// Counts saturated chains `id = w_0 < w_1 < ... < w_L = w_0` where step `s`
/// multiplies by a transposition `t_{ij}` with `i <= word[s] < j`. Entries of
/// `word` are in `1..=n`; the count is zero unless `word.len() = n(n+1)/2`.
pub fn monk_chain_count_word(n: usize, word: &[usize]) -> BigInt {
    if word.len() as u64 != flag_dim(n) || word.iter().any(|&k| k == 0 || k > n) {
        return BigInt::zero();
    }
    let len = n + 1;
    let mut layer: HashMap<Permutation, BigInt> = HashMap::new();
    layer.insert(Permutation::identity(len), BigInt::one());
    for &k in word {
        let mut next: HashMap<Permutation, BigInt> = HashMap::new();
        for (w, c) in &layer {
            for i in 0..k {
                for j in k..len {
                    if w.covers_by_swap(i, j) {
                        *next.entry(w.swapped(i, j)).or_insert_with(BigInt::zero) += c;
                    }
                }
            }
        }
        layer = next;
    }
    layer.remove(&Permutation::longest(len)).unwrap_or_else(BigInt::zero)
}

/// `dim Fl_I(K^{n+1})` for `I = {i_1 < ... < i_k}` given as a bitmask over
/// `[n]`: `sum_j i_j (i_{j+1} - i_j)` with `i_{k+1} = n + 1`.
pub fn partial_flag_dim(n: usize, subset: usize) -> i64 {
    let idx: Vec<i64> = (0..n).filter(|&b| subset >> b & 1 == 1).map(|b| b as i64 + 1).collect();
    let mut total = 0;
    for (j, &i) in idx.iter().enumerate() {
        let next = idx.get(j + 1).copied().unwrap_or(n as i64 + 1);
        total += i * (next - i);
    }
    total
}

/// The multidegree of `Fl(K^{n+1})` in the product of Grassmannians and its
/// comparison with the partial-flag polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagSupport {
    pub n: usize,
    /// Nonzero degrees, lex-ordered by exponent vector.
    pub degrees: BTreeMap<Vec<u32>, BigInt>,
    pub support: LatticePointSet,
    /// `I -> dim Fl_I(V)`.
    pub dims: RankFunction,
    /// Lattice points of `{a >= 0 : sum a = n(n+1)/2, sum_I a <= dim Fl_I}`.
    pub polytope: LatticePointSet,
    /// `support == polytope`.
    pub verdict: bool,
}

pub fn flag_support(n: usize) -> Result<FlagSupport> {
    if n == 0 || n > MAX_FLAG_N {
        return Err(Error::Precondition(format!(
            "flag parameter n = {n} not in 1..={MAX_FLAG_N}"
        )));
    }
    let total = flag_dim(n) as u32;
    let mut degrees = BTreeMap::new();
    let mut support = LatticePointSet::new(n);
    for a in monomials_of_degree(n, total) {
        let deg = schubert_divisor_degree(&a);
        if deg.is_negative() {
            log::warn!("negative degree {deg} at {a:?}");
        }
        if !deg.is_zero() {
            support.insert(a.clone())?;
            degrees.insert(a, deg);
        }
    }
    let dims = RankFunction::from_fn(n, |s| partial_flag_dim(n, s))?;
    let polytope = bounded_lattice_points(n, total as i64, |s| dims.get(s));
    let verdict = support == polytope;
    Ok(FlagSupport {
        n,
        degrees,
        support,
        dims,
        polytope,
        verdict,
    })
}

/// All on-slice exponent vectors for a given `n`.
pub fn slice_vectors(n: usize) -> Vec<Vec<u32>> {
    monomials_of_degree(n, flag_dim(n) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymatroid::{check_polymatroid, u_profile};
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn x(nv: usize, i: usize) -> Polynomial {
        Polynomial::var(nv, i)
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(1, &x(2, 1).pow(2)).unwrap().is_zero());
        assert!(reduce(2, &x(3, 1).pow(3)).unwrap().is_zero());
        assert!(reduce(2, &Polynomial::elementary_symmetric(3, 2)).unwrap().is_zero());
        // x_2 = -x_1 for n = 1
        let r = reduce(1, &x(2, 2)).unwrap();
        assert_eq!(r.terms().collect::<Vec<_>>(), vec![(&vec![1, 0], &big(-1))]);
        assert!(reduce(2, &x(2, 1)).is_err());
    }

    #[test]
    fn normal_forms_are_staircase() {
        let p = x(4, 4).pow(3).add(&x(4, 2).pow(4)).add(&x(4, 1).mul(&x(4, 3)).pow(2));
        let r = reduce(3, &p).unwrap();
        for (e, _) in r.terms() {
            for (i, &ei) in e.iter().enumerate() {
                assert!(ei as usize <= 3 - i, "{e:?}");
            }
        }
    }

    #[test]
    fn staircase_spans_n_factorial() {
        // every monomial of degree <= dim reduces into the staircase basis,
        // whose size is (n+1)!
        let n = 3;
        let mut basis = std::collections::BTreeSet::new();
        for d in 0..=flag_dim(n) as u32 {
            for e in monomials_of_degree(n + 1, d) {
                let r = reduce(n, &Polynomial::monomial(n + 1, e, big(1))).unwrap();
                basis.extend(r.terms().map(|(e, _)| e.clone()));
            }
        }
        assert_eq!(basis.len(), 24);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(schubert_divisor_degree(&[1]), big(1));
        assert_eq!(schubert_divisor_degree(&[2, 1]), big(1));
        assert_eq!(schubert_divisor_degree(&[1, 2]), big(1));
        assert_eq!(schubert_divisor_degree(&[3, 0]), big(0));
        assert_eq!(schubert_divisor_degree(&[2, 2, 2]), big(2));
        assert_eq!(schubert_divisor_degree(&[3, 1, 2]), big(1));
        assert_eq!(schubert_divisor_degree(&[1, 4, 1]), big(2));
        assert_eq!(schubert_divisor_degree(&[1, 1]), big(0));
    }

    #[test]
    fn monk_examples() {
        assert_eq!(monk_chain_count(&[1]), big(1));
        assert_eq!(monk_chain_count(&[2, 1]), big(1));
        assert_eq!(monk_chain_count(&[0, 3]), big(0));
        assert_eq!(monk_chain_count(&[1, 1]), big(0));
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![2, 3, 1]).is_ok());
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!(Permutation::longest(4).length(), 6);
        assert_eq!(Permutation::identity(4).length(), 0);
        let w = Permutation::new(vec![1, 3, 2, 4]).unwrap();
        assert!(w.covers_by_swap(0, 2));
        assert!(!w.covers_by_swap(0, 3));
        assert!(!w.covers_by_swap(1, 2));
    }

    #[test]
    fn oracles_agree_up_to_three() {
        for n in 1..=3 {
            for a in slice_vectors(n) {
                assert_eq!(schubert_divisor_degree(&a), monk_chain_count(&a), "a = {a:?}");
            }
        }
    }

    #[test]
    fn duality_symmetry() {
        for n in 1..=3 {
            for a in slice_vectors(n) {
                let rev: Vec<u32> = a.iter().rev().copied().collect();
                assert_eq!(schubert_divisor_degree(&a), schubert_divisor_degree(&rev));
            }
        }
    }

    #[test]
    fn partial_flag_dims() {
        assert_eq!(partial_flag_dim(3, 0b011), 5);
        assert_eq!(partial_flag_dim(3, 0b010), 4);
        assert_eq!(partial_flag_dim(3, 0b111), 6);
        assert_eq!(partial_flag_dim(3, 0), 0);
        for n in 1..=5 {
            let f = RankFunction::from_fn(n, |s| partial_flag_dim(n, s)).unwrap();
            assert!(check_polymatroid(&f).is_polymatroid());
        }
    }

    #[test]
    fn flag_support_small() {
        let s1 = flag_support(1).unwrap();
        assert!(s1.verdict);
        assert_eq!(s1.support.len(), 1);

        let s2 = flag_support(2).unwrap();
        assert!(s2.verdict);
        let pts: Vec<_> = s2.support.iter().cloned().collect();
        assert_eq!(pts, vec![vec![1, 2], vec![2, 1]]);

        let s3 = flag_support(3).unwrap();
        assert!(s3.verdict);
        let expected = LatticePointSet::from_points(
            3,
            [
                [3, 1, 2],
                [3, 2, 1],
                [2, 1, 3],
                [2, 2, 2],
                [2, 3, 1],
                [1, 2, 3],
                [1, 3, 2],
                [1, 4, 1],
            ]
            .map(|p| p.to_vec()),
        )
        .unwrap();
        assert_eq!(s3.support, expected);
        let mut values: Vec<i64> = s3.degrees.values().map(|d| i64::try_from(d).unwrap()).collect();
        values.sort();
        assert_eq!(values, vec![1, 1, 1, 1, 2, 2, 2, 2]);
        assert_eq!(u_profile(&s3.support).unwrap().u, s3.dims);

        assert!(flag_support(0).is_err());
        assert!(flag_support(5).is_err());
    }

    fn nonzero_poly(nv: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..=3, nv), -3i64..=3), 1..5).prop_map(move |terms| {
            terms.into_iter().fold(Polynomial::zero(nv), |acc, (e, c)| {
                acc.add(&Polynomial::monomial(nv, e, big(c)))
            })
        })
    }

    proptest! {
        #[test]
        fn ideal_reduces_to_zero((n, q, r) in (1usize..=3).prop_flat_map(|n| (Just(n), nonzero_poly(n + 1), 1..=n + 1))) {
            let p = Polynomial::elementary_symmetric(n + 1, r).mul(&q);
            prop_assert!(reduce(n, &p).unwrap().is_zero());
        }

        #[test]
        fn reduce_is_linear_and_idempotent((n, p, q) in (1usize..=3).prop_flat_map(|n| (Just(n), nonzero_poly(n + 1), nonzero_poly(n + 1)))) {
            let rp = reduce(n, &p).unwrap();
            prop_assert_eq!(reduce(n, &rp.to_polynomial()).unwrap(), rp.clone());
            let rq = reduce(n, &q).unwrap();
            prop_assert_eq!(
                reduce(n, &p.add(&q.scale(&big(3)))).unwrap(),
                reduce(n, &rp.to_polynomial().add(&rq.to_polynomial().scale(&big(3)))).unwrap()
            );
        }
    }
}
