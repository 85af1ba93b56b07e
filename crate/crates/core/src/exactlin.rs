//! Exact linear algebra over `Q`.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination on integer rows:
//! each row is first scaled by the lcm of its denominators, which does not
//! change the row space.
//!
//! Matrix text format: a `rows cols` line followed by one line per row,
//! entries written as integers or `p/q`.

use crate::error::{parse_err, Error, Result};
use crate::text::{content_lines, expect_end, parse_field};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Coefficients of random combinations are drawn uniformly from `[0, p)`.
pub const FIELD_SAMPLE_PRIME: u64 = 2_147_483_647;

/// Dense row-major matrix of reduced fractions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width so that an empty
    /// row list still has a shape.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigRational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }

    /// Exact rank over `Q`.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.row_iter())
    }

    /// Indices of a maximal linearly independent set of rows, chosen greedily
    /// from the top.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut kept: Vec<usize> = Vec::new();
        for r in 0..self.rows {
            let rank = rank_of_rows(kept.iter().map(|&k| self.row(k)).chain(std::iter::once(self.row(r))));
            if rank > kept.len() {
                kept.push(r);
            }
        }
        kept
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &r in indices {
            entries.extend_from_slice(self.row(r));
        }
        RationalMatrix {
            rows: indices.len(),
            cols: self.cols,
            entries,
        }
    }
}

/// Rank of the matrix whose rows are given.
pub fn rank_of_rows<'a, I>(rows: I) -> usize
where
    I: IntoIterator<Item = &'a [BigRational]>,
{
    let mut int_rows: Vec<Vec<BigInt>> = rows.into_iter().map(integer_row).collect();
    bareiss_rank(&mut int_rows)
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Fraction-free elimination; every division is exact by Sylvester's identity.
fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// A subspace of `Q^ambient_dim` given by a basis (the rows of `basis`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
}

impl Subspace {
    /// Wraps a basis; fails if the rows are dependent.
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        let rank = basis.rank();
        if rank != basis.rows() {
            return Err(Error::DependentBasis {
                rank,
                rows: basis.rows(),
            });
        }
        Ok(Subspace {
            ambient_dim: basis.cols(),
            basis,
        })
    }

    /// Span of arbitrary (possibly dependent) rows.
    pub fn spanned_by(vectors: &RationalMatrix) -> Self {
        let keep = vectors.independent_rows();
        Subspace {
            ambient_dim: vectors.cols(),
            basis: vectors.select_rows(&keep),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// Whether `v` lies in the subspace.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        v.len() == self.ambient_dim && rank_of_rows(self.basis.row_iter().chain(std::iter::once(v))) == self.dim()
    }
}

/// `dim(sum_{i in I} W_i)` where `subset` is a bitmask over `spaces`
/// (bit `i` selects `spaces[i]`).
pub fn subspace_sum_dim(spaces: &[Subspace], subset: usize) -> Result<usize> {
    let Some(first) = spaces.first() else {
        return Ok(0);
    };
    let ambient = first.ambient_dim();
    for s in spaces {
        if s.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: s.ambient_dim(),
            });
        }
    }
    if spaces.len() < usize::BITS as usize && subset >> spaces.len() != 0 {
        return Err(Error::Precondition(format!(
            "subset mask {subset:#b} has elements outside 1..={}",
            spaces.len()
        )));
    }
    let rows = spaces
        .iter()
        .enumerate()
        .filter(|(i, _)| subset >> i & 1 == 1)
        .flat_map(|(_, s)| s.basis().row_iter());
    Ok(rank_of_rows(rows))
}

/// `count` random vectors of `space`, each a combination of the basis rows
/// with coefficients uniform in `[0, FIELD_SAMPLE_PRIME)`. Deterministic in
/// `seed`.
pub fn random_field_vectors(space: &Subspace, count: usize, seed: u64) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_field_vectors_with(space, count, &mut rng)
}

/// As [`random_field_vectors`], drawing from a caller-owned generator.
pub fn random_field_vectors_with<R: Rng + ?Sized>(space: &Subspace, count: usize, rng: &mut R) -> RationalMatrix {
    let d = space.ambient_dim();
    let mut entries = Vec::with_capacity(count * d);
    for _ in 0..count {
        let mut v = vec![BigRational::zero(); d];
        for b in space.basis().row_iter() {
            let c = BigRational::from_integer(rng.gen_range(0..FIELD_SAMPLE_PRIME).into());
            for (vj, bj) in v.iter_mut().zip(b) {
                if !bj.is_zero() {
                    *vj += &c * bj;
                }
            }
        }
        entries.extend(v);
    }
    RationalMatrix {
        rows: count,
        cols: d,
        entries,
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn parse_rational(line: usize, tok: &str) -> Result<BigRational> {
    let bad = || parse_err(line, format!("invalid rational `{tok}`"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(parse_err(line, format!("zero denominator in `{tok}`")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

/// Parses a matrix from an iterator of numbered content lines, consuming
/// exactly the header and `rows` row lines.
pub(crate) fn parse_matrix_lines<'a, I>(lines: &mut I, header_line: (usize, &str)) -> Result<RationalMatrix>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hl, header) = header_line;
    let mut toks = header.split_whitespace();
    let rows: usize = parse_field(hl, toks.next(), "row count")?;
    let cols: usize = parse_field(hl, toks.next(), "column count")?;
    expect_end(hl, toks)?;
    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {rows} rows, found {r}")))?;
        let row: Vec<BigRational> = line
            .split_whitespace()
            .map(|t| parse_rational(ln, t))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(parse_err(ln, format!("expected {cols} entries, found {}", row.len())));
        }
        entries.extend(row);
    }
    RationalMatrix::new(rows, cols, entries)
}

impl FromStr for RationalMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let header = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let m = parse_matrix_lines(&mut lines, header)?;
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after matrix"));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    /// Plain Gaussian elimination over Q, used as an independent rank oracle.
    fn gauss_rank(m: &RationalMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = m.row_iter().map(|r| r.to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot_row = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && !row[c].is_zero() {
                    let f = &row[c] / &pivot_row[c];
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        let m = RationalMatrix::from_i64_rows(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(
            2,
            vec![
                vec![
                    BigRational::new(1.into(), 2.into()),
                    BigRational::new(1.into(), 3.into()),
                ],
                vec![q(3), q(2)],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_skips_zero_columns() {
        let m = RationalMatrix::from_i64_rows(4, &[vec![0, 2, 0, 1], vec![0, 4, 0, 2], vec![0, 0, 0, 5]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    fn e(i: usize, d: usize) -> Vec<i64> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    fn span(rows: &[Vec<i64>], d: usize) -> Subspace {
        Subspace::new(RationalMatrix::from_i64_rows(d, rows).unwrap()).unwrap()
    }

    #[test]
    fn subspace_sum_examples() {
        let l = span(&[vec![1, 2, 3]], 3);
        assert_eq!(subspace_sum_dim(&[l.clone(), l.clone()], 0).unwrap(), 0);
        assert_eq!(subspace_sum_dim(&[l.clone(), l], 0b11).unwrap(), 1);
        let w1 = span(&[e(0, 3), e(1, 3)], 3);
        let w2 = span(&[e(1, 3), e(2, 3)], 3);
        assert_eq!(subspace_sum_dim(&[w1, w2], 0b11).unwrap(), 3);
    }

    #[test]
    fn subspace_sum_rejects_mixed_ambient() {
        let a = span(&[e(0, 3)], 3);
        let b = span(&[e(0, 2)], 2);
        assert!(matches!(
            subspace_sum_dim(&[a, b], 0b11),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dependent_basis_rejected() {
        let m = RationalMatrix::from_i64_rows(2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(
            Subspace::new(m.clone()),
            Err(Error::DependentBasis { rank: 1, rows: 2 })
        ));
        assert_eq!(Subspace::spanned_by(&m).dim(), 1);
    }

    #[test]
    fn random_vectors_examples() {
        let w = span(&[e(0, 4), vec![1, 1, 1, 0], vec![0, 3, -1, 2]], 4);
        assert_eq!(random_field_vectors(&w, 0, 7).rows(), 0);
        for seed in [1, 2, 3] {
            let v = random_field_vectors(&w, 3, seed);
            assert_eq!(v.rank(), 3);
        }
        let line = span(&[vec![1, -2, 0, 5]], 4);
        assert_eq!(random_field_vectors(&line, 2, 9).rank(), 1);
        assert_eq!(random_field_vectors(&w, 2, 11), random_field_vectors(&w, 2, 11));
    }

    #[test]
    fn matrix_text_round_trip() {
        let text = "2 3\n1 -1/2 0\n3/4 5 -7\n";
        let m: RationalMatrix = text.parse().unwrap();
        assert_eq!(m.to_string(), text);
        assert_eq!(*m.get(0, 1), BigRational::new((-1).into(), 2.into()));
        assert!("2 2\n1 2\n".parse::<RationalMatrix>().is_err());
        assert!("1 2\n1 2/0\n".parse::<RationalMatrix>().is_err());
        assert_eq!("0 3\n".parse::<RationalMatrix>().unwrap().cols(), 3);
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec((-3i64..=3, 1i64..=3), r * c).prop_map(move |xs| {
                let entries = xs
                    .into_iter()
                    .map(|(p, d)| BigRational::new(p.into(), d.into()))
                    .collect();
                RationalMatrix::new(r, c, entries).unwrap()
            })
        })
    }

    fn small_space(d: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), 0..=d)
            .prop_map(move |rows| Subspace::spanned_by(&RationalMatrix::from_i64_rows(d, &rows).unwrap()))
    }

    proptest! {
        #[test]
        fn rank_matches_gauss_and_transpose(m in small_matrix()) {
            let r = m.rank();
            prop_assert_eq!(r, gauss_rank(&m));
            prop_assert_eq!(r, m.transpose().rank());
        }

        #[test]
        fn sum_dim_monotone_submodular(spaces in prop::collection::vec(small_space(4), 1..=5)) {
            let n = spaces.len();
            let dims: Vec<usize> = (0..1usize << n).map(|m| subspace_sum_dim(&spaces, m).unwrap()).collect();
            for i in 0..1usize << n {
                for j in 0..1usize << n {
                    prop_assert!(dims[i] + dims[j] >= dims[i | j] + dims[i & j]);
                    if i & j == i {
                        prop_assert!(dims[i] <= dims[j]);
                    }
                }
            }
        }

        #[test]
        fn sampled_vectors_stay_inside(w in small_space(5), count in 0usize..4, seed in any::<u64>()) {
            let v = random_field_vectors(&w, count, seed);
            prop_assert_eq!(w.basis().stack(&v).unwrap().rank(), w.dim());
        }
    }
}
