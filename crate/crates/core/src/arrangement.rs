//! Subspace arrangements `W_1, ..., W_n` of `Q^D` and the multiplicity-free
//! classes they produce.
//!
//! The arrangement variety `X(V; W_1, ..., W_n)` is the closure of the image
//! of `P(V) --> prod P(W_i)`, `v -> (pr_{W_i} v)_i`. Its class has
//! coefficient 1 exactly on the lattice points of the base polytope of its
//! projection dimensions (see [`SubspaceArrangement::li_rank`]), and 0
//! elsewhere.
//!
//! Arrangement text format:
//!
//! ```text
//! arrangement n D
//! subspace
//! dim k
//! <k rows of D entries>
//! ...
//! ```

use crate::chowring::{Ambient, MultiClass};
use crate::error::{parse_err, Error, Result};
use crate::exactlin::{
    format_rational, parse_matrix_lines, random_field_vectors_with, rank_of_rows, subspace_sum_dim, RationalMatrix,
    Subspace,
};
use crate::polymatroid::{base_polytope_points, RankFunction, MAX_GROUND_SET};
use crate::text::{content_lines, expect_end, expect_keyword, parse_field};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Default number of independent trials for the randomized oracles.
pub const DEFAULT_TRIALS: usize = 3;

/// `n` subspaces of a common `Q^D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceArrangement {
    ambient_dim: usize,
    spaces: Vec<Subspace>,
}

impl SubspaceArrangement {
    pub fn new(ambient_dim: usize, spaces: Vec<Subspace>) -> Result<Self> {
        for s in &spaces {
            if s.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: s.ambient_dim(),
                });
            }
        }
        Ok(SubspaceArrangement { ambient_dim, spaces })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn n(&self) -> usize {
        self.spaces.len()
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    /// `dim(sum_{i in I} W_i)` for the bitmask `subset`.
    pub fn sum_dim(&self, subset: usize) -> Result<usize> {
        subspace_sum_dim(&self.spaces, subset)
    }

    /// Whether `sum_i W_i = Q^D`.
    pub fn spans_ambient(&self) -> Result<bool> {
        Ok(self.sum_dim(self.full_mask())? == self.ambient_dim)
    }

    fn full_mask(&self) -> usize {
        (1usize << self.n()) - 1
    }

    fn check_li(&self) -> Result<()> {
        if let Some(i) = self.spaces.iter().position(|s| s.dim() == 0) {
            return Err(Error::ZeroSubspace(i + 1));
        }
        let span = self.sum_dim(self.full_mask())?;
        if span != self.ambient_dim {
            return Err(Error::SpanCondition {
                span,
                ambient: self.ambient_dim,
            });
        }
        Ok(())
    }

    /// The representable polymatroid `f(I) = dim(sum_{i in I} W_i)`.
    pub fn rank_function(&self) -> Result<RankFunction> {
        if self.n() > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge(self.n(), MAX_GROUND_SET));
        }
        let dims = (0..1usize << self.n())
            .map(|s| self.sum_dim(s).map(|d| d as i64))
            .collect::<Result<Vec<_>>>()?;
        RankFunction::new(self.n(), dims)
    }

    /// Dimension of the projection of the arrangement variety to the factors in `I`:
    /// `dim(sum_{i in I} W_i) - 1` when the sub-arrangement on `I` does not
    /// split as a direct sum, and in general the minimum of
    /// `sum_P (dim(sum_{i in P} W_i) - 1)` over set partitions of `I`. Each
    /// direct summand contributes its own projective rescaling.
    pub fn li_rank(&self) -> Result<RankFunction> {
        self.check_li()?;
        let f = self.rank_function()?;
        let size = 1usize << self.n();
        let mut g = vec![0i64; size];
        for s in 1..size {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut best = i64::MAX;
            let mut p = rest;
            loop {
                let block = p | low;
                best = best.min(f.get(block) - 1 + g[s ^ block]);
                if p == 0 {
                    break;
                }
                p = (p - 1) & rest;
            }
            g[s] = best;
        }
        RankFunction::new(self.n(), g)
    }

    /// The class of the arrangement variety in `prod P^{m_i}` (codimension form): one
    /// term `H^{m - a}` per base-polytope point `a` of [`li_rank`].
    ///
    /// [`li_rank`]: SubspaceArrangement::li_rank
    pub fn li_multidegree(&self, dims: &[u32]) -> Result<MultiClass> {
        if dims.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: dims.len(),
            });
        }
        let f = self.li_rank()?;
        for (i, (w, &m)) in self.spaces.iter().zip(dims).enumerate() {
            if (m as usize) + 1 < w.dim() {
                return Err(Error::Precondition(format!(
                    "P(W_{}) has dimension {} > m_{} = {m}",
                    i + 1,
                    w.dim() - 1,
                    i + 1
                )));
            }
        }
        let ambient = Ambient::new(dims.to_vec())?;
        let points = base_polytope_points(&f)?;
        let terms = points.iter().map(|a| {
            let t: Vec<u32> = dims.iter().zip(a).map(|(m, x)| m - x).collect();
            (t, BigInt::one())
        });
        MultiClass::from_terms(ambient, terms)
    }

    /// Randomized count of points of the arrangement variety on generic linear
    /// sections: `a_i` hyperplanes from factor `i`, `sum a_i = D - 1`.
    ///
    /// A hyperplane of `P(W_i)` is `<v, h> = 0` with `h` in `W_i`, so the
    /// section pulls back to the kernel of the stacked `(D-1) x D` matrix `M`
    /// of sampled `h`'s. It meets the image in one point iff `M` has full
    /// rank and the kernel line `[v]` avoids the base locus, i.e. `v` is not
    /// orthogonal to any `W_i`; with `rank M = D - 1` that is
    /// `rank [M; basis(W_i)] = D` for every `i`.
    ///
    /// Returns 1 if any of `trials` samples passes. The test is one-sided: a
    /// point off the polytope of [`li_rank`] has `sum_{i in I} a_i >= dim W_I`
    /// for some block `I` of a minimizing partition, and then a full-rank `M` has
    /// independent rows from `W_I` that must span it, putting `v` in `W_I`'s
    /// orthogonal complement, so points off the polytope never return 1.
    pub fn generic_selection_coefficient(&self, a: &[u32], seed: u64, trials: usize) -> Result<u8> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.generic_selection_coefficient_with(a, trials, &mut rng)
    }

    /// As [`generic_selection_coefficient`], drawing from a caller-owned
    /// generator.
    ///
    /// [`generic_selection_coefficient`]: SubspaceArrangement::generic_selection_coefficient
    pub fn generic_selection_coefficient_with<R: Rng + ?Sized>(
        &self,
        a: &[u32],
        trials: usize,
        rng: &mut R,
    ) -> Result<u8> {
        if a.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: a.len(),
            });
        }
        let total: usize = a.iter().map(|&x| x as usize).sum();
        if self.ambient_dim == 0 || total != self.ambient_dim - 1 {
            return Err(Error::Precondition(format!(
                "sum of a is {total}, expected D - 1 = {}",
                self.ambient_dim as i64 - 1
            )));
        }
        if self.spaces.iter().zip(a).any(|(w, &k)| k as usize > w.dim()) {
            return Ok(0);
        }
        let target = self.ambient_dim - 1;
        for _ in 0..trials {
            let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(target);
            for (w, &k) in self.spaces.iter().zip(a) {
                let sample = random_field_vectors_with(w, k as usize, rng);
                rows.extend(sample.row_iter().map(|r| r.to_vec()));
            }
            if rank_of_rows(rows.iter().map(Vec::as_slice)) != target {
                continue;
            }
            let off_base_locus = self
                .spaces
                .iter()
                .all(|w| rank_of_rows(rows.iter().map(Vec::as_slice).chain(w.basis().row_iter())) == self.ambient_dim);
            if off_base_locus {
                return Ok(1);
            }
        }
        Ok(0)
    }

    /// Arrangement of a vector configuration: each column
    /// `v_i` of `vectors` (in `Q^r`) becomes `W_i = span{v_i, e_0}` in
    /// `Q^r + Q e_0`, with `e_0` appended as the last coordinate. Then
    /// `li_rank` of the result is the rank function of the column matroid.
    ///
    /// A zero column gives `W_i = span{e_0}`; this is allowed and logged.
    pub fn ardila_boocher_lift(vectors: &RationalMatrix) -> SubspaceArrangement {
        let r = vectors.rows();
        let d = r + 1;
        let mut e0 = vec![BigRational::zero(); d];
        e0[r] = BigRational::one();
        let spaces = (0..vectors.cols())
            .map(|j| {
                let mut v = vectors.column(j);
                let zero = v.iter().all(Zero::is_zero);
                let rows = if zero {
                    log::warn!("column {} is zero; W_{} = span{{e_0}}", j + 1, j + 1);
                    vec![e0.clone()]
                } else {
                    v.push(BigRational::zero());
                    vec![v, e0.clone()]
                };
                Subspace::new(RationalMatrix::from_rows(d, rows).expect("rows have width d"))
                    .expect("v and e_0 are independent")
            })
            .collect();
        SubspaceArrangement { ambient_dim: d, spaces }
    }

    /// Embeds the arrangement's polymatroid in a linear matroid: `dim W_i`
    /// random vectors spanning each `W_i`, with block `i` assigned to element
    /// `i`. Verified against [`rank_function`] on every subset; resamples up
    /// to three times.
    ///
    /// [`rank_function`]: SubspaceArrangement::rank_function
    pub fn embed_in_matroid(&self, seed: u64) -> Result<MatroidEmbedding> {
        let f = self.rank_function()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..DEFAULT_TRIALS {
            let mut rows: Vec<Vec<BigRational>> = Vec::new();
            let mut blocks = Vec::with_capacity(self.n());
            for w in &self.spaces {
                let sample = random_field_vectors_with(w, w.dim(), &mut rng);
                let start = rows.len();
                rows.extend(sample.row_iter().map(|r| r.to_vec()));
                blocks.push((start..rows.len()).collect::<Vec<_>>());
            }
            let vectors = RationalMatrix::from_rows(self.ambient_dim, rows)?;
            let embedding = MatroidEmbedding { vectors, blocks };
            let ok = (0..1usize << self.n()).all(|s| embedding.union_rank(s) == f.get(s) as usize);
            if ok {
                return Ok(embedding);
            }
        }
        Err(Error::EmbeddingFailed(DEFAULT_TRIALS))
    }
}

/// Vectors `E'` plus an assignment of disjoint blocks of `E'` to the ground
/// elements, so that `f(I)` is the rank of the union of the blocks of `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidEmbedding {
    /// One vector per row.
    pub vectors: RationalMatrix,
    /// `blocks[i]` lists the rows assigned to element `i + 1`.
    pub blocks: Vec<Vec<usize>>,
}

impl MatroidEmbedding {
    /// Rank of the vectors in the blocks selected by `subset`.
    pub fn union_rank(&self, subset: usize) -> usize {
        let rows = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .flat_map(|(_, b)| b.iter().map(|&r| self.vectors.row(r)));
        rank_of_rows(rows)
    }
}

impl fmt::Display for MatroidEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vectors)?;
        writeln!(f, "assignment {}", self.blocks.len())?;
        for (i, b) in self.blocks.iter().enumerate() {
            let ids: Vec<String> = b.iter().map(|r| (r + 1).to_string()).collect();
            if ids.is_empty() {
                writeln!(f, "{}", i + 1)?;
            } else {
                writeln!(f, "{} {}", i + 1, ids.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for SubspaceArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arrangement {} {}", self.n(), self.ambient_dim)?;
        for s in &self.spaces {
            writeln!(f, "subspace")?;
            writeln!(f, "dim {}", s.dim())?;
            for row in s.basis().row_iter() {
                let line: Vec<String> = row.iter().map(format_rational).collect();
                writeln!(f, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FromStr for SubspaceArrangement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let mut toks = header.split_whitespace();
        expect_keyword(hl, toks.next(), "arrangement")?;
        let n: usize = parse_field(hl, toks.next(), "subspace count")?;
        let d: usize = parse_field(hl, toks.next(), "ambient dimension")?;
        expect_end(hl, toks)?;

        let mut spaces = Vec::with_capacity(n);
        for i in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hl, format!("expected {n} subspaces, found {i}")))?;
            let mut toks = line.split_whitespace();
            expect_keyword(ln, toks.next(), "subspace")?;
            expect_end(ln, toks)?;
            let (dl, dim_line) = lines.next().ok_or_else(|| parse_err(ln, "missing `dim` line"))?;
            let mut toks = dim_line.split_whitespace();
            expect_keyword(dl, toks.next(), "dim")?;
            let k: usize = parse_field(dl, toks.next(), "subspace dimension")?;
            expect_end(dl, toks)?;
            let header = format!("{k} {d}");
            let basis = parse_matrix_lines(&mut lines, (dl, &header))?;
            let space = Subspace::new(basis).map_err(|e| parse_err(dl, e.to_string()))?;
            spaces.push(space);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after arrangement"));
        }
        SubspaceArrangement::new(d, spaces)
    }
}

/// Seeded random arrangements for tests and benchmarks. Every result spans
/// its ambient space and has no zero subspace.
pub mod random {
    use super::*;

    /// `n` subspaces of `Q^ambient_dim`, each spanned by up to `ambient_dim`
    /// random vectors with entries in `[-bound, bound]`. Half of the draws
    /// take their spanning vectors from a small shared pool, which produces
    /// non-generic sum dimensions.
    pub fn sample_arrangement<R: Rng + ?Sized>(
        rng: &mut R,
        n: usize,
        ambient_dim: usize,
        bound: i64,
    ) -> SubspaceArrangement {
        assert!(n >= 1 && ambient_dim >= 1 && bound >= 1);
        loop {
            let pooled = rng.gen_bool(0.5);
            let pool: Vec<Vec<i64>> = (0..ambient_dim + 2)
                .map(|_| random_vector(rng, ambient_dim, bound))
                .collect();
            let spaces: Vec<Subspace> = (0..n)
                .map(|_| {
                    let k = rng.gen_range(1..=ambient_dim);
                    let rows: Vec<Vec<i64>> = (0..k)
                        .map(|_| {
                            if pooled {
                                pool[rng.gen_range(0..pool.len())].clone()
                            } else {
                                random_vector(rng, ambient_dim, bound)
                            }
                        })
                        .collect();
                    Subspace::spanned_by(&RationalMatrix::from_i64_rows(ambient_dim, &rows).expect("width matches"))
                })
                .collect();
            let arr = SubspaceArrangement::new(ambient_dim, spaces).expect("common ambient");
            if arr.check_li().is_ok() {
                return arr;
            }
        }
    }

    /// An integer `rows x cols` matrix of full row rank, entries in
    /// `[-bound, bound]`.
    pub fn sample_spanning_matrix<R: Rng + ?Sized>(
        rng: &mut R,
        rows: usize,
        cols: usize,
        bound: i64,
    ) -> RationalMatrix {
        assert!(rows <= cols);
        loop {
            let data: Vec<Vec<i64>> = (0..rows).map(|_| random_vector(rng, cols, bound)).collect();
            let m = RationalMatrix::from_i64_rows(cols, &data).expect("width matches");
            if m.rank() == rows {
                return m;
            }
        }
    }

    fn random_vector<R: Rng + ?Sized>(rng: &mut R, d: usize, bound: i64) -> Vec<i64> {
        (0..d).map(|_| rng.gen_range(-bound..=bound)).collect()
    }
}
