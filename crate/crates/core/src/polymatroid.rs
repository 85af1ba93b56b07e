//! Polymatroid and matroid rank functions on `[n]`, their base polytopes, and
//! the support-side counterpart: the `u_I` profile of a homogeneous point set
//! and the outer polytope `Q` it defines.
//!
//! Subsets are bitmasks: element `i` (1-based) is bit `i - 1`. All `2^n`
//! values are stored, so `n` is capped at [`MAX_GROUND_SET`].
//!
//! Rank-function text format:
//!
//! ```text
//! rankfn n
//! 0 f(0)
//! 1 f(1)
//! ...
//! ```
//!
//! with `2^n` lines in increasing bitmask order.

use crate::error::{parse_err, Error, Result};
use crate::points::LatticePointSet;
use crate::text::{content_lines, expect_end, expect_keyword, parse_field};
use std::fmt;
use std::str::FromStr;

pub const MAX_GROUND_SET: usize = 16;

/// Subset-mode Ingleton scans enumerate `5^n` assignments.
pub const MAX_INGLETON_SUBSETS: usize = 8;

/// Above this size the submodularity check uses the local form
/// `f(I+i) + f(I+j) >= f(I+i+j) + f(I)` instead of all pairs.
const MAX_PAIRWISE_SUBMODULAR: usize = 10;

/// An integer set function on the subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankFunction {
    n: usize,
    values: Vec<i64>,
}

impl RankFunction {
    pub fn new(n: usize, values: Vec<i64>) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge(n, MAX_GROUND_SET));
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(RankFunction { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> i64) -> Result<Self> {
        if n > MAX_GROUND_SET {
            return Err(Error::GroundSetTooLarge(n, MAX_GROUND_SET));
        }
        Ok(RankFunction {
            n,
            values: (0..1usize << n).map(f).collect(),
        })
    }

    /// `f(I) = |I|`.
    pub fn free_matroid(n: usize) -> Result<Self> {
        Self::from_fn(n, |s| s.count_ones() as i64)
    }

    /// `U_{k,n}`: `f(I) = min(|I|, k)`.
    pub fn uniform_matroid(k: usize, n: usize) -> Result<Self> {
        Self::from_fn(n, |s| (s.count_ones() as i64).min(k as i64))
    }

    /// Rank function of the matroid with the given bases:
    /// `r(S) = max |S ∩ B|`.
    pub fn from_bases(n: usize, bases: &[usize]) -> Result<Self> {
        Self::from_fn(n, |s| {
            bases.iter().map(|b| (s & b).count_ones() as i64).max().unwrap_or(0)
        })
    }

    /// The Vamos matroid: rank 4 on eight elements paired as
    /// `{1,2}, {3,4}, {5,6}, {7,8}`, where every 4-subset is a basis except
    /// five of the six unions of two pairs (all but `{5,6,7,8}`).
    pub fn vamos() -> Self {
        const PAIRS: [usize; 4] = [0b0000_0011, 0b0000_1100, 0b0011_0000, 0b1100_0000];
        let circuits = [
            PAIRS[0] | PAIRS[1],
            PAIRS[0] | PAIRS[2],
            PAIRS[0] | PAIRS[3],
            PAIRS[1] | PAIRS[2],
            PAIRS[1] | PAIRS[3],
        ];
        let bases: Vec<usize> = (0..1usize << 8)
            .filter(|s| s.count_ones() == 4 && !circuits.contains(s))
            .collect();
        Self::from_bases(8, &bases).expect("n = 8 is in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `f(I)` for the subset with bitmask `subset`.
    pub fn get(&self, subset: usize) -> i64 {
        self.values[subset]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn ground(&self) -> usize {
        (1 << self.n) - 1
    }

    /// `f([n])`.
    pub fn total(&self) -> i64 {
        self.values[self.ground()]
    }

    /// Pull back along a permutation of the ground set: the result's element
    /// `perm[i]` plays the role of element `i`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut values = vec![0; self.values.len()];
        for (s, &v) in self.values.iter().enumerate() {
            let t = (0..self.n)
                .filter(|&i| s >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << perm[i]);
            values[t] = v;
        }
        Ok(RankFunction { n: self.n, values })
    }
}

/// Renders a subset bitmask as `{1,3,4}`.
pub fn subset_label(mask: usize) -> String {
    let elems: Vec<String> = (0..usize::BITS as usize)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

/// A failed rank-function axiom, with the subsets involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// R1: `f(∅) != 0`.
    Normalization { value: i64 },
    /// R2: `f(I ∪ {element}) < f(I)`; `element` is 1-based.
    Monotonicity {
        subset: usize,
        element: usize,
        before: i64,
        after: i64,
    },
    /// R3: `f(I) + f(J) < f(I ∪ J) + f(I ∩ J)`.
    Submodularity {
        left: usize,
        right: usize,
        lhs: i64,
        rhs: i64,
    },
    /// R4: `f(I)` outside `[0, |I|]`.
    RankBound { subset: usize, value: i64 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Normalization { value } => write!(f, "R1 f({{}}) = {value} != 0"),
            AxiomViolation::Monotonicity {
                subset,
                element,
                before,
                after,
            } => write!(
                f,
                "R2 f({}) = {before} > f({}) = {after}",
                subset_label(subset),
                subset_label(subset | 1 << (element - 1))
            ),
            AxiomViolation::Submodularity { left, right, lhs, rhs } => write!(
                f,
                "R3 f({}) + f({}) = {lhs} < f({}) + f({}) = {rhs}",
                subset_label(left),
                subset_label(right),
                subset_label(left | right),
                subset_label(left & right)
            ),
            AxiomViolation::RankBound { subset, value } => write!(
                f,
                "R4 f({}) = {value} not in [0, {}]",
                subset_label(subset),
                subset.count_ones()
            ),
        }
    }
}

/// Outcome of an axiom check; violations are data.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolymatroidReport {
    pub violations: Vec<AxiomViolation>,
}

impl PolymatroidReport {
    /// No R1–R3 violation.
    pub fn is_polymatroid(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| !matches!(v, AxiomViolation::RankBound { .. }))
    }

    /// No violation at all. Only meaningful for reports from
    /// [`check_matroid`].
    pub fn is_matroid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks R1 (normalized), R2 (monotone on every cover) and R3 (submodular).
pub fn check_polymatroid(f: &RankFunction) -> PolymatroidReport {
    let mut violations = Vec::new();
    let n = f.n();
    let full = 1usize << n;
    if f.get(0) != 0 {
        violations.push(AxiomViolation::Normalization { value: f.get(0) });
    }
    for s in 0..full {
        for i in 0..n {
            if s >> i & 1 == 0 && f.get(s | 1 << i) < f.get(s) {
                violations.push(AxiomViolation::Monotonicity {
                    subset: s,
                    element: i + 1,
                    before: f.get(s),
                    after: f.get(s | 1 << i),
                });
            }
        }
    }
    let mut submodular = |i: usize, j: usize| {
        let lhs = f.get(i) + f.get(j);
        let rhs = f.get(i | j) + f.get(i & j);
        if lhs < rhs {
            violations.push(AxiomViolation::Submodularity {
                left: i,
                right: j,
                lhs,
                rhs,
            });
        }
    };
    if n <= MAX_PAIRWISE_SUBMODULAR {
        // comparable pairs hold with equality
        for i in 0..full {
            for j in i + 1..full {
                if i & j != i && i & j != j {
                    submodular(i, j);
                }
            }
        }
    } else {
        for s in 0..full {
            for a in 0..n {
                for b in a + 1..n {
                    if s >> a & 1 == 0 && s >> b & 1 == 0 {
                        submodular(s | 1 << a, s | 1 << b);
                    }
                }
            }
        }
    }
    PolymatroidReport { violations }
}

/// [`check_polymatroid`] plus R4: `0 <= r(I) <= |I|`.
pub fn check_matroid(f: &RankFunction) -> PolymatroidReport {
    let mut report = check_polymatroid(f);
    for s in 0..1usize << f.n() {
        let v = f.get(s);
        if v < 0 || v > s.count_ones() as i64 {
            report
                .violations
                .push(AxiomViolation::RankBound { subset: s, value: v });
        }
    }
    report
}

/// Integer points `t >= 0` with `sum t = total` and `sum_{i in I} t_i <= bound(I)`
/// for every subset `I`: a bounded scan over the box `t_i <= bound({i})`
/// followed by the full inequality filter.
pub(crate) fn bounded_lattice_points(n: usize, total: i64, bound: impl Fn(usize) -> i64) -> LatticePointSet {
    let mut out = LatticePointSet::new(n);
    if total < 0 {
        return out;
    }
    let caps: Vec<i64> = (0..n).map(|i| bound(1 << i).min(total)).collect();
    if caps.iter().any(|&c| c < 0) {
        return out;
    }
    // tail[i] = room left in coordinates i.., for pruning
    let mut tail = vec![0i64; n + 1];
    for i in (0..n).rev() {
        tail[i] = tail[i + 1] + caps[i];
    }
    let bounds: Vec<i64> = (0..1usize << n).map(&bound).collect();
    let mut t = vec![0i64; n];
    let mut sums = vec![0i64; 1 << n];
    scan(0, total, &caps, &tail, &mut t, &mut |t| {
        for s in 1..sums.len() {
            let low = s.trailing_zeros() as usize;
            sums[s] = sums[s & (s - 1)] + t[low];
            if sums[s] > bounds[s] {
                return;
            }
        }
        out.insert(t.iter().map(|&x| x as u32).collect()).expect("length n");
    });
    out
}

fn scan(i: usize, remaining: i64, caps: &[i64], tail: &[i64], t: &mut [i64], visit: &mut dyn FnMut(&[i64])) {
    if i == t.len() {
        if remaining == 0 {
            visit(t);
        }
        return;
    }
    let lo = (remaining - tail[i + 1]).max(0);
    let hi = caps[i].min(remaining);
    for x in lo..=hi {
        t[i] = x;
        scan(i + 1, remaining - x, caps, tail, t, visit);
    }
    t[i] = 0;
}

/// Lattice points of the base polytope
/// `{t >= 0 : sum t = f([n]), sum_{i in I} t_i <= f(I)}`, lex-sorted.
pub fn base_polytope_points(f: &RankFunction) -> Result<LatticePointSet> {
    let report = check_polymatroid(f);
    if !report.is_polymatroid() {
        return Err(Error::InvalidRankFunction(report.violations.len()));
    }
    Ok(bounded_lattice_points(f.n(), f.total(), |s| f.get(s)))
}

/// The involution `a -> m - a` between dimension-form and codimension-form
/// vectors.
pub fn codim_form(points: &LatticePointSet, dims: &[u32]) -> Result<LatticePointSet> {
    if dims.len() != points.n() {
        return Err(Error::DimensionMismatch {
            expected: points.n(),
            found: dims.len(),
        });
    }
    let mut out = LatticePointSet::new(points.n());
    for p in points.iter() {
        let mut q = Vec::with_capacity(p.len());
        for (i, (&x, &m)) in p.iter().zip(dims).enumerate() {
            if x > m {
                return Err(Error::CoordinateOverflow {
                    coordinate: i + 1,
                    value: x as u64,
                    bound: m as u64,
                });
            }
            q.push(m - x);
        }
        out.insert(q)?;
    }
    Ok(out)
}

/// A homogeneous support set `M` together with `u_I = max_{a in M} sum_{i in I} a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportProfile {
    pub d: u64,
    pub support: LatticePointSet,
    pub u: RankFunction,
}

impl SupportProfile {
    pub fn n(&self) -> usize {
        self.support.n()
    }
}

pub fn u_profile(support: &LatticePointSet) -> Result<SupportProfile> {
    let n = support.n();
    if n > MAX_GROUND_SET {
        return Err(Error::GroundSetTooLarge(n, MAX_GROUND_SET));
    }
    let d = support.common_sum()?.ok_or(Error::EmptySupport)?;
    let mut u = vec![0i64; 1 << n];
    let mut sums = vec![0i64; 1 << n];
    for p in support.iter() {
        for s in 1..1usize << n {
            let low = s.trailing_zeros() as usize;
            sums[s] = sums[s & (s - 1)] + p[low] as i64;
            u[s] = u[s].max(sums[s]);
        }
    }
    Ok(SupportProfile {
        d,
        support: support.clone(),
        u: RankFunction::new(n, u)?,
    })
}

/// `Q = {a >= 0 : sum a = d, sum_{i in I} a_i <= u_I}`. Always contains the
/// support.
pub fn q_points(profile: &SupportProfile) -> LatticePointSet {
    bounded_lattice_points(profile.n(), profile.d as i64, |s| profile.u.get(s))
}

/// Result of comparing a support `M` with its outer polytope `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVerdict {
    /// `M = Q`.
    pub holds: bool,
    /// Smallest (lex) point of `Q \ M`, if any.
    pub witness: Option<Vec<u32>>,
    pub profile: SupportProfile,
    pub q: LatticePointSet,
}

/// Checks that a dimension-form support is exactly the set of lattice points
/// of the polytope cut out by its own `u_I`.
pub fn verify_support_theorem(support: &LatticePointSet) -> Result<SupportVerdict> {
    let profile = u_profile(support)?;
    let q = q_points(&profile);
    debug_assert!(support.is_subset(&q));
    let witness = q.difference(support).next().cloned();
    Ok(SupportVerdict {
        holds: witness.is_none(),
        witness,
        profile,
        q,
    })
}

/// Which tuples an Ingleton scan ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IngletonMode {
    /// Four distinct ground elements.
    #[default]
    Elements,
    /// Four pairwise disjoint nonempty subsets (`n <= 8`).
    Subsets,
}

/// A tuple `(A1, A2, A3, A4)` (as bitmasks) with
/// `[12] + [3] + [4] + [134] + [234] > [13] + [14] + [23] + [24] + [34]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngletonViolation {
    pub slots: [usize; 4],
    pub lhs: i64,
    pub rhs: i64,
}

impl fmt::Display for IngletonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.slots.map(subset_label);
        write!(f, "A1={a} A2={b} A3={c} A4={d} lhs={} rhs={}", self.lhs, self.rhs)
    }
}

fn ingleton_sides(f: &RankFunction, [a, b, c, d]: [usize; 4]) -> (i64, i64) {
    let lhs = f.get(a | b) + f.get(c) + f.get(d) + f.get(a | c | d) + f.get(b | c | d);
    let rhs = f.get(a | c) + f.get(a | d) + f.get(b | c) + f.get(b | d) + f.get(c | d);
    (lhs, rhs)
}

/// Every violating tuple, deduplicated by the symmetries `A1 <-> A2` and
/// `A3 <-> A4` (tuples are reported with `A1 < A2`, `A3 < A4`).
pub fn ingleton_check(f: &RankFunction, mode: IngletonMode) -> Result<Vec<IngletonViolation>> {
    let n = f.n();
    let mut out = Vec::new();
    let mut test = |slots: [usize; 4]| {
        let (lhs, rhs) = ingleton_sides(f, slots);
        if lhs > rhs {
            out.push(IngletonViolation { slots, lhs, rhs });
        }
    };
    match mode {
        IngletonMode::Elements => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in 0..n {
                        for d in c + 1..n {
                            if [a, b].contains(&c) || [a, b].contains(&d) {
                                continue;
                            }
                            test([1 << a, 1 << b, 1 << c, 1 << d]);
                        }
                    }
                }
            }
        }
        IngletonMode::Subsets => {
            if n > MAX_INGLETON_SUBSETS {
                return Err(Error::GroundSetTooLarge(n, MAX_INGLETON_SUBSETS));
            }
            // each element goes to slot 0..4, or nowhere (4)
            let total = 5usize.pow(n as u32);
            for code in 0..total {
                let mut slots = [0usize; 4];
                let mut c = code;
                for e in 0..n {
                    let k = c % 5;
                    c /= 5;
                    if k < 4 {
                        slots[k] |= 1 << e;
                    }
                }
                if slots.iter().all(|&s| s != 0) && slots[0] < slots[1] && slots[2] < slots[3] {
                    test(slots);
                }
            }
            out.sort_by_key(|x| x.slots);
        }
    }
    Ok(out)
}

/// Representability verdict from the known necessary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frontier {
    /// Small ground sets where the checked inequalities are also sufficient.
    ConsistentRepresentable,
    /// An Ingleton instance fails, so `f` is not representable.
    NecessaryConditionsFail,
    /// Ingleton holds but `n >= 5`, where more inequalities are needed.
    Inconclusive,
}

impl fmt::Display for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Frontier::ConsistentRepresentable => "consistent-representable",
            Frontier::NecessaryConditionsFail => "necessary-conditions-fail",
            Frontier::Inconclusive => "inconclusive",
        })
    }
}

/// For `n <= 3` every polymatroid lies in the representable cone; for
/// `n = 4` Ingleton on elements decides it; beyond that Ingleton can only
/// refute. For `5 <= n <= 8` the subset form of Ingleton is scanned as well.
pub fn representability_frontier(f: &RankFunction) -> Result<Frontier> {
    let report = check_polymatroid(f);
    if !report.is_polymatroid() {
        return Err(Error::InvalidRankFunction(report.violations.len()));
    }
    let n = f.n();
    if n <= 3 {
        return Ok(Frontier::ConsistentRepresentable);
    }
    let mut violated = !ingleton_check(f, IngletonMode::Elements)?.is_empty();
    if n == 4 {
        return Ok(if violated {
            Frontier::NecessaryConditionsFail
        } else {
            Frontier::ConsistentRepresentable
        });
    }
    if !violated && n <= MAX_INGLETON_SUBSETS {
        violated = !ingleton_check(f, IngletonMode::Subsets)?.is_empty();
    }
    Ok(if violated {
        Frontier::NecessaryConditionsFail
    } else {
        Frontier::Inconclusive
    })
}

impl fmt::Display for RankFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rankfn {}", self.n)?;
        for (s, v) in self.values.iter().enumerate() {
            writeln!(f, "{s} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for RankFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let mut toks = header.split_whitespace();
        expect_keyword(hl, toks.next(), "rankfn")?;
        let n: usize = parse_field(hl, toks.next(), "ground set size")?;
        expect_end(hl, toks)?;
        if n > MAX_GROUND_SET {
            return Err(parse_err(hl, format!("ground set size {n} exceeds {MAX_GROUND_SET}")));
        }
        let mut values = Vec::with_capacity(1 << n);
        for (ln, line) in lines {
            let mut toks = line.split_whitespace();
            let mask: usize = parse_field(ln, toks.next(), "bitmask")?;
            let v: i64 = parse_field(ln, toks.next(), "value")?;
            expect_end(ln, toks)?;
            if mask != values.len() {
                return Err(parse_err(
                    ln,
                    format!("expected bitmask {}, found {mask}", values.len()),
                ));
            }
            values.push(v);
        }
        if values.len() != 1 << n {
            return Err(parse_err(
                hl,
                format!("expected {} values, found {}", 1 << n, values.len()),
            ));
        }
        RankFunction::new(n, values)
    }
}

/// The greedy base `t_i = f([i]) - f([i-1])`; a member of the base polytope of
/// every polymatroid.
pub fn greedy_base(f: &RankFunction) -> Vec<i64> {
    (0..f.n())
        .map(|i| f.get((1 << (i + 1)) - 1) - f.get((1 << i) - 1))
        .collect()
}
