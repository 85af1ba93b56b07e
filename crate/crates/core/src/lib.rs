//! Multidegree supports of subvarieties of products of projective spaces,
//! computed and checked through polymatroid theory.
//!
//! The crate is split by subject:
//!
//! * [`exactlin`]: exact rational matrices, ranks, subspaces and seeded
//!   random sampling inside a subspace.
//! * [`chowring`]: the truncated polynomial ring `Z[H_1..H_n]/(H_i^{m_i+1})`,
//!   multidegrees and supports.
//! * [`polymatroid`]: rank-function axioms, base-polytope lattice points, the
//!   `u_I` profile of a support, Ingleton checks.
//! * [`arrangement`]: subspace arrangements, their multiplicity-free classes, a
//!   randomized section-counting oracle, the Ardila–Boocher lift.
//! * [`flagvariety`]: Schubert divisor degrees on the complete flag variety,
//!   by coinvariant reduction and by Monk chains.
//!
//! All text formats are line oriented; every type that has one implements
//! `Display` for printing and `FromStr` for parsing.

pub mod arrangement;
pub mod chowring;
mod error;
pub mod exactlin;
pub mod flagvariety;
pub mod points;
pub mod polymatroid;
mod text;

pub use arrangement::{MatroidEmbedding, SubspaceArrangement};
pub use chowring::{Ambient, MultiClass, SupportSet};
pub use error::{Error, Result};
pub use exactlin::{RationalMatrix, Subspace, FIELD_SAMPLE_PRIME};
pub use flagvariety::{CoinvariantElement, FlagSupport, Permutation, Polynomial};
pub use points::LatticePointSet;
pub use polymatroid::{
    Frontier, IngletonMode, IngletonViolation, PolymatroidReport, RankFunction, SupportProfile, SupportVerdict,
};
