//! Exact arithmetic in finitely generated free groups.

mod magnus;
mod stallings;
mod word;

use thiserror::Error;

pub use magnus::{lcs_depth, magnus_expand, LcsDepth, Monomial, TruncatedSeries};
pub use stallings::{double_coset_equal, fold, subgroup_contains, SubgroupGraph};
pub use word::FreeWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("free group rank must be positive")]
    ZeroRank,
    #[error("letter {letter} at position {position} is outside generators 1..={rank}")]
    LetterOutOfRange {
        letter: i32,
        position: usize,
        rank: usize,
    },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
}
