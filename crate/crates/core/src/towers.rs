//! Truncations of conjugacy automorphisms to the free nilpotent quotients
//! `F_d/γ_n`, and the 2-prem verdict driven by the order of a monodromy.
//!
//! The level-`n` image of an automorphism is the list of Magnus expansions
//! of its generator images with every monomial of degree `≥ n` dropped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{small_prime_divisor, ConjugacyAutomorphism, Permutation};
use crate::freegroup::{magnus_expand, FreeWord, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("levels differ: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("level must be at least 2, got {0}")]
    LevelTooLow(usize),
    #[error("torsion order must be at least 2, got {0}")]
    TrivialTorsion(u64),
    #[error("a permutation of order {permutation_order} cannot be the image of an element of order {torsion_order}")]
    OrderMismatch {
        torsion_order: u64,
        permutation_order: u64,
    },
}

/// Generator images in `Aut(F_d/γ_n)`, as Magnus expansions below degree `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelImage {
    level: usize,
    images: Vec<TruncatedSeries>,
}

impl LevelImage {
    pub fn identity(rank: usize, level: usize) -> Self {
        LevelImage {
            level,
            images: (1..=rank)
                .map(|i| TruncatedSeries::unit_variable(rank, level, i))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn images(&self) -> &[TruncatedSeries] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank(), self.level)
    }

    /// `self` first, then `other`, by substitution of truncated series.
    pub fn then(&self, other: &LevelImage) -> Result<LevelImage, TowerError> {
        self.check_compatible(other)?;
        Ok(LevelImage {
            level: self.level,
            images: self
                .images
                .iter()
                .map(|s| s.substitute(&other.images))
                .collect(),
        })
    }

    /// Forgets the levels `≥ level`.
    pub fn truncate(&self, level: usize) -> Result<LevelImage, TowerError> {
        if level < 2 {
            return Err(TowerError::LevelTooLow(level));
        }
        if level > self.level {
            return Err(TowerError::LevelMismatch(level, self.level));
        }
        Ok(LevelImage {
            level,
            images: self.images.iter().map(|s| s.truncate(level)).collect(),
        })
    }

    /// Expansion of `x₁…x_d` under the image; equals that of `x₁…x_d` itself
    /// whenever the image came from a [`ConjugacyAutomorphism`].
    pub fn boundary_image(&self) -> TruncatedSeries {
        let rank = self.rank();
        magnus_expand(&FreeWord::boundary_product(rank), self.level).substitute(&self.images)
    }

    fn check_compatible(&self, other: &LevelImage) -> Result<(), TowerError> {
        if self.rank() != other.rank() {
            return Err(TowerError::RankMismatch(self.rank(), other.rank()));
        }
        if self.level != other.level {
            return Err(TowerError::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }
}

impl Serialize for LevelImage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            level: usize,
            images: Vec<String>,
        }
        Wire {
            level: self.level,
            images: self.images.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

pub fn level_image(a: &ConjugacyAutomorphism, level: usize) -> Result<LevelImage, TowerError> {
    if level < 2 {
        return Err(TowerError::LevelTooLow(level));
    }
    Ok(LevelImage {
        level,
        images: a.images().iter().map(|w| magnus_expand(w, level)).collect(),
    })
}

pub fn tower_equal(p: &LevelImage, q: &LevelImage) -> Result<bool, TowerError> {
    p.check_compatible(q)?;
    Ok(p.images == q.images)
}

/// The first level at which an automorphism becomes visible.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelDegree {
    /// Trivial at every level below this one, nontrivial at it.
    Exact(usize),
    /// Trivial at every level up to and including the cap.
    AtLeast(usize),
}

/// Least `m ≤ cap` with `level_image(a, m)` different from the identity.
pub fn kernel_degree(a: &ConjugacyAutomorphism, cap: usize) -> Result<KernelDegree, TowerError> {
    let top = level_image(a, cap)?;
    let rank = a.rank();
    // A difference of degree k first shows up at level k + 1.
    let lowest = top
        .images
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            s.sub(&TruncatedSeries::unit_variable(rank, cap, i + 1))
                .terms()
                .map(|(m, _)| m.len())
                .min()
        })
        .min();
    Ok(match lowest {
        Some(k) => KernelDegree::Exact(k + 1),
        None => KernelDegree::AtLeast(cap),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PremVerdict {
    #[serde(rename = "NOT_2PREM")]
    Not2Prem,
    NoConclusion,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PremReport {
    pub verdict: PremVerdict,
    pub torsion_order: u64,
    pub permutation: Permutation,
    pub permutation_order: u64,
    pub divisor_witness: Option<u64>,
    pub reference: &'static str,
}

pub const PREM_REFERENCE: &str = "torsion-monodromy-obstruction";

/// A torsion element of the transverse fundamental group whose monodromy
/// has order divisible by 2, 3 or 5 rules out a 2-prem.
///
/// The monodromy order must divide `torsion_order`, since the monodromy is
/// a homomorphism.
pub fn prem_verdict(torsion_order: u64, monodromy: &Permutation) -> Result<PremReport, TowerError> {
    if torsion_order < 2 {
        return Err(TowerError::TrivialTorsion(torsion_order));
    }
    let permutation_order = monodromy.order();
    if !torsion_order.is_multiple_of(permutation_order) {
        return Err(TowerError::OrderMismatch {
            torsion_order,
            permutation_order,
        });
    }
    let divisor_witness = small_prime_divisor(permutation_order);
    Ok(PremReport {
        verdict: if divisor_witness.is_some() {
            PremVerdict::Not2Prem
        } else {
            PremVerdict::NoConclusion
        },
        torsion_order,
        permutation: monodromy.clone(),
        permutation_order,
        divisor_witness,
        reference: PREM_REFERENCE,
    })
}
