//! Braid words, the Artin action on `F_d`, and the invariants read off it.
//!
//! Braid words act left to right: the Artin image of `uv` applies the image
//! of `u` first and then the image of `v`. The generator `σᵢ` acts by
//! `xᵢ ↦ xᵢxᵢ₊₁xᵢ⁻¹`, `xᵢ₊₁ ↦ xᵢ`, and counts `+1` for the crossing of the
//! strands at positions `i`, `i+1`.

mod permutation;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::FreeWord;
use crate::linkhomotopy::{reduced_expand, ReducedTensor};

pub use permutation::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    ZeroStrands,
    #[error("letter {letter} at position {position} is outside generators 1..{strands}")]
    LetterOutOfRange {
        letter: i32,
        position: usize,
        strands: usize,
    },
    #[error("strand count mismatch: expected {expected}, found {found}")]
    StrandMismatch { expected: usize, found: usize },
    #[error("braid is not pure: its permutation is {0}")]
    NotPure(String),
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("image of x{0} is not a conjugate of a generator")]
    NotConjugate(usize),
    #[error("automorphism does not fix the product x1...x{0}")]
    ProductNotFixed(usize),
    #[error("expected {expected} braids, found {found}")]
    WrongCount { expected: usize, found: usize },
}

/// A word in the Artin generators of `B_d`: `i` is `σᵢ`, `-i` is `σᵢ⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::ZeroStrands);
        }
        for (position, &letter) in letters.iter().enumerate() {
            if letter == 0 || letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange {
                    letter,
                    position,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "a braid needs at least one strand");
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `σ_i` (or its inverse for negative `i`).
    pub fn generator(strands: usize, i: i32) -> Self {
        Self::new(strands, vec![i]).expect("generator index in range")
    }

    /// The pure braid `A_ij`, `i < j`: strand `j` passes behind the strands
    /// between and winds once around strand `i`.
    pub fn pure_generator(strands: usize, i: usize, j: usize) -> Self {
        assert!(1 <= i && i < j && j <= strands, "need 1 <= i < j <= strands");
        let mut letters: Vec<i32> = ((i + 1)..j).rev().map(|k| k as i32).collect();
        letters.push(i as i32);
        letters.push(i as i32);
        letters.extend(((i + 1)..j).map(|k| -(k as i32)));
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &BraidWord) -> BraidWord {
        self.concat(other)
            .concat(&self.inverse())
            .concat(&other.inverse())
    }

    pub fn pow(&self, exponent: i64) -> BraidWord {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "s{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// An automorphism of `F_d` of the shape `xᵢ ↦ wᵢ·x_{π(i)}·wᵢ⁻¹` that fixes
/// `x₁x₂…x_d`. Stored by its reduced generator images.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConjugacyAutomorphism {
    perm: Permutation,
    images: Vec<FreeWord>,
}

impl ConjugacyAutomorphism {
    pub fn identity(rank: usize) -> Self {
        ConjugacyAutomorphism {
            perm: Permutation::identity(rank),
            images: (1..=rank).map(|i| FreeWord::generator(rank, i)).collect(),
        }
    }

    /// Builds `xᵢ ↦ wᵢ·x_{π(i)}·wᵢ⁻¹` and checks that the product of the
    /// generators is fixed.
    pub fn from_conjugators(
        perm: Permutation,
        conjugators: &[FreeWord],
    ) -> Result<Self, BraidError> {
        let rank = perm.degree();
        if conjugators.len() != rank {
            return Err(BraidError::WrongCount {
                expected: rank,
                found: conjugators.len(),
            });
        }
        let images = conjugators
            .iter()
            .enumerate()
            .map(|(i, w)| {
                if w.rank() != rank {
                    return Err(BraidError::StrandMismatch {
                        expected: rank,
                        found: w.rank(),
                    });
                }
                Ok(w.conjugate(&FreeWord::generator(rank, perm.apply(i) + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::checked(perm, images)
    }

    /// Reads the permutation and conjugators off explicit generator images.
    pub fn from_images(images: Vec<FreeWord>) -> Result<Self, BraidError> {
        let rank = images.len();
        let mut targets = Vec::with_capacity(rank);
        for (i, img) in images.iter().enumerate() {
            match img.as_generator_conjugate() {
                Some((_, centre)) if centre > 0 && img.rank() == rank => {
                    targets.push(centre as usize - 1)
                }
                _ => return Err(BraidError::NotConjugate(i + 1)),
            }
        }
        let perm = Permutation::from_images(targets)?;
        Self::checked(perm, images)
    }

    fn checked(perm: Permutation, images: Vec<FreeWord>) -> Result<Self, BraidError> {
        let rank = perm.degree();
        let product = FreeWord::boundary_product(rank);
        if product.substitute(&images) != product {
            return Err(BraidError::ProductNotFixed(rank));
        }
        Ok(ConjugacyAutomorphism { perm, images })
    }

    /// The action of `σᵢ^{±1}` on `F_d`.
    pub fn artin_generator(rank: usize, letter: i32) -> Self {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < rank, "generator index out of range");
        let x = |k: usize| FreeWord::generator(rank, k);
        let mut images: Vec<FreeWord> = (1..=rank).map(x).collect();
        if letter > 0 {
            images[i - 1] = x(i).conjugate(&x(i + 1));
            images[i] = x(i);
        } else {
            images[i - 1] = x(i + 1);
            images[i] = x(i + 1).inverse().conjugate(&x(i));
        }
        ConjugacyAutomorphism {
            perm: Permutation::transposition(rank, i - 1, i),
            images,
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// Reduced image of `x_index` (1-based).
    pub fn image(&self, index: usize) -> &FreeWord {
        &self.images[index - 1]
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    /// The conjugator `wᵢ` of the reduced image `wᵢ·x_{π(i)}·wᵢ⁻¹`, with no
    /// trailing power of `x_{π(i)}`.
    pub fn conjugator(&self, index: usize) -> FreeWord {
        self.images[index - 1]
            .as_generator_conjugate()
            .expect("images are generator conjugates by construction")
            .0
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [(i + 1) as i32])
    }

    /// `self` first, then `other`: `xᵢ ↦ other(self(xᵢ))`.
    pub fn then(&self, other: &ConjugacyAutomorphism) -> ConjugacyAutomorphism {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        ConjugacyAutomorphism {
            perm: self.perm.then(&other.perm),
            images: self
                .images
                .iter()
                .map(|w| w.substitute(&other.images))
                .collect(),
        }
    }

    /// Applies the automorphism to a word.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }
}

impl Serialize for ConjugacyAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            rank: usize,
            permutation: &'a Permutation,
            conjugators: Vec<Vec<i32>>,
        }
        Wire {
            rank: self.rank(),
            permutation: &self.perm,
            conjugators: (1..=self.rank())
                .map(|i| self.conjugator(i).letters().to_vec())
                .collect(),
        }
        .serialize(s)
    }
}

pub fn permutation_of(b: &BraidWord) -> Permutation {
    b.letters.iter().fold(Permutation::identity(b.strands), |p, &l| {
        let i = l.unsigned_abs() as usize;
        p.then(&Permutation::transposition(b.strands, i - 1, i))
    })
}

pub fn artin_action(b: &BraidWord) -> ConjugacyAutomorphism {
    b.letters
        .iter()
        .fold(ConjugacyAutomorphism::identity(b.strands), |a, &l| {
            a.then(&ConjugacyAutomorphism::artin_generator(b.strands, l))
        })
}

/// Exact word problem in `B_d` through the faithful Artin action.
pub fn is_trivial_braid(b: &BraidWord) -> bool {
    artin_action(b).is_identity()
}

/// Linking numbers of a pure braid, by tracking which strands occupy each
/// position and counting signed crossings per pair.
pub fn linking_matrix(b: &BraidWord) -> Result<Vec<Vec<i64>>, BraidError> {
    let perm = permutation_of(b);
    if !perm.is_identity() {
        return Err(BraidError::NotPure(perm.to_string()));
    }
    let d = b.strands;
    let mut at: Vec<usize> = (0..d).collect();
    let mut crossings = vec![vec![0i64; d]; d];
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (s, t) = (at[i], at[i + 1]);
        let sign = if l > 0 { 1 } else { -1 };
        crossings[s][t] += sign;
        crossings[t][s] += sign;
        at.swap(i, i + 1);
    }
    Ok(crossings
        .into_iter()
        .map(|row| row.into_iter().map(|c| c / 2).collect())
        .collect())
}

/// Triviality in the homotopy braid group: every generator image equals the
/// generator in `F_d/μ₀`. Relies on the faithfulness of the reduced
/// expansion, see [`crate::linkhomotopy::REDUCED_FAITHFULNESS_ASSUMPTION`].
///
/// The reduced expansions of the images are carried through the word one
/// generator at a time, so the cost stays linear in the braid length even
/// when the free-group images grow exponentially.
pub fn hb_is_trivial(b: &BraidWord) -> bool {
    if !permutation_of(b).is_identity() {
        return false;
    }
    let d = b.strands;
    let identity: Vec<ReducedTensor> = (1..=d)
        .map(|i| reduced_expand(&FreeWord::generator(d, i)))
        .collect();
    let mut generators: BTreeMap<i32, Vec<ReducedTensor>> = BTreeMap::new();
    let mut images = identity.clone();
    for &l in &b.letters {
        let g = generators.entry(l).or_insert_with(|| {
            ConjugacyAutomorphism::artin_generator(d, l)
                .images
                .iter()
                .map(reduced_expand)
                .collect()
        });
        images = images.iter().map(|t| t.substitute(g)).collect();
    }
    images == identity
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HumphriesVerdict {
    InfiniteOrder,
    NoConclusion,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HumphriesCertificate {
    pub verdict: HumphriesVerdict,
    pub permutation: Permutation,
    pub permutation_order: u64,
    /// The smallest of 2, 3, 5 dividing the order, if any.
    pub divisor_witness: Option<u64>,
}

/// The smallest of 2, 3, 5 dividing `n`.
pub fn small_prime_divisor(n: u64) -> Option<u64> {
    [2, 3, 5].into_iter().find(|p| n.is_multiple_of(*p))
}

/// A braid whose permutation has order divisible by 2, 3 or 5 has infinite
/// order in `HB_d`.
pub fn humphries_certificate(b: &BraidWord) -> HumphriesCertificate {
    let permutation = permutation_of(b);
    let permutation_order = permutation.order();
    let divisor_witness = small_prime_divisor(permutation_order);
    HumphriesCertificate {
        verdict: if divisor_witness.is_some() {
            HumphriesVerdict::InfiniteOrder
        } else {
            HumphriesVerdict::NoConclusion
        },
        permutation,
        permutation_order,
        divisor_witness,
    }
}

/// Whether `xᵢ ↦ β_{2i−1}`, `yᵢ ↦ β_{2i}` extends over the genus-`g`
/// surface group, i.e. whether `[β₁,β₂]…[β_{2g−1},β_{2g}]` is trivial.
pub fn covering_lift_check(genus: usize, images: &[BraidWord]) -> Result<bool, BraidError> {
    if images.len() != 2 * genus {
        return Err(BraidError::WrongCount {
            expected: 2 * genus,
            found: images.len(),
        });
    }
    let Some(first) = images.first() else {
        return Ok(true);
    };
    let d = first.strands;
    if let Some(bad) = images.iter().find(|b| b.strands != d) {
        return Err(BraidError::StrandMismatch {
            expected: d,
            found: bad.strands,
        });
    }
    let relator = images
        .chunks(2)
        .fold(BraidWord::identity(d), |acc, pair| {
            acc.concat(&pair[0].commutator(&pair[1]))
        });
    Ok(is_trivial_braid(&relator))
}

/// Longitude of strand `j` of a pure braid: the conjugator of `x_j` in the
/// Artin image, corrected by a power of `x_j` to have exponent sum zero in
/// `x_j`.
pub fn longitude(b: &BraidWord, strand: usize) -> Result<FreeWord, BraidError> {
    let a = artin_action(b);
    if !a.permutation().is_identity() {
        return Err(BraidError::NotPure(a.permutation().to_string()));
    }
    let w = a.conjugator(strand);
    let e = w.exponent_sum(strand);
    Ok(w.mul(&FreeWord::generator(b.strands, strand).pow(-e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(d: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(d, letters.to_vec()).unwrap()
    }

    fn fw(letters: &[i32], rank: usize) -> FreeWord {
        FreeWord::reduce(letters, rank).unwrap()
    }

    #[test]
    fn sigma_one_on_two_strands() {
        let a = artin_action(&bw(2, &[1]));
        assert_eq!(a.image(1), &fw(&[1, 2, -1], 2));
        assert_eq!(a.image(2), &fw(&[1], 2));
        assert_eq!(a.permutation().one_based(), vec![2, 1]);
    }

    #[test]
    fn left_factor_acts_first() {
        // σ₁ then σ₂: substitute the σ₂ images into x₁x₂x₁⁻¹.
        let s1 = ConjugacyAutomorphism::artin_generator(3, 1);
        let s2 = ConjugacyAutomorphism::artin_generator(3, 2);
        let a = artin_action(&bw(3, &[1, 2]));
        let by_hand = s1.image(1).substitute(s2.images());
        assert_eq!(a.image(1), &by_hand);
        assert_eq!(by_hand, fw(&[1, 2, 3, -2, -1], 3));
    }

    #[test]
    fn inverse_generator_cancels() {
        assert!(is_trivial_braid(&bw(3, &[1, -1])));
        assert!(is_trivial_braid(&bw(3, &[-2, 2])));
        assert!(!is_trivial_braid(&bw(3, &[1])));
    }

    #[test]
    fn braid_relation_word_is_trivial() {
        assert!(is_trivial_braid(&bw(3, &[1, 2, 1, -2, -1, -2])));
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn commutator_is_three_cycle() {
        let c = bw(3, &[1]).commutator(&bw(3, &[2]));
        assert_eq!(permutation_of(&c).order(), 3);
        assert!(permutation_of(&c.pow(3)).is_identity());
    }

    #[test]
    fn linking_of_full_twist() {
        assert_eq!(linking_matrix(&bw(2, &[1, 1])).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(linking_matrix(&bw(2, &[])).unwrap(), vec![vec![0, 0], vec![0, 0]]);
        assert!(matches!(linking_matrix(&bw(2, &[1])), Err(BraidError::NotPure(_))));
    }

    #[test]
    fn pure_generator_links_one_pair() {
        let a = BraidWord::pure_generator(4, 1, 3);
        let lk = linking_matrix(&a).unwrap();
        assert_eq!(lk[0][2], 1);
        assert_eq!(lk.iter().flatten().filter(|&&v| v != 0).count(), 2);
    }

    #[test]
    fn homotopy_triviality() {
        assert!(hb_is_trivial(&bw(3, &[])));
        assert!(!hb_is_trivial(&bw(2, &[1, 1])));
        let c = bw(3, &[1]).commutator(&bw(3, &[2])).pow(3);
        assert!(!hb_is_trivial(&c));
    }

    #[test]
    fn humphries_cases() {
        let c = bw(3, &[1]).commutator(&bw(3, &[2]));
        let cert = humphries_certificate(&c);
        assert_eq!(cert.verdict, HumphriesVerdict::InfiniteOrder);
        assert_eq!(cert.permutation_order, 3);
        assert_eq!(cert.divisor_witness, Some(3));
        assert_eq!(
            humphries_certificate(&bw(2, &[1, 1])).verdict,
            HumphriesVerdict::NoConclusion
        );
        let seven = bw(7, &[1, 2, 3, 4, 5, 6]);
        let cert = humphries_certificate(&seven);
        assert_eq!(cert.permutation_order, 7);
        assert_eq!(cert.verdict, HumphriesVerdict::NoConclusion);
    }

    #[test]
    fn lift_check() {
        assert!(covering_lift_check(0, &[]).unwrap());
        assert!(covering_lift_check(1, &[bw(3, &[1]), bw(3, &[1])]).unwrap());
        assert!(!covering_lift_check(1, &[bw(3, &[1]), bw(3, &[2])]).unwrap());
        assert!(covering_lift_check(1, &[bw(3, &[1])]).is_err());
        assert!(covering_lift_check(1, &[bw(3, &[1]), bw(4, &[1])]).is_err());
    }

    #[test]
    fn longitudes_of_full_twist() {
        let twist = bw(2, &[1, 1]);
        assert_eq!(longitude(&twist, 2).unwrap(), fw(&[1], 2));
        let l1 = longitude(&twist, 1).unwrap();
        assert_eq!(l1.exponent_sum(1), 0);
        assert_eq!(l1.exponent_sum(2), 1);
    }

    #[test]
    fn automorphism_constructors_check_product() {
        let swap = Permutation::transposition(2, 0, 1);
        let ok = ConjugacyAutomorphism::from_conjugators(
            swap.clone(),
            &[fw(&[1], 2), FreeWord::identity(2)],
        )
        .unwrap();
        assert_eq!(ok, artin_action(&bw(2, &[1])));
        assert!(matches!(
            ConjugacyAutomorphism::from_conjugators(
                swap,
                &[FreeWord::identity(2), FreeWord::identity(2)]
            ),
            Err(BraidError::ProductNotFixed(2))
        ));
        assert!(ConjugacyAutomorphism::from_images(vec![fw(&[1, 2], 2), fw(&[2], 2)]).is_err());
    }
}
