use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FreeGroupError;

/// A freely reduced word in the free group `F_rank`.
///
/// Letters are signed, 1-based generator indices: `3` is `x₃` and `-3` is
/// `x₃⁻¹`. No letter is ever followed by its own inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    /// Reduces a raw letter sequence. Fails when a letter is zero or names a
    /// generator beyond `rank`.
    pub fn reduce(letters: &[i32], rank: usize) -> Result<FreeWord, FreeGroupError> {
        if rank == 0 {
            return Err(FreeGroupError::ZeroRank);
        }
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for (position, &letter) in letters.iter().enumerate() {
            if letter == 0 || letter.unsigned_abs() as usize > rank {
                return Err(FreeGroupError::LetterOutOfRange {
                    letter,
                    position,
                    rank,
                });
            }
            push_reduced(&mut out, letter);
        }
        Ok(FreeWord {
            rank,
            letters: out,
        })
    }

    pub fn identity(rank: usize) -> FreeWord {
        assert!(rank > 0, "free group rank must be positive");
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_index` (1-based).
    pub fn generator(rank: usize, index: usize) -> FreeWord {
        assert!(index >= 1 && index <= rank, "generator index out of range");
        FreeWord {
            rank,
            letters: vec![index as i32],
        }
    }

    /// Product `x₁x₂…x_rank`.
    pub fn boundary_product(rank: usize) -> FreeWord {
        FreeWord {
            rank,
            letters: (1..=rank as i32).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.rank, other.rank, "rank mismatch in product");
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        FreeWord {
            rank: self.rank,
            letters,
        }
    }

    pub fn pow(&self, exponent: i64) -> FreeWord {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = FreeWord::identity(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.mul(other)
            .mul(&self.inverse())
            .mul(&other.inverse())
    }

    /// `self · inner · self⁻¹`.
    pub fn conjugate(&self, inner: &FreeWord) -> FreeWord {
        self.mul(inner).mul(&self.inverse())
    }

    /// Sum of the exponents of `x_index` in the word.
    pub fn exponent_sum(&self, index: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.unsigned_abs() as usize == index)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    /// Applies the endomorphism `x_j ↦ images[j-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        assert_eq!(images.len(), self.rank, "one image per generator");
        let target_rank = images.first().map(|w| w.rank).unwrap_or(self.rank);
        let mut letters = Vec::new();
        for &l in &self.letters {
            let image = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in &image.letters {
                    push_reduced(&mut letters, m);
                }
            } else {
                for &m in image.letters.iter().rev() {
                    push_reduced(&mut letters, -m);
                }
            }
        }
        FreeWord {
            rank: target_rank,
            letters,
        }
    }

    /// Splits a conjugate of a generator, `w·x_j^{±1}·w⁻¹`, into `(w, ±j)`.
    pub fn as_generator_conjugate(&self) -> Option<(FreeWord, i32)> {
        let n = self.letters.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let half = n / 2;
        let (head, rest) = self.letters.split_at(half);
        let centre = rest[0];
        let tail = &rest[1..];
        if head.iter().zip(tail.iter().rev()).all(|(&a, &b)| a == -b) {
            Some((
                FreeWord {
                    rank: self.rank,
                    letters: head.to_vec(),
                },
                centre,
            ))
        } else {
            None
        }
    }

    /// Shortlex order: shorter words first, then lexicographic with the
    /// letter order `x₁ < x₁⁻¹ < x₂ < x₂⁻¹ < …`.
    pub fn shortlex_cmp(&self, other: &FreeWord) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            let key = |l: &i32| (l.unsigned_abs(), *l < 0);
            self.letters
                .iter()
                .map(key)
                .cmp(other.letters.iter().map(key))
        })
    }
}

fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}
