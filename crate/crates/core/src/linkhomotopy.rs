//! The reduced Magnus calculus for `F_d/μ₀`, where `μ₀` is the product of the
//! commutator subgroups of the normal closures of the generators.
//!
//! Words are expanded into `ℤ⟨X₁,…,X_d⟩` modulo every monomial in which some
//! variable repeats. Equality of these expansions is used as the decision
//! procedure for equality in `F_d/μ₀`. One direction (`μ₀` dies under the
//! expansion) is checked by tests; the converse, that an element with
//! trivial reduced expansion lies in `μ₀`, is the classical faithfulness of
//! the reduced Magnus expansion and is imported, not proved here. Results
//! that lean on it are flagged with [`REDUCED_FAITHFULNESS_ASSUMPTION`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Coeff;
use crate::freegroup::FreeWord;

/// Label attached to every verdict that treats the reduced expansion as
/// faithful on `F_d/μ₀`.
pub const REDUCED_FAITHFULNESS_ASSUMPTION: &str =
    "assumes the reduced Magnus expansion is faithful on F_d/mu_0 (imported theorem)";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkHomotopyError {
    #[error("index sequence {0:?} repeats a variable")]
    RepeatedIndex(Vec<usize>),
    #[error("index {index} is outside 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// An element of the repetition-free ring: monomials with pairwise distinct
/// indices, integer coefficients, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedTensor {
    rank: usize,
    coeffs: BTreeMap<Vec<usize>, BigInt>,
}

impl ReducedTensor {
    pub fn zero(rank: usize) -> Self {
        ReducedTensor {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        let mut t = Self::zero(rank);
        t.coeffs.insert(Vec::new(), BigInt::one());
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.rank)
    }

    pub fn coefficient(&self, monomial: &[usize]) -> BigInt {
        self.coeffs.get(monomial).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.coeffs.iter()
    }

    /// Number of basis monomials, `Σ_{k=0..d} d!/(d−k)!`.
    pub fn basis_size(rank: usize) -> u128 {
        let mut total: u128 = 0;
        let mut falling: u128 = 1;
        for k in 0..=rank {
            if k > 0 {
                falling *= (rank - k + 1) as u128;
            }
            total += falling;
        }
        total
    }

    fn add_term(&mut self, monomial: Vec<usize>, c: BigInt) {
        if c.is_zero() || has_repeat(&monomial) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(monomial) {
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

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Substitutes `X_j ↦ images[j] − 1`.
    ///
    /// Well defined on the quotient when every term of `images[j] − 1`
    /// contains some fixed variable `X_{π(j)}` with `π` a bijection, as for
    /// expansions of generator conjugates `w·x_{π(j)}·w⁻¹`.
    pub fn substitute(&self, images: &[ReducedTensor]) -> Self {
        assert_eq!(images.len(), self.rank, "one image per variable");
        let shifted: Vec<Vec<(&Vec<usize>, &BigInt)>> = images
            .iter()
            .map(|t| t.coeffs.iter().filter(|(m, _)| !m.is_empty()).collect())
            .collect();
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.coeffs {
            let mut partial: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), c.clone())];
            for &j in m {
                let mut next = Vec::new();
                for (pm, pc) in &partial {
                    for &(im, ic) in &shifted[j - 1] {
                        if im.iter().any(|i| pm.contains(i)) {
                            continue;
                        }
                        let mut nm = pm.clone();
                        nm.extend_from_slice(im);
                        next.push((nm, pc * ic));
                    }
                }
                partial = next;
            }
            for (pm, pc) in partial {
                out.add_term(pm, pc);
            }
        }
        out
    }

    /// Right multiplication by `x_i^{±1} ↦ 1 ± X_i` (higher powers vanish).
    fn mul_letter(&mut self, letter: i32) {
        let index = letter.unsigned_abs() as usize;
        let sign = if letter > 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let additions: Vec<(Vec<usize>, BigInt)> = self
            .coeffs
            .iter()
            .filter(|(m, _)| !m.contains(&index))
            .map(|(m, c)| {
                let mut m = m.clone();
                m.push(index);
                (m, c * &sign)
            })
            .collect();
        for (m, c) in additions {
            let entry = self.coeffs.entry(m).or_default();
            *entry += c;
        }
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    /// `(monomial, coefficient)` pairs in lexicographic monomial order.
    pub fn to_sorted_pairs(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.coeffs
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }
}

/// Wire form: a list of `(monomial index list, coefficient)` pairs sorted
/// lexicographically.
#[derive(Serialize, Deserialize)]
struct ReducedTensorWire {
    rank: usize,
    terms: Vec<(Vec<usize>, Coeff)>,
}

impl Serialize for ReducedTensor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ReducedTensorWire {
            rank: self.rank,
            terms: self
                .to_sorted_pairs()
                .into_iter()
                .map(|(m, c)| (m, Coeff(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ReducedTensor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ReducedTensorWire::deserialize(deserializer)?;
        let mut t = ReducedTensor::zero(wire.rank);
        for (m, Coeff(c)) in wire.terms {
            if has_repeat(&m) {
                return Err(serde::de::Error::custom(format!(
                    "monomial {m:?} repeats a variable"
                )));
            }
            if m.iter().any(|&i| i == 0 || i > wire.rank) {
                return Err(serde::de::Error::custom(format!(
                    "monomial {m:?} leaves 1..={}",
                    wire.rank
                )));
            }
            t.add_term(m, c);
        }
        Ok(t)
    }
}

fn has_repeat(m: &[usize]) -> bool {
    m.iter()
        .enumerate()
        .any(|(k, i)| m[k + 1..].contains(i))
}

pub fn reduced_expand(w: &FreeWord) -> ReducedTensor {
    let mut t = ReducedTensor::one(w.rank());
    for &l in w.letters() {
        t.mul_letter(l);
    }
    t
}

/// Equality in `F_d/μ₀` by comparison of reduced expansions.
pub fn rf_equal(u: &FreeWord, v: &FreeWord) -> bool {
    assert_eq!(u.rank(), v.rank(), "rank mismatch");
    reduced_expand(u) == reduced_expand(v)
}

/// Coefficient of `X_{i₁}…X_{i_k}` in the reduced expansion of `w`. For a
/// longitude of strand `j` this is the Milnor invariant `μ(i₁…i_k; j)`.
pub fn milnor_mu(w: &FreeWord, index: &[usize]) -> Result<BigInt, LinkHomotopyError> {
    if has_repeat(index) {
        return Err(LinkHomotopyError::RepeatedIndex(index.to_vec()));
    }
    if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > w.rank()) {
        return Err(LinkHomotopyError::IndexOutOfRange {
            index: bad,
            rank: w.rank(),
        });
    }
    Ok(reduced_expand(w).coefficient(index))
}
