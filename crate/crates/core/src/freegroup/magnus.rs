//! Magnus expansion into the noncommutative power series ring `ℤ⟨⟨X₁,…,X_d⟩⟩`,
//! truncated by degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::FreeWord;

/// A monomial `X_{i₁}…X_{i_k}` stored as its 1-based index sequence.
pub type Monomial = Vec<usize>;

/// An element of `ℤ⟨X₁,…,X_d⟩` modulo all monomials of degree `≥ cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    rank: usize,
    cap: usize,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(rank: usize, cap: usize) -> Self {
        assert!(cap >= 1, "truncation cap must be at least 1");
        TruncatedSeries {
            rank,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, cap: usize) -> Self {
        let mut s = Self::zero(rank, cap);
        s.add_term(Vec::new(), BigInt::one());
        s
    }

    /// `1 + X_index`.
    pub fn unit_variable(rank: usize, cap: usize, index: usize) -> Self {
        let mut s = Self::one(rank, cap);
        s.add_term(vec![index], BigInt::one());
        s
    }

    pub fn from_terms<I>(rank: usize, cap: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut s = Self::zero(rank, cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, monomial: &[usize]) -> BigInt {
        self.coeffs.get(monomial).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    /// Adds `c·m`, dropping it if it falls at or above the cap.
    pub fn add_term(&mut self, monomial: Monomial, c: BigInt) {
        if monomial.len() >= self.cap || c.is_zero() {
            return;
        }
        match self.coeffs.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            rank: self.rank,
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.rank, self.cap);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.len() + b.len() >= self.cap {
                    continue;
                }
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Right multiplication by the expansion of one letter `x_i^{±1}`.
    pub fn mul_letter(&self, letter: i32) -> Self {
        let index = letter.unsigned_abs() as usize;
        let mut out = self.clone();
        for (m, c) in &self.coeffs {
            let mut mono = m.clone();
            let mut coeff = c.clone();
            // x⁻¹ ↦ Σ (−X)^k, truncated; x ↦ 1 + X.
            let max_power = if letter > 0 { 1 } else { self.cap };
            for _ in 0..max_power {
                if mono.len() + 1 >= self.cap {
                    break;
                }
                mono.push(index);
                if letter < 0 {
                    coeff = -coeff;
                }
                out.add_term(mono.clone(), coeff.clone());
            }
        }
        out
    }

    /// Re-truncates at a smaller cap.
    pub fn truncate(&self, cap: usize) -> Self {
        assert!(cap >= 1 && cap <= self.cap, "can only lower the cap");
        TruncatedSeries {
            rank: self.rank,
            cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.len() < cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Smallest degree `k ≥ 1` carrying a nonzero coefficient.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Vec::len).filter(|&k| k > 0).min()
    }

    /// Degree-1 part, as `(index, coefficient)` pairs.
    pub fn linear_terms(&self) -> Vec<(usize, BigInt)> {
        self.coeffs
            .iter()
            .filter(|(m, _)| m.len() == 1)
            .map(|(m, c)| (m[0], c.clone()))
            .collect()
    }

    /// Ring substitution `X_j ↦ images[j-1] − 1`. Each image must have
    /// constant term 1, so the map respects the degree filtration.
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Self {
        assert_eq!(images.len(), self.rank, "one image per variable");
        let cap = self.cap;
        let shifted: Vec<TruncatedSeries> = images
            .iter()
            .map(|img| {
                assert_eq!(img.cap, cap, "substitution needs matching caps");
                img.sub(&TruncatedSeries::one(self.rank, cap))
            })
            .collect();
        let mut out = Self::zero(self.rank, cap);
        // Memoise products of shifted images by monomial prefix.
        let mut cache: BTreeMap<Monomial, TruncatedSeries> = BTreeMap::new();
        cache.insert(Vec::new(), TruncatedSeries::one(self.rank, cap));
        for (m, c) in &self.coeffs {
            let product = prefix_product(m, &shifted, &mut cache);
            for (pm, pc) in &product.coeffs {
                out.add_term(pm.clone(), pc * c);
            }
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        assert_eq!(self.cap, other.cap, "cap mismatch");
    }
}

fn prefix_product(
    m: &[usize],
    shifted: &[TruncatedSeries],
    cache: &mut BTreeMap<Monomial, TruncatedSeries>,
) -> TruncatedSeries {
    if let Some(hit) = cache.get(m) {
        return hit.clone();
    }
    let (last, head) = m.split_last().expect("empty monomial is cached");
    let value = prefix_product(head, shifted, cache).mul(&shifted[*last - 1]);
    cache.insert(m.to_vec(), value.clone());
    value
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        for (m, c) in terms {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            if m.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                for i in m {
                    write!(f, "X{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Magnus expansion `x_i ↦ 1 + X_i`, `x_i⁻¹ ↦ 1 − X_i + X_i² − …`,
/// truncated below degree `cap`.
pub fn magnus_expand(w: &FreeWord, cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(w.rank(), cap);
    for &l in w.letters() {
        s = s.mul_letter(l);
    }
    s
}

/// Position of a word in the lower central series, as seen through the
/// truncated expansion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LcsDepth {
    /// `w ∈ γ_k \ γ_{k+1}`.
    Exact(usize),
    /// Every term below the cap vanishes: `w ∈ γ_cap`, possibly deeper.
    AtLeast(usize),
    /// The trivial element, which lies in every `γ_k`.
    Identity,
}

pub fn lcs_depth(w: &FreeWord, cap: usize) -> LcsDepth {
    assert!(cap >= 2, "lcs depth needs cap at least 2");
    if w.is_identity() {
        return LcsDepth::Identity;
    }
    match magnus_expand(w, cap).lowest_positive_degree() {
        Some(k) => LcsDepth::Exact(k),
        None => LcsDepth::AtLeast(cap),
    }
}
