//! Signed sums of double cosets `HgH` in a free group `G`, modulo the two
//! moves available on the double points of a generic lift: cancelling a
//! pair of opposite signs in one double coset, and (unless the map is a
//! covering) deleting a single point whose double coset is `H` itself.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{
    double_coset_equal, fold, subgroup_contains, FreeGroupError, FreeWord, SubgroupGraph,
};

/// Default word-length bound for the representative search.
pub const DEFAULT_REPRESENTATIVE_BOUND: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error(transparent)]
    Word(#[from] FreeGroupError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(s: i64) -> Result<Sign, ThetaError> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(ThetaError::BadSign(other)),
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_int())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Sign::from_int(i64::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaEntry {
    pub sign: Sign,
    pub word: FreeWord,
}

/// `Σ ε_z Hg_zH` with `G = F_rank`.
#[derive(Clone, Debug)]
pub struct DoubleCosetSum {
    h: SubgroupGraph,
    covering: bool,
    entries: Vec<ThetaEntry>,
}

impl DoubleCosetSum {
    pub fn new(h: SubgroupGraph, covering: bool, entries: Vec<ThetaEntry>) -> Self {
        for e in &entries {
            assert_eq!(e.word.rank(), h.rank(), "entry rank differs from H");
        }
        DoubleCosetSum {
            h,
            covering,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.h.rank()
    }

    pub fn subgroup(&self) -> &SubgroupGraph {
        &self.h
    }

    pub fn covering(&self) -> bool {
        self.covering
    }

    pub fn entries(&self) -> &[ThetaEntry] {
        &self.entries
    }

    pub fn push(&mut self, sign: Sign, word: FreeWord) {
        assert_eq!(word.rank(), self.rank(), "entry rank differs from H");
        self.entries.push(ThetaEntry { sign, word });
    }

    /// Index pairs `(i, j)`, `i < j`, that a single cancellation removes.
    pub fn cancellable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.entries.len() {
            for j in (i + 1)..self.entries.len() {
                let (a, b) = (&self.entries[i], &self.entries[j]);
                if a.sign != b.sign && double_coset_equal(&self.h, &a.word, &b.word) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Indices of entries a death move may delete.
    pub fn removable_entries(&self) -> Vec<usize> {
        if self.covering {
            return Vec::new();
        }
        (0..self.entries.len())
            .filter(|&i| subgroup_contains(&self.h, &self.entries[i].word))
            .collect()
    }

    pub fn cancel(&mut self, i: usize, j: usize) {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        self.entries.remove(hi);
        self.entries.remove(lo);
    }

    pub fn remove(&mut self, i: usize) {
        self.entries.remove(i);
    }

    /// Groups the entries by double coset. Each class keeps its members'
    /// indices in input order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            match classes
                .iter_mut()
                .find(|c| double_coset_equal(&self.h, &self.entries[c[0]].word, &e.word))
            {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }
}

/// Applies both moves until neither applies. Survivors are listed by class,
/// each class represented by its shortlex-least member, classes in shortlex
/// order of representatives.
pub fn canonicalize(s: &DoubleCosetSum) -> DoubleCosetSum {
    let mut entries = Vec::new();
    let mut survivors: Vec<(FreeWord, Sign, usize)> = Vec::new();
    for class in s.classes() {
        let first = &s.entries[class[0]].word;
        if !s.covering && subgroup_contains(&s.h, first) {
            continue;
        }
        let net: i64 = class.iter().map(|&i| s.entries[i].sign.as_int()).sum();
        if net == 0 {
            continue;
        }
        let rep = class
            .iter()
            .map(|&i| &s.entries[i].word)
            .min_by(|a, b| a.shortlex_cmp(b))
            .expect("classes are nonempty")
            .clone();
        let sign = if net > 0 { Sign::Plus } else { Sign::Minus };
        survivors.push((rep, sign, net.unsigned_abs() as usize));
    }
    survivors.sort_by(|a, b| a.0.shortlex_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (word, sign, count) in survivors {
        for _ in 0..count {
            entries.push(ThetaEntry {
                sign,
                word: word.clone(),
            });
        }
    }
    DoubleCosetSum {
        h: s.h.clone(),
        covering: s.covering,
        entries,
    }
}

pub fn is_zero(s: &DoubleCosetSum) -> bool {
    canonicalize(s).entries.is_empty()
}

/// Shortlex-least element of `{h·g·h′}` over `h, h′ ∈ H` of length at most
/// `bound`.
pub fn bounded_representative(h: &SubgroupGraph, g: &FreeWord, bound: usize) -> FreeWord {
    let nearby = h.elements_up_to(bound);
    let mut best = g.clone();
    for left in &nearby {
        let lg = left.mul(g);
        for right in &nearby {
            let candidate = lg.mul(right);
            if candidate.shortlex_cmp(&best) == Ordering::Less {
                best = candidate;
            }
        }
    }
    best
}

/// Surviving double cosets with their reported representatives.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ThetaSummary {
    pub is_zero: bool,
    pub survivors: Vec<SurvivingCoset>,
    pub representative_bound: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SurvivingCoset {
    pub sign: Sign,
    pub multiplicity: usize,
    pub representative: FreeWord,
}

pub fn summarize(s: &DoubleCosetSum, bound: usize) -> ThetaSummary {
    let canonical = canonicalize(s);
    let mut survivors: Vec<SurvivingCoset> = Vec::new();
    for e in &canonical.entries {
        match survivors.last_mut() {
            Some(last) if last.sign == e.sign && double_coset_equal(&s.h, &last.representative, &e.word) => {
                last.multiplicity += 1
            }
            _ => survivors.push(SurvivingCoset {
                sign: e.sign,
                multiplicity: 1,
                representative: e.word.clone(),
            }),
        }
    }
    for sc in &mut survivors {
        sc.representative = bounded_representative(&s.h, &sc.representative, bound);
    }
    survivors.sort_by(|a, b| {
        a.representative
            .shortlex_cmp(&b.representative)
            .then(a.sign.cmp(&b.sign))
    });
    ThetaSummary {
        is_zero: survivors.is_empty(),
        survivors,
        representative_bound: bound,
    }
}

/// JSON input form: `{rank, H, covering, points: [{sign, word}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaInput {
    pub rank: usize,
    #[serde(rename = "H")]
    pub h: Vec<Vec<i32>>,
    #[serde(default)]
    pub covering: bool,
    pub points: Vec<ThetaPoint>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaPoint {
    pub sign: Sign,
    pub word: Vec<i32>,
}

impl ThetaInput {
    pub fn build(&self) -> Result<DoubleCosetSum, ThetaError> {
        let gens = self
            .h
            .iter()
            .map(|w| FreeWord::reduce(w, self.rank))
            .collect::<Result<Vec<_>, _>>()?;
        let entries = self
            .points
            .iter()
            .map(|p| {
                Ok(ThetaEntry {
                    sign: p.sign,
                    word: FreeWord::reduce(&p.word, self.rank)?,
                })
            })
            .collect::<Result<Vec<_>, ThetaError>>()?;
        Ok(DoubleCosetSum::new(
            fold(self.rank, &gens),
            self.covering,
            entries,
        ))
    }
}
