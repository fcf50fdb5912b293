use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidError;

/// A bijection of `{1,…,d}`, stored 0-based.
///
/// Products are read left to right: `p.then(&q)` applies `p` first. This is
/// the order in which loops and braid words are concatenated.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, BraidError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(BraidError::NotAPermutation(
                    images.iter().map(|i| i + 1).collect(),
                ));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, the wire form.
    pub fn from_one_based(images: &[usize]) -> Result<Self, BraidError> {
        if images.contains(&0) {
            return Err(BraidError::NotAPermutation(images.to_vec()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
            .map_err(|_| BraidError::NotAPermutation(images.to_vec()))
    }

    /// The transposition of the 0-based points `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(degree);
        p.images.swap(a, b);
        p
    }

    /// A single cycle through the 0-based points, in order.
    pub fn cycle(degree: usize, points: &[usize]) -> Self {
        let mut p = Self::identity(degree);
        for (k, &a) in points.iter().enumerate() {
            p.images[a] = points[(k + 1) % points.len()];
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order in the symmetric group: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Whether the orbit of every point is the whole set, for the group
    /// generated by `perms`.
    pub fn generate_transitive(perms: &[Permutation], degree: usize) -> bool {
        if degree == 0 {
            return true;
        }
        let mut reached = vec![false; degree];
        reached[0] = true;
        let mut frontier = vec![0];
        while let Some(p) = frontier.pop() {
            for g in perms {
                for q in [g.apply(p), g.inverse().apply(p)] {
                    if !reached[q] {
                        reached[q] = true;
                        frontier.push(q);
                    }
                }
            }
        }
        reached.into_iter().all(|r| r)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_to_right_product() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::transposition(3, 1, 2);
        // 0 →a 1 →b 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).order(), 3);
        assert!(a.then(&a).is_identity());
    }

    #[test]
    fn cycle_notation_and_order() {
        let p = Permutation::cycle(7, &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(p.order(), 7);
        assert_eq!(p.to_string(), "(1 2 3 4 5 6 7)");
        let q = Permutation::from_one_based(&[2, 1, 4, 5, 3]).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.to_string(), "(1 2)(3 4 5)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[3, 1]).is_err());
    }

    #[test]
    fn inverse_undoes() {
        let p = Permutation::from_one_based(&[3, 1, 4, 2]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
    }

    #[test]
    fn transitivity() {
        let a = Permutation::transposition(3, 0, 1);
        assert!(!Permutation::generate_transitive(std::slice::from_ref(&a), 3));
        let b = Permutation::transposition(3, 1, 2);
        assert!(Permutation::generate_transitive(&[a, b], 3));
    }
}
