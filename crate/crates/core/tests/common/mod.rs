//! Random inputs and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use premkit::braid::{artin_action, BraidWord};
use premkit::foldmap::{
    ArrangementSpec, CircleSpec, Crossing, CrossingWord, Direction, DiskArrangement, FoldFlag,
    NestedSpec,
};
use premkit::freegroup::{double_coset_equal, fold, FreeWord, SubgroupGraph};
use premkit::theta::{DoubleCosetSum, Sign, ThetaEntry};
use premkit::towers::{kernel_degree, KernelDegree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_braid(rng: &mut impl Rng, strands: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen() {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

/// A random product of pure generators `A_ij`.
pub fn random_pure_braid(rng: &mut impl Rng, strands: usize, max_factors: usize) -> BraidWord {
    let mut b = BraidWord::identity(strands);
    for _ in 0..rng.gen_range(0..=max_factors) {
        let i = rng.gen_range(1..strands);
        let j = rng.gen_range(i + 1..=strands);
        let g = BraidWord::pure_generator(strands, i, j);
        b = b.concat(&if rng.gen() { g } else { g.inverse() });
    }
    b
}

pub fn random_letters(rng: &mut impl Rng, rank: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=rank as i32);
            if rng.gen() {
                i
            } else {
                -i
            }
        })
        .collect()
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::reduce(&random_letters(rng, rank, len), rank).unwrap()
}

/// Every reduced word of length at most `max_len`.
pub fn all_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![FreeWord::identity(rank)];
    let mut frontier: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                out.push(FreeWord::reduce(&v, rank).unwrap());
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

/// Elements of `⟨gens⟩` written as products of at most `k` generators or
/// inverses, by plain enumeration.
pub fn subgroup_products(rank: usize, gens: &[FreeWord], k: usize) -> HashSet<Vec<i32>> {
    let mut alphabet: Vec<(usize, FreeWord)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        alphabet.push((2 * i, g.clone()));
        alphabet.push((2 * i + 1, g.inverse()));
    }
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    seen.insert(Vec::new());
    let mut frontier: Vec<(Option<usize>, FreeWord)> = vec![(None, FreeWord::identity(rank))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (last, w) in &frontier {
            for (tag, g) in &alphabet {
                if let Some(l) = last {
                    if l ^ 1 == *tag {
                        continue;
                    }
                }
                let v = w.mul(g);
                seen.insert(v.letters().to_vec());
                next.push((Some(*tag), v));
            }
        }
        frontier = next;
    }
    seen
}

/// A random fold-map model: a random nesting forest of circles with random
/// flags and a random tree of source pieces glued along the fold circles.
/// Each piece covers the regions lying on the fold side of all its boundary
/// circles; draws where some piece would not be a connected domain bounded
/// by exactly its circles are rejected.
pub fn random_arrangement(rng: &mut impl Rng, max_circles: usize) -> DiskArrangement {
    loop {
        if let Some(a) = try_random_arrangement(rng, max_circles) {
            return a;
        }
    }
}

fn try_random_arrangement(rng: &mut impl Rng, max_circles: usize) -> Option<DiskArrangement> {
    let k = rng.gen_range(1..=max_circles);
    let parents: Vec<usize> = (1..=k).map(|c| rng.gen_range(0..c)).collect();
    let flags: Vec<FoldFlag> = (0..k)
        .map(|_| {
            if rng.gen() {
                FoldFlag::Inner
            } else {
                FoldFlag::Outer
            }
        })
        .collect();
    let inside = |mut r: usize, c: usize| {
        while r != 0 {
            if r == c {
                return true;
            }
            r = parents[r - 1];
        }
        false
    };
    // Piece tree: piece j+1 hangs off an earlier piece along circle order[j].
    let mut order: Vec<usize> = (1..=k).collect();
    order.shuffle(rng);
    let mut piece_circles: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    let mut colour = vec![1i64; k + 1];
    for (j, &c) in order.iter().enumerate() {
        let p = rng.gen_range(0..=j);
        piece_circles[p].push(c);
        piece_circles[j + 1].push(c);
        colour[j + 1] = -colour[p];
    }
    let regions: Vec<usize> = (0..=k).collect();
    let mut images: Vec<BTreeSet<usize>> = Vec::new();
    for circles in &piece_circles {
        let image: BTreeSet<usize> = regions
            .iter()
            .copied()
            .filter(|&r| {
                circles.iter().all(|&c| {
                    inside(r, c) == (flags[c - 1] == FoldFlag::Outer)
                })
            })
            .collect();
        if image.is_empty() {
            return None;
        }
        // Region r and the region outside circle r are adjacent.
        let boundary: BTreeSet<usize> = (1..=k)
            .filter(|&c| image.contains(&c) != image.contains(&parents[c - 1]))
            .collect();
        if boundary != circles.iter().copied().collect() {
            return None;
        }
        let start = *image.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            let mut nbrs: Vec<usize> = (1..=k).filter(|&c| parents[c - 1] == r).collect();
            if r != 0 {
                nbrs.push(parents[r - 1]);
            }
            for n in nbrs {
                if image.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        if seen != image {
            return None;
        }
        images.push(image);
    }
    let mut sheets: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    let mut fibers = BTreeMap::new();
    for &r in &regions {
        let over: Vec<String> = (0..=k)
            .filter(|&p| images[p].contains(&r))
            .map(|p| format!("p{p}"))
            .collect();
        fibers.insert(r, over.len());
        sheets.insert(r, over);
    }
    let degree: i64 = (0..=k)
        .filter(|&p| images[p].contains(&0))
        .map(|p| colour[p])
        .sum();
    let basepoint = rng.gen_range(0..=k);
    if fibers[&basepoint] == 0 {
        return None;
    }
    let spec = ArrangementSpec::Nested(NestedSpec {
        circles: (1..=k)
            .map(|c| CircleSpec {
                id: c,
                parent: (parents[c - 1] != 0).then_some(parents[c - 1]),
                rho: None,
                flag: flags[c - 1],
            })
            .collect(),
        fibers,
        sheets: Some(sheets),
        folds: BTreeMap::new(),
        basepoint,
        degree,
    });
    Some(DiskArrangement::from_spec(&spec).expect("generated model is valid"))
}

fn ancestors(arr: &DiskArrangement, mut r: usize) -> Vec<usize> {
    let mut out = vec![r];
    while r != 0 {
        r = arr.parent_region(r).unwrap();
        out.push(r);
    }
    out
}

/// Shortest crossing path between two regions.
pub fn region_path(arr: &DiskArrangement, from: usize, to: usize) -> CrossingWord {
    let up = ancestors(arr, from);
    let down = ancestors(arr, to);
    let meet = *up.iter().find(|r| down.contains(r)).unwrap();
    let mut crossings: Vec<Crossing> = up
        .iter()
        .take_while(|&&r| r != meet)
        .map(|&r| Crossing {
            circle: r,
            direction: Direction::Out,
        })
        .collect();
    let descend: Vec<usize> = down.iter().copied().take_while(|&r| r != meet).collect();
    crossings.extend(descend.iter().rev().map(|&r| Crossing {
        circle: r,
        direction: Direction::In,
    }));
    CrossingWord {
        base: from,
        crossings,
    }
}

/// A random walk of up to `steps` crossings from `from`, ending in `to`.
pub fn random_path(
    rng: &mut impl Rng,
    arr: &DiskArrangement,
    from: usize,
    to: usize,
    steps: usize,
) -> CrossingWord {
    let mut here = from;
    let mut crossings = Vec::new();
    for _ in 0..rng.gen_range(0..=steps) {
        let mut moves: Vec<Crossing> = arr
            .circle_ids()
            .filter(|&c| arr.parent_region(c) == Some(here))
            .map(|c| Crossing {
                circle: c,
                direction: Direction::In,
            })
            .collect();
        if here != 0 {
            moves.push(Crossing {
                circle: here,
                direction: Direction::Out,
            });
        }
        let Some(&m) = moves.choose(rng) else { break };
        here = arr.cross(here, m.circle, m.direction).unwrap();
        crossings.push(m);
    }
    let tail = region_path(arr, here, to);
    crossings.extend(tail.crossings);
    CrossingWord {
        base: from,
        crossings,
    }
}

pub fn random_loop(rng: &mut impl Rng, arr: &DiskArrangement, steps: usize) -> CrossingWord {
    random_path(rng, arr, arr.basepoint(), arr.basepoint(), steps)
}

/// `H ∩ B(max_len)` for `H = ⟨gens⟩`, by closing the generators and their
/// inverses under products that stay within `max_len` letters.
///
/// Complete when the generators are no longer than `max_len / 2`: Nielsen
/// reduction of such a set only forms products of length at most
/// `max_len / 2`, and products of a Nielsen-reduced basis never pass through
/// a partial product longer than the result.
pub fn subgroup_ball(rank: usize, gens: &[FreeWord], max_len: usize) -> HashSet<Vec<i32>> {
    let mut members: Vec<FreeWord> = vec![FreeWord::identity(rank)];
    let mut seen: HashSet<Vec<i32>> = HashSet::from([Vec::new()]);
    let mut queue: Vec<FreeWord> = Vec::new();
    for g in gens {
        for x in [g.clone(), g.inverse()] {
            if x.len() <= max_len && seen.insert(x.letters().to_vec()) {
                queue.push(x);
            }
        }
    }
    while let Some(x) = queue.pop() {
        members.push(x.clone());
        let snapshot = members.clone();
        for y in &snapshot {
            for p in [x.mul(y), y.mul(&x)] {
                if p.len() <= max_len && seen.insert(p.letters().to_vec()) {
                    queue.push(p);
                }
            }
        }
    }
    seen
}

/// `[a x_i^{±1} a⁻¹, b x_i^{±1} b⁻¹]`.
pub fn random_mu_zero_generator(r: &mut impl Rng, d: usize) -> FreeWord {
    let i = r.gen_range(1..=d);
    let xi = FreeWord::generator(d, i);
    let a = random_word(r, d, 6);
    let b = random_word(r, d, 6);
    let p = a.conjugate(&xi.pow(if r.gen() { 1 } else { -1 }));
    let q = b.conjugate(&xi.pow(if r.gen() { 1 } else { -1 }));
    p.commutator(&q)
}

/// Commutators of pure generators and of their commutators, trivial at level
/// `n` and nontrivial at level `n + 1`.
pub fn kernel_pool(d: usize, n: usize) -> Vec<BraidWord> {
    let pure: Vec<BraidWord> = (1..d)
        .flat_map(|i| (i + 1..=d).map(move |j| BraidWord::pure_generator(d, i, j)))
        .collect();
    let mut words = pure.clone();
    for _ in 2..n {
        words = words
            .iter()
            .flat_map(|u| pure.iter().map(move |v| u.commutator(v)))
            .collect();
    }
    words
        .into_iter()
        .filter(|w| kernel_degree(&artin_action(w), n + 2).unwrap() == KernelDegree::Exact(n + 1))
        .collect()
}

/// Entries drawn from a few double cosets, so that cancellations happen.
pub fn random_sum(r: &mut impl Rng) -> DoubleCosetSum {
    let rank = r.gen_range(1..=3);
    let gens: Vec<FreeWord> = (0..r.gen_range(1..=2))
        .map(|_| random_word(r, rank, 3))
        .collect();
    let h = fold(rank, &gens);
    let nearby = h.elements_up_to(3);
    let bases: Vec<FreeWord> = (0..r.gen_range(1..=3))
        .map(|_| random_word(r, rank, 3))
        .collect();
    let entries = (0..r.gen_range(0..=8))
        .map(|_| {
            let g = bases.choose(r).unwrap();
            let a = nearby.choose(r).unwrap();
            let b = nearby.choose(r).unwrap();
            ThetaEntry {
                sign: if r.gen() { Sign::Plus } else { Sign::Minus },
                word: a.mul(g).mul(b),
            }
        })
        .collect();
    DoubleCosetSum::new(h, r.gen_bool(0.3), entries)
}

pub fn random_moves(r: &mut impl Rng, s: &DoubleCosetSum) -> DoubleCosetSum {
    let mut s = s.clone();
    loop {
        let pairs = s.cancellable_pairs();
        let deaths = s.removable_entries();
        if pairs.is_empty() && deaths.is_empty() {
            return s;
        }
        if !deaths.is_empty() && (pairs.is_empty() || r.gen()) {
            s.remove(*deaths.choose(r).unwrap());
        } else {
            let (i, j) = *pairs.choose(r).unwrap();
            s.cancel(i, j);
        }
    }
}

/// Multiset equality of signed entries up to double coset.
pub fn same_survivors(h: &SubgroupGraph, a: &[ThetaEntry], b: &[ThetaEntry]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = b.iter().enumerate().position(|(k, y)| {
            !used[k] && x.sign == y.sign && double_coset_equal(h, &x.word, &y.word)
        });
        hit.map(|k| used[k] = true).is_some()
    })
}
