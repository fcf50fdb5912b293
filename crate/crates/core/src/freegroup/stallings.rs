//! Stallings foldings: finitely generated subgroups of `F_d` as folded
//! labelled graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::FreeWord;

/// A directed graph with edges labelled by generator indices `1..=rank`.
/// Edges are read backwards with the inverse label.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LabeledGraph {
    rank: usize,
    vertex_count: usize,
    edges: BTreeSet<(usize, usize, usize)>,
}

impl LabeledGraph {
    fn new(rank: usize) -> Self {
        LabeledGraph {
            rank,
            vertex_count: 1,
            edges: BTreeSet::new(),
        }
    }

    fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    fn add_signed_edge(&mut self, from: usize, letter: i32, to: usize) {
        let label = letter.unsigned_abs() as usize;
        if letter > 0 {
            self.edges.insert((from, label, to));
        } else {
            self.edges.insert((to, label, from));
        }
    }

    /// Adds a path reading the nonempty `word` from `from` to `to`.
    fn add_path(&mut self, from: usize, word: &[i32], to: usize) {
        debug_assert!(!word.is_empty());
        let mut current = from;
        for (k, &l) in word.iter().enumerate() {
            let next = if k + 1 == word.len() {
                to
            } else {
                self.add_vertex()
            };
            self.add_signed_edge(current, l, next);
            current = next;
        }
    }

    /// Folds until deterministic; returns the old-vertex → new-vertex map.
    fn fold(&mut self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        loop {
            let mut seen: BTreeMap<(usize, i64), usize> = BTreeMap::new();
            let mut conflict = None;
            for &(s, l, t) in &self.edges {
                for (v, key, w) in [(s, l as i64, t), (t, -(l as i64), s)] {
                    match seen.get(&(v, key)) {
                        Some(&other) if other != w => {
                            conflict = Some((other.min(w), other.max(w)));
                            break;
                        }
                        _ => {
                            seen.insert((v, key), w);
                        }
                    }
                }
                if conflict.is_some() {
                    break;
                }
            }
            let Some((keep, gone)) = conflict else { break };
            self.edges = self
                .edges
                .iter()
                .map(|&(s, l, t)| {
                    let r = |v: usize| if v == gone { keep } else { v };
                    (r(s), l, r(t))
                })
                .collect();
            for p in parent.iter_mut() {
                if *p == gone {
                    *p = keep;
                }
            }
        }
        parent
    }

    /// Repeatedly removes hanging vertices outside `keep`, then renumbers
    /// so surviving vertices are contiguous, preserving relative order.
    fn prune_and_compact(&mut self, keep: &BTreeSet<usize>, map: &mut [usize]) {
        loop {
            let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
            for &(s, _, t) in &self.edges {
                *degree.entry(s).or_default() += 1;
                *degree.entry(t).or_default() += 1;
            }
            let leaf = degree
                .iter()
                .find(|(v, d)| **d == 1 && !keep.contains(v))
                .map(|(v, _)| *v);
            match leaf {
                Some(v) => self.edges.retain(|&(s, _, t)| s != v && t != v),
                None => break,
            }
        }
        let mut alive: BTreeSet<usize> = keep.clone();
        for &(s, _, t) in &self.edges {
            alive.insert(s);
            alive.insert(t);
        }
        let renumber: BTreeMap<usize, usize> =
            alive.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        self.edges = self
            .edges
            .iter()
            .map(|&(s, l, t)| (renumber[&s], l, renumber[&t]))
            .collect();
        self.vertex_count = alive.len();
        for m in map.iter_mut() {
            *m = renumber.get(m).copied().unwrap_or(usize::MAX);
        }
    }

    fn transitions(&self) -> Vec<BTreeMap<i32, usize>> {
        let mut out = vec![BTreeMap::new(); self.vertex_count];
        for &(s, l, t) in &self.edges {
            out[s].insert(l as i32, t);
            out[t].insert(-(l as i32), s);
        }
        out
    }
}

/// Folded core graph of a subgroup `H ≤ F_d`, based at vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupGraph {
    rank: usize,
    generators: Vec<FreeWord>,
    vertex_count: usize,
    edges: Vec<(usize, usize, usize)>,
    transitions: Vec<BTreeMap<i32, usize>>,
}

impl SubgroupGraph {
    pub const BASE: usize = 0;

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The generating words this graph was folded from.
    pub fn generators(&self) -> &[FreeWord] {
        &self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges `(source, label, target)`.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn is_folded(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &(s, l, t) in &self.edges {
            if !seen.insert((s, l as i64)) || !seen.insert((t, -(l as i64))) {
                return false;
            }
        }
        true
    }

    /// Follows `letters` from `start`; `None` when the path leaves the graph.
    pub fn trace_from(&self, start: usize, letters: &[i32]) -> Option<usize> {
        letters
            .iter()
            .try_fold(start, |v, l| self.transitions[v].get(l).copied())
    }

    /// All elements of `H` of reduced length at most `max_len`, as reduced
    /// closed paths at the base.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<FreeWord> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<i32>)> = vec![(Self::BASE, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            if v == Self::BASE {
                out.push(FreeWord::reduce(&path, self.rank).expect("labels in range"));
            }
            if path.len() == max_len {
                continue;
            }
            for (&l, &t) in &self.transitions[v] {
                if path.last() == Some(&-l) {
                    continue;
                }
                let mut next = path.clone();
                next.push(l);
                stack.push((t, next));
            }
        }
        out.sort_by(|a, b| a.shortlex_cmp(b));
        out.dedup();
        out
    }
}

/// Stallings folding of `⟨generators⟩`.
pub fn fold(rank: usize, generators: &[FreeWord]) -> SubgroupGraph {
    let mut g = LabeledGraph::new(rank);
    for w in generators {
        assert_eq!(w.rank(), rank, "generator rank mismatch");
        if !w.is_identity() {
            g.add_path(SubgroupGraph::BASE, w.letters(), SubgroupGraph::BASE);
        }
    }
    let mut map = g.fold();
    let keep = BTreeSet::from([map[SubgroupGraph::BASE]]);
    g.prune_and_compact(&keep, &mut map);
    debug_assert_eq!(map[SubgroupGraph::BASE], SubgroupGraph::BASE);
    let transitions = g.transitions();
    SubgroupGraph {
        rank,
        generators: generators.to_vec(),
        vertex_count: g.vertex_count,
        edges: g.edges.into_iter().collect(),
        transitions,
    }
}

pub fn subgroup_contains(h: &SubgroupGraph, w: &FreeWord) -> bool {
    assert_eq!(h.rank(), w.rank(), "rank mismatch");
    h.trace_from(SubgroupGraph::BASE, w.letters()) == Some(SubgroupGraph::BASE)
}

/// Decides `g′ ∈ HgH`.
///
/// `g′ = h₁gh₂` for some `h₁,h₂ ∈ H` exactly when `H` meets the set
/// `g′Hg⁻¹`. That set is the language between two marked vertices of the
/// folded graph obtained from a copy of `H`'s graph with a hair reading `g′`
/// into its base and a hair reading `g⁻¹` out of it; the intersection with
/// `H` is tested by reachability in the product with `H`'s own graph.
pub fn double_coset_equal(h: &SubgroupGraph, g: &FreeWord, g_prime: &FreeWord) -> bool {
    assert_eq!(h.rank(), g.rank(), "rank mismatch");
    assert_eq!(h.rank(), g_prime.rank(), "rank mismatch");
    let coset = CosetAutomaton::new(h, g_prime, &g.inverse());
    intersects(h, &coset)
}

/// Folded automaton recognising `prefix · H · suffix` from `start` to
/// `accept`.
struct CosetAutomaton {
    start: usize,
    accept: usize,
    transitions: Vec<BTreeMap<i32, usize>>,
}

impl CosetAutomaton {
    fn new(h: &SubgroupGraph, prefix: &FreeWord, suffix: &FreeWord) -> Self {
        let mut g = LabeledGraph::new(h.rank());
        g.vertex_count = h.vertex_count();
        g.edges.extend(h.edges().iter().copied());
        let start = if prefix.is_identity() {
            SubgroupGraph::BASE
        } else {
            let v = g.add_vertex();
            g.add_path(v, prefix.letters(), SubgroupGraph::BASE);
            v
        };
        let accept = if suffix.is_identity() {
            SubgroupGraph::BASE
        } else {
            let v = g.add_vertex();
            g.add_path(SubgroupGraph::BASE, suffix.letters(), v);
            v
        };
        let map = g.fold();
        CosetAutomaton {
            start: map[start],
            accept: map[accept],
            transitions: g.transitions_padded(),
        }
    }
}

impl LabeledGraph {
    fn transitions_padded(&self) -> Vec<BTreeMap<i32, usize>> {
        let n = self
            .edges
            .iter()
            .map(|&(s, _, t)| s.max(t) + 1)
            .max()
            .unwrap_or(0)
            .max(self.vertex_count);
        let mut out = vec![BTreeMap::new(); n];
        for &(s, l, t) in &self.edges {
            out[s].insert(l as i32, t);
            out[t].insert(-(l as i32), s);
        }
        out
    }
}

fn intersects(h: &SubgroupGraph, a: &CosetAutomaton) -> bool {
    let start = (SubgroupGraph::BASE, a.start);
    let goal = (SubgroupGraph::BASE, a.accept);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((u, v)) = queue.pop_front() {
        if (u, v) == goal {
            return true;
        }
        for (l, &u2) in &h.transitions[u] {
            if let Some(&v2) = a.transitions.get(v).and_then(|t| t.get(l)) {
                if seen.insert((u2, v2)) {
                    queue.push_back((u2, v2));
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32], rank: usize) -> FreeWord {
        FreeWord::reduce(letters, rank).unwrap()
    }

    #[test]
    fn cyclic_subgroup_is_a_single_loop() {
        let h = fold(2, &[w(&[1], 2)]);
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edges(), &[(0, 1, 0)]);
        assert!(h.is_folded());
    }

    #[test]
    fn trivial_subgroup_is_a_point() {
        let h = fold(2, &[]);
        assert_eq!(h.vertex_count(), 1);
        assert!(h.edges().is_empty());
        assert!(subgroup_contains(&h, &FreeWord::identity(2)));
        assert!(!subgroup_contains(&h, &w(&[1], 2)));
        let h = fold(2, &[FreeWord::identity(2)]);
        assert_eq!(h.vertex_count(), 1);
    }

    #[test]
    fn membership_examples() {
        let h1 = fold(2, &[w(&[1], 2)]);
        assert!(subgroup_contains(&h1, &w(&[1, 1, 1], 2)));
        assert!(!subgroup_contains(&h1, &w(&[2], 2)));
        let h = fold(2, &[w(&[1, 1], 2), w(&[1, 2], 2)]);
        // (x₁x₂)⁻¹·x₁² reduces to x₂⁻¹x₁, so that word is in H.
        let a = w(&[1, 2], 2);
        let b = w(&[1, 1], 2);
        assert_eq!(a.inverse().mul(&b), w(&[-2, 1], 2));
        assert!(subgroup_contains(&h, &w(&[-2, 1], 2)));
        // x₂x₁ is not: no edge labelled x₂ leaves the base.
        assert!(!subgroup_contains(&h, &w(&[2, 1], 2)));
        assert!(h.is_folded());
    }

    #[test]
    fn folding_collapses_shared_prefixes() {
        let h = fold(2, &[w(&[1, 2], 2), w(&[1, -2], 2)]);
        assert!(h.is_folded());
        assert!(subgroup_contains(&h, &w(&[1, 2, 2, -1], 2)));
        assert!(!subgroup_contains(&h, &w(&[2], 2)));
    }

    #[test]
    fn double_coset_examples() {
        let h = fold(2, &[w(&[1], 2)]);
        let g = w(&[2], 2);
        assert!(double_coset_equal(&h, &g, &w(&[1, 2, 1], 2)));
        assert!(!double_coset_equal(&h, &g, &w(&[-2], 2)));
        assert!(double_coset_equal(&h, &g, &g));
        // Words crossing the bridge three times are not in HgH.
        assert!(!double_coset_equal(&h, &g, &w(&[2, 1, -2, 1, 2], 2)));
    }

    #[test]
    fn elements_enumeration_of_cyclic_group() {
        let h = fold(2, &[w(&[1, 2], 2)]);
        let els = h.elements_up_to(4);
        let expect = vec![
            FreeWord::identity(2),
            w(&[1, 2], 2),
            w(&[-2, -1], 2),
            w(&[1, 2, 1, 2], 2),
            w(&[-2, -1, -2, -1], 2),
        ];
        let mut sorted = expect.clone();
        sorted.sort_by(|a, b| a.shortlex_cmp(b));
        assert_eq!(els, sorted);
    }
}
