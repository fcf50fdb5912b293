use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::arrangement::{CrossingWord, DiskArrangement, PieceId, RegionId};
use super::FoldMapError;
use crate::braid::Permutation;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sheets over every segment of a path, glued along the crossings.
///
/// Segment `k` is the part of the path between crossings `k-1` and `k`; a
/// node is a pair (segment, sheet). Sheets that exist on both sides of a
/// crossing continue through it; the two sheets of the fold pair meet in a
/// fold point on the side where they exist.
struct Trace {
    segments: Vec<RegionId>,
    offsets: Vec<usize>,
    sheets: Vec<Vec<PieceId>>,
    open: UnionFind,
    /// Per crossing, a node lying at its fold point.
    fold_nodes: Vec<usize>,
}

impl Trace {
    fn new(arr: &DiskArrangement, path: &CrossingWord) -> Result<Self, FoldMapError> {
        let segments = path.walk(arr)?;
        let sheets: Vec<Vec<PieceId>> = segments.iter().map(|&r| arr.fiber(r).to_vec()).collect();
        let mut offsets = Vec::with_capacity(segments.len());
        let mut total = 0;
        for s in &sheets {
            offsets.push(total);
            total += s.len();
        }
        let mut trace = Trace {
            segments,
            offsets,
            sheets,
            open: UnionFind::new(total),
            fold_nodes: Vec::with_capacity(path.crossings.len()),
        };
        for (k, c) in path.crossings.iter().enumerate() {
            let (p, q) = arr.fold_pair(c.circle);
            let larger = if trace.sheets[k].len() > trace.sheets[k + 1].len() {
                k
            } else {
                k + 1
            };
            let smaller = if larger == k { k + 1 } else { k };
            for &s in &trace.sheets[smaller].clone() {
                let a = trace.node(k, s);
                let b = trace.node(k + 1, s);
                trace.open.union(a, b);
            }
            let (a, b) = (trace.node(larger, p), trace.node(larger, q));
            trace.open.union(a, b);
            trace.fold_nodes.push(a);
        }
        Ok(trace)
    }

    fn node(&self, segment: usize, piece: PieceId) -> usize {
        let pos = self.sheets[segment]
            .iter()
            .position(|&s| s == piece)
            .expect("sheet present over segment");
        self.offsets[segment] + pos
    }

    fn last(&self) -> usize {
        self.segments.len() - 1
    }

    fn node_count(&self) -> usize {
        self.offsets.last().copied().unwrap_or(0) + self.sheets.last().map_or(0, Vec::len)
    }

    fn piece_of(&self, node: usize) -> PieceId {
        let seg = self.offsets.partition_point(|&o| o <= node) - 1;
        self.sheets[seg][node - self.offsets[seg]]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Positive,
    Negative,
    Returning,
    Circle,
}

/// A component of the pullback over the path cut open at the basepoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackArc {
    pub kind: ArcKind,
    /// Positions in the basepoint fiber where the arc starts.
    pub start: Vec<usize>,
    /// Positions in the basepoint fiber where the arc ends.
    pub end: Vec<usize>,
    pub folds: usize,
}

/// A component of the closed pullback over the whole loop.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackComponent {
    pub marked: bool,
    /// Names of the pieces the component runs through.
    pub pieces: Vec<String>,
    /// Indices of the crossings whose fold point lies on this component.
    pub fold_crossings: Vec<usize>,
}

/// The pullback of the fold map along a loop.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PullbackGraph {
    pub components: Vec<PullbackComponent>,
    pub arcs: Vec<PullbackArc>,
    /// Index of the component through the single sheet over the basepoint.
    pub marked: Option<usize>,
    /// For each crossing, the component holding its fold point.
    pub fold_component: Vec<usize>,
}

impl PullbackGraph {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn count(&self, kind: ArcKind) -> usize {
        self.arcs.iter().filter(|a| a.kind == kind).count()
    }
}

pub fn pullback(arr: &DiskArrangement, l: &CrossingWord) -> Result<PullbackGraph, FoldMapError> {
    l.check_loop(arr)?;
    let mut trace = Trace::new(arr, l)?;
    let last = trace.last();
    let base_fiber = arr.fiber(arr.basepoint()).to_vec();
    let n = trace.node_count();

    // Cut open at the basepoint.
    let mut arcs_by_root: BTreeMap<usize, PullbackArc> = BTreeMap::new();
    for node in 0..n {
        let root = trace.open.find(node);
        arcs_by_root.entry(root).or_insert(PullbackArc {
            kind: ArcKind::Circle,
            start: Vec::new(),
            end: Vec::new(),
            folds: 0,
        });
    }
    for (i, &s) in base_fiber.iter().enumerate() {
        let a = trace.node(0, s);
        let root = trace.open.find(a);
        arcs_by_root.get_mut(&root).expect("root").start.push(i);
        let b = trace.node(last, s);
        let root = trace.open.find(b);
        arcs_by_root.get_mut(&root).expect("root").end.push(i);
    }
    for &f in &trace.fold_nodes.clone() {
        let root = trace.open.find(f);
        arcs_by_root.get_mut(&root).expect("root").folds += 1;
    }
    let mut arcs: Vec<PullbackArc> = arcs_by_root.into_values().collect();
    for arc in &mut arcs {
        arc.kind = match (arc.start.len(), arc.end.len()) {
            (0, 0) => ArcKind::Circle,
            (1, 1) => {
                if arr.piece_sign(base_fiber[arc.start[0]]) > 0 {
                    ArcKind::Positive
                } else {
                    ArcKind::Negative
                }
            }
            _ => ArcKind::Returning,
        };
    }
    arcs.sort_by(|a, b| (&a.start, &a.end).cmp(&(&b.start, &b.end)));

    // Close up.
    let mut closed = UnionFind {
        parent: trace.open.parent.clone(),
    };
    for &s in &base_fiber {
        closed.union(trace.node(0, s), trace.node(last, s));
    }
    let mut index_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut components: Vec<PullbackComponent> = Vec::new();
    let mut pieces: Vec<BTreeSet<PieceId>> = Vec::new();
    for node in 0..n {
        let root = closed.find(node);
        let idx = *index_of_root.entry(root).or_insert_with(|| {
            components.push(PullbackComponent {
                marked: false,
                pieces: Vec::new(),
                fold_crossings: Vec::new(),
            });
            pieces.push(BTreeSet::new());
            components.len() - 1
        });
        pieces[idx].insert(trace.piece_of(node));
    }
    let mut fold_component = Vec::with_capacity(trace.fold_nodes.len());
    for (k, &f) in trace.fold_nodes.iter().enumerate() {
        let idx = index_of_root[&closed.find(f)];
        components[idx].fold_crossings.push(k);
        fold_component.push(idx);
    }
    for (c, p) in components.iter_mut().zip(&pieces) {
        c.pieces = p.iter().map(|&x| arr.piece_name(x).to_string()).collect();
        c.pieces.sort();
    }
    let marked = match base_fiber.as_slice() {
        [s] => {
            let idx = index_of_root[&closed.find(trace.node(0, *s))];
            components[idx].marked = true;
            Some(idx)
        }
        _ => None,
    };
    Ok(PullbackGraph {
        components,
        arcs,
        marked,
        fold_component,
    })
}

/// A numbering `[d] → fiber` of the sheets over a region.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasepointFrame {
    region: RegionId,
    order: Vec<PieceId>,
}

impl BasepointFrame {
    /// The frame listing the sheets in the arrangement's own order. Needs
    /// exactly `|deg|` sheets over the region.
    pub fn canonical(arr: &DiskArrangement, region: RegionId) -> Result<Self, FoldMapError> {
        if !arr.is_region(region) {
            return Err(FoldMapError::UnknownRegion(region));
        }
        let fiber = arr.fiber(region);
        if fiber.len() as u64 != arr.degree().unsigned_abs() {
            return Err(FoldMapError::FrameSize {
                region,
                fiber: fiber.len(),
                degree: arr.degree(),
            });
        }
        Ok(BasepointFrame {
            region,
            order: fiber.to_vec(),
        })
    }

    /// The frame `i ↦ self(τ(i))`.
    pub fn relabel(&self, tau: &Permutation) -> Result<Self, FoldMapError> {
        if tau.degree() != self.order.len() {
            return Err(FoldMapError::FrameRelabel {
                expected: self.order.len(),
                found: tau.degree(),
            });
        }
        Ok(BasepointFrame {
            region: self.region,
            order: (0..self.order.len())
                .map(|i| self.order[tau.apply(i)])
                .collect(),
        })
    }

    pub fn region(&self) -> RegionId {
        self.region
    }

    pub fn order(&self) -> &[PieceId] {
        &self.order
    }
}

/// Follows the arcs over `path` from the sheets of `start` to those of
/// `end`. Every sheet of a full fiber lies on an arc crossing the path.
fn arc_matching(
    arr: &DiskArrangement,
    path: &CrossingWord,
    start: &BasepointFrame,
    end: &BasepointFrame,
) -> Result<Permutation, FoldMapError> {
    let regions = path.walk(arr)?;
    if start.region != path.base {
        return Err(FoldMapError::WrongBase {
            expected: start.region,
            found: path.base,
        });
    }
    let end_region = *regions.last().expect("nonempty");
    if end.region != end_region {
        return Err(FoldMapError::WrongBase {
            expected: end.region,
            found: end_region,
        });
    }
    let mut trace = Trace::new(arr, path)?;
    let last = trace.last();
    let mut end_by_root: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, &p) in end.order.iter().enumerate() {
        let root = trace.open.find(trace.node(last, p));
        end_by_root.insert(root, j);
    }
    let images = start
        .order
        .iter()
        .map(|&p| {
            let root = trace.open.find(trace.node(0, p));
            end_by_root.get(&root).copied()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or(FoldMapError::NotFull)?;
    Permutation::from_images(images).map_err(|_| FoldMapError::NotFull)
}

/// The permutation of `[d]` read off the arcs over a loop: `i` goes to the
/// far end of the arc that starts at sheet `D(i)`.
pub fn monodromy(
    arr: &DiskArrangement,
    l: &CrossingWord,
    frame: &BasepointFrame,
) -> Result<Permutation, FoldMapError> {
    l.check_loop(arr)?;
    arc_matching(arr, l, frame, frame)
}

/// `h_p` for a path `p` from `b′` to `b`: position `i` of the frame `D′` at
/// `b′` goes to the position in `D` at `b` of the far end of its arc.
/// Conjugating by it carries monodromy at `b` to monodromy at `b′` of
/// `p · l · p̄`.
pub fn basepoint_transport(
    arr: &DiskArrangement,
    p: &CrossingWord,
    start: &BasepointFrame,
    end: &BasepointFrame,
) -> Result<Permutation, FoldMapError> {
    arc_matching(arr, p, start, end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldmap::arrangement::standard_path;

    #[test]
    fn constant_loop_on_standard_two() {
        let arr = DiskArrangement::standard(2).unwrap();
        let l = CrossingWord::constant(arr.basepoint());
        let pb = pullback(&arr, &l).unwrap();
        assert_eq!(pb.count(ArcKind::Positive), 2);
        assert_eq!(pb.fold_component.len(), 0);
        let frame = BasepointFrame::canonical(&arr, arr.basepoint()).unwrap();
        assert!(monodromy(&arr, &l, &frame).unwrap().is_identity());
    }

    #[test]
    fn diameter_loop_swaps_the_sheets() {
        let arr = DiskArrangement::standard(2).unwrap();
        let l = standard_path(2, &[0, 2], 2);
        let frame = BasepointFrame::canonical(&arr, 2).unwrap();
        let m = monodromy(&arr, &l, &frame).unwrap();
        assert_eq!(m.one_based(), vec![2, 1]);
        let pb = pullback(&arr, &l).unwrap();
        assert_eq!(pb.count(ArcKind::Positive), 2);
        assert_eq!(pb.count(ArcKind::Negative), 0);
    }

    #[test]
    fn backtrack_through_one_disk_is_trivial() {
        let arr = DiskArrangement::standard(2).unwrap();
        let frame = BasepointFrame::canonical(&arr, 2).unwrap();
        let l = standard_path(2, &[0], 2);
        assert!(monodromy(&arr, &l, &frame).unwrap().is_identity());
    }

    #[test]
    fn transport_between_disks() {
        let arr = DiskArrangement::standard(2).unwrap();
        let start = BasepointFrame::canonical(&arr, 1).unwrap();
        let end = BasepointFrame::canonical(&arr, 2).unwrap();
        let p = standard_path(1, &[], 2);
        let h = basepoint_transport(&arr, &p, &start, &end).unwrap();
        assert_eq!(h.one_based(), vec![2, 1]);
    }

    #[test]
    fn relabelled_frame() {
        let arr = DiskArrangement::standard(3).unwrap();
        let d = BasepointFrame::canonical(&arr, 2).unwrap();
        let tau = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let d2 = d.relabel(&tau).unwrap();
        let h = basepoint_transport(&arr, &CrossingWord::constant(2), &d2, &d).unwrap();
        assert_eq!(h, tau);
    }

    #[test]
    fn frame_needs_full_fiber() {
        let arr = DiskArrangement::standard(2).unwrap();
        assert!(matches!(
            BasepointFrame::canonical(&arr, 0),
            Err(FoldMapError::FrameSize { .. })
        ));
    }
}
