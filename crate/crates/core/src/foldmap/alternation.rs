use std::collections::BTreeMap;

use serde::Serialize;

use super::arrangement::{CrossingWord, Direction, DiskArrangement, FoldFlag};
use super::pullback::pullback;
use super::FoldMapError;

pub const ALTERNATION_REFERENCE: &str = "alternating-fold-arcs";

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlternationVerdict {
    Obstructed,
    Inconclusive,
}

/// The two stretches of the loop inside one inner disk, as (entry, exit)
/// crossing positions. An exit before its entry means the stretch runs
/// through the basepoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiskArcs {
    pub circle: usize,
    pub arcs: Vec<[usize; 2]>,
}

/// Where the folds at the two ends of a stretch sit.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ArcSplit {
    pub circle: usize,
    pub entry: usize,
    pub exit: usize,
    pub entry_on_marked: bool,
    pub exit_on_marked: bool,
}

impl ArcSplit {
    pub fn splits(&self) -> bool {
        self.entry_on_marked != self.exit_on_marked
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AlternationCertificate {
    pub verdict: AlternationVerdict,
    pub disks: Vec<DiskArcs>,
    pub interleaved_pairs: Vec<[usize; 2]>,
    pub separated_pairs: Vec<[usize; 2]>,
    pub splits: Vec<ArcSplit>,
    pub components: Option<usize>,
    pub reference: &'static str,
}

fn disk_arcs(arr: &DiskArrangement, l: &CrossingWord) -> Result<Vec<DiskArcs>, FoldMapError> {
    let mut by_circle: BTreeMap<usize, Vec<(usize, Direction)>> = BTreeMap::new();
    for (k, c) in l.crossings.iter().enumerate() {
        if arr.flag(c.circle) == Some(FoldFlag::Inner) {
            by_circle.entry(c.circle).or_default().push((k, c.direction));
        }
    }
    by_circle
        .into_iter()
        .map(|(circle, mut cs)| {
            // Crossings of one circle alternate in and out; rotate so that
            // the list starts with an entry.
            if cs[0].1 == Direction::Out {
                cs.rotate_left(1);
            }
            let arcs: Vec<[usize; 2]> = cs.chunks(2).map(|p| [p[0].0, p[1].0]).collect();
            if arcs.len() != 2 {
                return Err(FoldMapError::DiskArcCount {
                    circle,
                    arcs: arcs.len(),
                });
            }
            Ok(DiskArcs { circle, arcs })
        })
        .collect()
}

/// Do the stretches of two disks alternate around the loop?
fn interleave(a: &DiskArcs, b: &DiskArcs) -> bool {
    let mut marks: Vec<(usize, bool)> = a
        .arcs
        .iter()
        .map(|r| (r[0], true))
        .chain(b.arcs.iter().map(|r| (r[0], false)))
        .collect();
    marks.sort_unstable();
    marks.windows(2).all(|w| w[0].1 != w[1].1)
}

/// Checks whether the loop meets the inner disks it enters in alternating
/// stretches whose end folds fall on different sides of the marked
/// component. If so, no coherent homotopy can pull the loop off the disks,
/// which obstructs the loop being trivial.
///
/// Every inner disk the loop enters must be entered exactly twice. With
/// fewer than two such disks there is nothing to compare and the answer is
/// inconclusive; otherwise the pullback must have a marked component and at
/// least one other.
pub fn alternation_certificate(
    arr: &DiskArrangement,
    l: &CrossingWord,
) -> Result<AlternationCertificate, FoldMapError> {
    l.check_loop(arr)?;
    let disks = disk_arcs(arr, l)?;
    if disks.len() < 2 {
        return Ok(AlternationCertificate {
            verdict: AlternationVerdict::Inconclusive,
            disks,
            interleaved_pairs: Vec::new(),
            separated_pairs: Vec::new(),
            splits: Vec::new(),
            components: None,
            reference: ALTERNATION_REFERENCE,
        });
    }
    let pb = pullback(arr, l)?;
    let marked = pb.marked.ok_or(FoldMapError::NoMarkedComponent)?;
    if pb.component_count() < 2 {
        return Err(FoldMapError::TooFewComponents(pb.component_count()));
    }
    let mut interleaved_pairs = Vec::new();
    let mut separated_pairs = Vec::new();
    for (i, a) in disks.iter().enumerate() {
        for b in &disks[i + 1..] {
            if interleave(a, b) {
                interleaved_pairs.push([a.circle, b.circle]);
            } else {
                separated_pairs.push([a.circle, b.circle]);
            }
        }
    }
    let splits: Vec<ArcSplit> = disks
        .iter()
        .flat_map(|d| {
            d.arcs.iter().map(|&[entry, exit]| ArcSplit {
                circle: d.circle,
                entry,
                exit,
                entry_on_marked: pb.fold_component[entry] == marked,
                exit_on_marked: pb.fold_component[exit] == marked,
            })
        })
        .collect();
    let verdict = if separated_pairs.is_empty() && splits.iter().all(ArcSplit::splits) {
        AlternationVerdict::Obstructed
    } else {
        AlternationVerdict::Inconclusive
    };
    Ok(AlternationCertificate {
        verdict,
        disks,
        interleaved_pairs,
        separated_pairs,
        splits,
        components: Some(pb.component_count()),
        reference: ALTERNATION_REFERENCE,
    })
}
