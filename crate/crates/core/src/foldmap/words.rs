//! Words over the disks of the standard model.
//!
//! In the degree-`d` standard model the disks are lettered `A, B, C, …` and a
//! loop is recorded by the disks it visits. Between disks the loop runs in
//! the outer region, so its class is carried by the sequence of letters:
//! repeating a letter does nothing, and so does a detour `XYX`.

use super::arrangement::{CrossingWord, DiskArrangement, ModelKind};
use super::FoldMapError;
use crate::freegroup::FreeWord;

/// Letter of the disk holding the basepoint.
pub const BASE_LETTER: char = 'B';

fn letter_index(position: usize, letter: char, vertices: usize) -> Result<usize, FoldMapError> {
    let k = (letter as u32).wrapping_sub('A' as u32) as usize;
    if k < vertices {
        Ok(k)
    } else {
        Err(FoldMapError::BadLetter { position, letter })
    }
}

fn based_indices(word: &str, vertices: usize) -> Result<Vec<usize>, FoldMapError> {
    let idx = word
        .chars()
        .enumerate()
        .map(|(p, c)| letter_index(p, c, vertices))
        .collect::<Result<Vec<_>, _>>()?;
    let base = BASE_LETTER as usize - 'A' as usize;
    match (idx.first(), idx.last()) {
        (Some(&a), Some(&b)) if a == base && b == base => Ok(idx),
        _ => Err(FoldMapError::NotBased),
    }
}

/// Degree of the loop `word` on the triangle `ABC`: steps `A→B`, `B→C`,
/// `C→A` count `+1`, their reverses `-1`, and the total is divided by 3.
pub fn winding_invariant(word: &str) -> Result<i64, FoldMapError> {
    let idx = based_indices(word, 3)?;
    let total: i64 = idx
        .windows(2)
        .map(|w| match (w[1] + 3 - w[0]) % 3 {
            0 => 0,
            1 => 1,
            _ => -1,
        })
        .sum();
    Ok(total / 3)
}

/// Class of a closed word over `d + 1` vertex letters in the fundamental
/// group of the complete graph, free on the `d(d-1)/2` edges that avoid the
/// base vertex.
///
/// Generator `k` (1-based) is the `k`-th pair `u < v` of non-base letters in
/// lexicographic order; running the edge from `v` to `u` contributes `x_k`,
/// so that for `d = 2` the class is `x₁` raised to the winding number.
pub fn simplicial_class(word: &str, d: usize) -> Result<FreeWord, FoldMapError> {
    if d < 2 {
        return Err(FoldMapError::AlphabetTooSmall(d));
    }
    let idx = based_indices(word, d + 1)?;
    let base = BASE_LETTER as usize - 'A' as usize;
    let others: Vec<usize> = (0..=d).filter(|&v| v != base).collect();
    let generator = |u: usize, v: usize| -> i32 {
        let (a, b) = (u.min(v), u.max(v));
        let ia = others.iter().position(|&x| x == a).expect("non-base");
        let ib = others.iter().position(|&x| x == b).expect("non-base");
        // Pairs before (ia, ib): all pairs with a smaller first entry, then
        // the ones sharing it.
        let n = others.len();
        let before = ia * (2 * n - ia - 1) / 2 + (ib - ia - 1);
        before as i32 + 1
    };
    let letters: Vec<i32> = idx
        .windows(2)
        .filter(|w| w[0] != w[1] && w[0] != base && w[1] != base)
        .map(|w| {
            let g = generator(w[0], w[1]);
            if w[0] > w[1] {
                g
            } else {
                -g
            }
        })
        .collect();
    Ok(FreeWord::reduce(&letters, d * (d - 1) / 2).expect("letters within rank"))
}

/// Letters of the disks a loop in a standard model visits, starting with the
/// disk of its base region.
pub fn disk_word(arr: &DiskArrangement, l: &CrossingWord) -> Result<String, FoldMapError> {
    if !matches!(arr.kind(), ModelKind::Standard { .. }) {
        return Err(FoldMapError::NotStandard);
    }
    let regions = l.walk(arr)?;
    let letter = |r: usize| char::from(b'A' + (r - 1) as u8);
    if regions[0] == 0 {
        return Err(FoldMapError::NotBased);
    }
    Ok(regions
        .windows(2)
        .filter(|w| w[1] != 0 && w[1] != w[0])
        .map(|w| letter(w[1]))
        .fold(letter(regions[0]).to_string(), |mut s, c| {
            s.push(c);
            s
        }))
}
