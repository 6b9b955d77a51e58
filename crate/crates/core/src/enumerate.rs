//! Exhaustive canonical enumeration of tree-like polyforms, brute-force
//! leaf maxima with witnesses, and the constructive fully leafed families.
//!
//! Enumeration grows level sets: every canonical tree of size k is extended
//! by each frontier cell adjacent to exactly one of its cells (any cell
//! touching two or more would close a cycle in the induced graph), the
//! result is canonicalized and deduplicated. Levels are processed in
//! parallel; the merged set is sorted, so output is deterministic regardless
//! of worker count.

use rayon::prelude::*;
use std::collections::HashSet;

use crate::error::EnumerateError;
use crate::lattice::{self, Cell, LatticeKind};
use crate::leaffn;
use crate::polyform::{Polyform, Symmetry};

/// Resource limits for an enumeration run.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Cap on the number of stored canonical forms per level.
    pub max_level_size: usize,
    /// Approximate memory cap in MiB for the dedup sets, if set.
    pub max_mem_mib: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        // LEAFY_MAX_MEM_MB caps dedup-set memory when present.
        let max_mem_mib = std::env::var("LEAFY_MAX_MEM_MB").ok().and_then(|v| v.parse().ok());
        Limits { max_level_size: 200_000_000, max_mem_mib }
    }
}

impl Limits {
    fn check(&self, level: usize, n_cells: usize, count: usize) -> Result<(), EnumerateError> {
        if count > self.max_level_size {
            return Err(EnumerateError::LimitExceeded(format!(
                "level {level} holds {count} polyforms (cap {})",
                self.max_level_size
            )));
        }
        if let Some(mib) = self.max_mem_mib {
            let bytes = count * (n_cells * std::mem::size_of::<Cell>() + 48);
            if bytes > mib * 1024 * 1024 {
                return Err(EnumerateError::LimitExceeded(format!(
                    "level {level} needs ~{} MiB (cap {mib} MiB from LEAFY_MAX_MEM_MB)",
                    bytes / (1024 * 1024)
                )));
            }
        }
        Ok(())
    }
}

fn seed(kind: LatticeKind) -> Vec<Polyform> {
    match kind {
        // Up and down triangles are distinct fixed polyiamonds.
        LatticeKind::Tri => vec![
            Polyform::new(kind, vec![Cell(0, 0, 0)]).unwrap(),
            Polyform::new(kind, vec![Cell(0, 0, 1)]).unwrap(),
        ],
        _ => vec![Polyform::new(kind, vec![Cell(0, 0, 0)]).unwrap()],
    }
}

fn extend_level(kind: LatticeKind, sym: Symmetry, level: &[Polyform]) -> Vec<Polyform> {
    let next: HashSet<Polyform> = level
        .par_iter()
        .fold(HashSet::new, |mut acc, p| {
            let cells = p.cells();
            let mut candidates: HashSet<Cell> = HashSet::new();
            for &c in cells {
                for n in lattice::neighbors_unchecked(kind, c) {
                    if !p.contains(n) {
                        candidates.insert(n);
                    }
                }
            }
            for cand in candidates {
                // Exactly one internal neighbor keeps the induced graph a tree.
                let deg = lattice::neighbors_unchecked(kind, cand)
                    .iter()
                    .filter(|n| p.contains(**n))
                    .count();
                if deg != 1 {
                    continue;
                }
                let mut cs = cells.to_vec();
                cs.push(cand);
                cs.sort_unstable();
                acc.insert(Polyform::from_sorted_unchecked(kind, cs).canonical(sym));
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return reduce_into(b, a);
            }
            reduce_into(a, b)
        });
    let mut v: Vec<Polyform> = next.into_iter().collect();
    v.par_sort_unstable();
    v
}

fn reduce_into(mut big: HashSet<Polyform>, small: HashSet<Polyform>) -> HashSet<Polyform> {
    big.extend(small);
    big
}

/// All tree-like polyforms of size `n` on `kind`, one canonical
/// representative per `sym`-equivalence class, sorted.
pub fn enumerate_trees(
    kind: LatticeKind,
    n: usize,
    sym: Symmetry,
) -> Result<Vec<Polyform>, EnumerateError> {
    enumerate_trees_limited(kind, n, sym, &Limits::default())
}

pub fn enumerate_trees_limited(
    kind: LatticeKind,
    n: usize,
    sym: Symmetry,
    limits: &Limits,
) -> Result<Vec<Polyform>, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::SizeZero);
    }
    let mut level: Vec<Polyform> = seed(kind).into_iter().map(|p| p.canonical(sym)).collect();
    level.sort_unstable();
    level.dedup();
    for size in 2..=n {
        level = extend_level(kind, sym, &level);
        limits.check(size, size, level.len())?;
    }
    Ok(level)
}

/// Result of a brute-force leaf-maximization run.
#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub lattice: LatticeKind,
    pub n: usize,
    pub symmetry: Symmetry,
    /// Total number of tree-like polyforms of size n.
    pub total: usize,
    /// Maximum leaf count L(n) over all of them.
    pub max_leaves: usize,
    /// How many attain the maximum.
    pub witness_count: usize,
    /// Attaining polyforms (possibly truncated to the retention cap).
    pub witnesses: Vec<Polyform>,
}

pub const DEFAULT_WITNESS_CAP: usize = 64;

/// Brute-force L(n) with witnesses. `witness_cap = None` keeps every witness.
pub fn max_leaves(
    kind: LatticeKind,
    n: usize,
    sym: Symmetry,
    witness_cap: Option<usize>,
) -> Result<EnumerationReport, EnumerateError> {
    max_leaves_limited(kind, n, sym, witness_cap, &Limits::default())
}

pub fn max_leaves_limited(
    kind: LatticeKind,
    n: usize,
    sym: Symmetry,
    witness_cap: Option<usize>,
    limits: &Limits,
) -> Result<EnumerationReport, EnumerateError> {
    let all = enumerate_trees_limited(kind, n, sym, limits)?;
    let total = all.len();
    let leaf_counts: Vec<usize> = all.par_iter().map(|p| p.leaf_count()).collect();
    let max_leaves = leaf_counts.iter().copied().max().unwrap_or(0);
    let mut witnesses: Vec<Polyform> = Vec::new();
    let mut witness_count = 0usize;
    for (p, &lc) in all.iter().zip(&leaf_counts) {
        if lc == max_leaves {
            witness_count += 1;
            if witness_cap.map_or(true, |cap| witnesses.len() < cap) {
                witnesses.push(p.clone());
            }
        }
    }
    Ok(EnumerationReport { lattice: kind, n, symmetry: sym, total, max_leaves, witness_count, witnesses })
}

/// The fully leafed polyomino family T_n.
///
/// Base shapes for n = 2..5 (domino, tromino, T, cross); for larger n a
/// 4-cell T-unit is appended at the rightmost spine leaf, adding four cells
/// and two net leaves per unit.
pub fn family_polyomino(n: i64) -> Result<Polyform, EnumerateError> {
    if n < 2 {
        return Err(EnumerateError::SizeZero);
    }
    let q = (n - 2) / 4;
    let s = n - 4 * q;
    let mut cells: Vec<Cell> = Vec::with_capacity(n as usize);
    // Base B_s with its rightmost spine leaf at (w, 0).
    let w: i64 = match s {
        2 => {
            cells.extend([Cell(0, 0, 0), Cell(1, 0, 0)]);
            1
        }
        3 => {
            cells.extend([Cell(0, 0, 0), Cell(1, 0, 0), Cell(2, 0, 0)]);
            2
        }
        4 => {
            cells.extend([Cell(0, 1, 0), Cell(0, 0, 0), Cell(0, -1, 0), Cell(1, 0, 0)]);
            1
        }
        5 => {
            cells.extend([
                Cell(0, 0, 0),
                Cell(1, 0, 0),
                Cell(-1, 0, 0),
                Cell(0, 1, 0),
                Cell(0, -1, 0),
            ]);
            1
        }
        _ => unreachable!(),
    };
    // Append q T-units: bar centered one right of the current tip.
    for j in 0..q {
        let cx = w + 1 + 2 * j;
        cells.extend([Cell(cx, 0, 0), Cell(cx, 1, 0), Cell(cx, -1, 0), Cell(cx + 1, 0, 0)]);
    }
    Ok(Polyform::new(LatticeKind::Square, cells)?)
}

/// Fully leafed polyhexes and polyiamonds of every size: the staggered
/// caterpillar with k inner cells of degree 3 for even n = 2k+2; odd sizes
/// drop one leaf from the witness of size n+1.
pub fn family_linear(kind: LatticeKind, n: i64) -> Result<Polyform, EnumerateError> {
    assert!(
        matches!(kind, LatticeKind::Hex | LatticeKind::Tri),
        "family_linear is defined for hex and tri"
    );
    if n < 2 {
        return Err(EnumerateError::SizeZero);
    }
    let even_n = if n % 2 == 0 { n } else { n + 1 };
    let k = (even_n - 2) / 2;
    let (mut cells, removable) = match kind {
        LatticeKind::Hex => hex_caterpillar(k),
        LatticeKind::Tri => tri_caterpillar(k),
        _ => unreachable!(),
    };
    if n % 2 == 1 {
        let pos = cells.iter().position(|&c| c == removable).expect("removable leaf present");
        cells.swap_remove(pos);
    }
    Ok(Polyform::new(kind, cells)?)
}

/// Hex caterpillar: spine zigzags with steps (1,0) and (0,1); each spine cell
/// carries one parity leaf, the two ends carry one extra each. Returns the
/// cells and one removable end leaf.
fn hex_caterpillar(k: i64) -> (Vec<Cell>, Cell) {
    if k == 0 {
        let cells = vec![Cell(0, 0, 0), Cell(1, 0, 0)];
        return (cells, Cell(1, 0, 0));
    }
    let spine: Vec<Cell> = (0..k).map(|j| Cell((j + 1) / 2, j / 2, 0)).collect();
    let mut cells = spine.clone();
    for (j, s) in spine.iter().enumerate() {
        let leaf = if j % 2 == 0 { s.offset((-1, 1, 0)) } else { s.offset((1, -1, 0)) };
        cells.push(leaf);
    }
    // Extra begin leaf: the missing incoming direction of the first cell.
    let begin_extra = spine[0].offset((0, -1, 0));
    cells.push(begin_extra);
    // Extra end leaf: the would-be next spine step.
    let last = spine[k as usize - 1];
    let end_extra = if (k - 1) % 2 == 0 { last.offset((1, 0, 0)) } else { last.offset((0, 1, 0)) };
    cells.push(end_extra);
    (cells, begin_extra)
}

/// Tri caterpillar: alternating strip (m,0,0),(m,0,1) plus every outside
/// neighbor of the spine; all inner cells have degree 3.
fn tri_caterpillar(k: i64) -> (Vec<Cell>, Cell) {
    if k == 0 {
        let cells = vec![Cell(0, 0, 0), Cell(0, 0, 1)];
        return (cells, Cell(0, 0, 1));
    }
    let spine: Vec<Cell> = (0..k)
        .map(|j| if j % 2 == 0 { Cell(j / 2, 0, 0) } else { Cell(j / 2, 0, 1) })
        .collect();
    let spine_set: HashSet<Cell> = spine.iter().copied().collect();
    let mut cells = spine.clone();
    let mut seen = spine_set.clone();
    for s in &spine {
        for nb in lattice::neighbors_unchecked(LatticeKind::Tri, *s) {
            if seen.insert(nb) {
                cells.push(nb);
            }
        }
    }
    (cells, Cell(-1, 0, 1))
}

/// Convenience: the family constructor for a lattice (cubic lives in graft).
pub fn family_2d(kind: LatticeKind, n: i64) -> Result<Polyform, EnumerateError> {
    match kind {
        LatticeKind::Square => family_polyomino(n),
        LatticeKind::Hex | LatticeKind::Tri => family_linear(kind, n),
        LatticeKind::Cubic => panic!("use graft::family_polycube for the cubic lattice"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leaffn::ell;

    #[test]
    fn counts_small_square() {
        assert_eq!(enumerate_trees(LatticeKind::Square, 1, Symmetry::Fixed).unwrap().len(), 1);
        assert_eq!(enumerate_trees(LatticeKind::Square, 2, Symmetry::Fixed).unwrap().len(), 2);
        // 4 of the 5 free tetrominoes are trees (the square block is a cycle).
        assert_eq!(enumerate_trees(LatticeKind::Square, 4, Symmetry::Free).unwrap().len(), 4);
        // 19 fixed tetrominoes, minus the block = 18 fixed tree tetrominoes.
        assert_eq!(enumerate_trees(LatticeKind::Square, 4, Symmetry::Fixed).unwrap().len(), 18);
    }

    #[test]
    fn enumerated_are_trees_and_distinct() {
        for kind in [LatticeKind::Square, LatticeKind::Hex, LatticeKind::Tri, LatticeKind::Cubic] {
            let v = enumerate_trees(kind, 5, Symmetry::Free).unwrap();
            let set: HashSet<_> = v.iter().collect();
            assert_eq!(set.len(), v.len());
            for p in &v {
                assert!(p.is_tree());
                assert_eq!(p, &p.canonical(Symmetry::Free));
            }
        }
    }

    #[test]
    fn fixed_vs_free_counts() {
        for kind in LatticeKind::ALL {
            for n in 1..=5 {
                let fixed = enumerate_trees(kind, n, Symmetry::Fixed).unwrap().len();
                let free = enumerate_trees(kind, n, Symmetry::Free).unwrap().len();
                assert!(free <= fixed);
                assert!(fixed <= kind.group_order() * free, "{kind} n={n}");
            }
        }
    }

    #[test]
    fn max_leaves_small() {
        let r = max_leaves(LatticeKind::Square, 5, Symmetry::Free, None).unwrap();
        assert_eq!(r.max_leaves, 4);
        let r = max_leaves(LatticeKind::Cubic, 7, Symmetry::Free, None).unwrap();
        assert_eq!(r.max_leaves, 6);
        let r = max_leaves(LatticeKind::Hex, 4, Symmetry::Free, None).unwrap();
        assert_eq!(r.max_leaves, 3);
        assert!(r.witness_count >= 1);
    }

    #[test]
    fn family_polyomino_counts() {
        for n in 2..=60 {
            let p = family_polyomino(n).unwrap();
            assert_eq!(p.len() as i64, n, "size at n={n}");
            assert!(p.is_tree(), "tree at n={n}");
            assert_eq!(p.leaf_count() as i64, ell(LatticeKind::Square, n).unwrap(), "leaves at n={n}");
        }
    }

    #[test]
    fn family_polyomino_examples() {
        let p5 = family_polyomino(5).unwrap();
        assert_eq!(p5.leaf_count(), 4);
        let p9 = family_polyomino(9).unwrap();
        assert_eq!(p9.len(), 9);
        assert_eq!(p9.leaf_count(), 6);
        let p2 = family_polyomino(2).unwrap();
        assert_eq!(p2.leaf_count(), 2);
    }

    #[test]
    fn family_linear_counts() {
        for kind in [LatticeKind::Hex, LatticeKind::Tri] {
            for n in 2..=60 {
                let p = family_linear(kind, n).unwrap();
                assert_eq!(p.len() as i64, n, "{kind} size at n={n}");
                assert!(p.is_tree(), "{kind} tree at n={n}");
                assert_eq!(p.leaf_count() as i64, ell(kind, n).unwrap(), "{kind} leaves at n={n}");
            }
        }
    }

    #[test]
    fn family_linear_examples() {
        let h6 = family_linear(LatticeKind::Hex, 6).unwrap();
        let hist = h6.degree_histogram();
        assert_eq!(hist.count(1), 4);
        assert_eq!(hist.count(3), 2);

        let t4 = family_linear(LatticeKind::Tri, 4).unwrap();
        let hist = t4.degree_histogram();
        assert_eq!(hist.count(1), 3);
        assert_eq!(hist.count(3), 1);

        let h2 = family_linear(LatticeKind::Hex, 2).unwrap();
        assert_eq!(h2.len(), 2);
    }

    #[test]
    fn oracle_equality_tiny() {
        for kind in LatticeKind::ALL {
            for n in 2..=6 {
                let r = max_leaves(kind, n, Symmetry::Fixed, Some(1)).unwrap();
                assert_eq!(r.max_leaves as i64, ell(kind, n as i64).unwrap(), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn limit_exceeded_reported() {
        let limits = Limits { max_level_size: 3, max_mem_mib: None };
        let err = enumerate_trees_limited(LatticeKind::Square, 5, Symmetry::Fixed, &limits);
        assert!(matches!(err, Err(EnumerateError::LimitExceeded(_))));
    }
}
