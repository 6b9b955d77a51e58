//! Finite cell sets as induced subgraphs of a lattice.
//!
//! A [`Polyform`] is a lattice tag plus a non-empty sorted set of cells; the
//! induced graph (edges = adjacent cell pairs inside the set) is implicit.
//! [`CellSet`] is the possibly-empty variant used by extension / interior /
//! hull, which are the only operations allowed to produce or consume empty
//! sets.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::PolyformError;
use crate::lattice::{self, Cell, Isometry, LatticeKind};

/// Possibly-empty set of cells on one lattice. Sorted, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    kind: LatticeKind,
    cells: Vec<Cell>,
}

impl CellSet {
    pub fn new(kind: LatticeKind, mut cells: Vec<Cell>) -> Result<CellSet, PolyformError> {
        for c in &cells {
            if !c.is_valid(kind) {
                return Err(crate::error::LatticeError::InvalidCell {
                    kind,
                    cell: (c.0, c.1, c.2),
                }
                .into());
            }
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(CellSet { kind, cells })
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn is_subset_of(&self, other: &CellSet) -> bool {
        self.kind == other.kind && self.cells.iter().all(|&c| other.contains(c))
    }

    pub fn into_polyform(self) -> Option<Polyform> {
        if self.cells.is_empty() {
            None
        } else {
            Some(Polyform { kind: self.kind, cells: self.cells })
        }
    }

    /// All lattice neighbors of the set added to it.
    pub fn extension(&self) -> CellSet {
        let mut out: HashSet<Cell> = self.cells.iter().copied().collect();
        for &c in &self.cells {
            out.extend(lattice::neighbors_unchecked(self.kind, c));
        }
        let mut cells: Vec<Cell> = out.into_iter().collect();
        cells.sort_unstable();
        CellSet { kind: self.kind, cells }
    }

    /// Cells all of whose lattice neighbors lie in the set.
    pub fn interior(&self) -> CellSet {
        let cells = self
            .cells
            .iter()
            .copied()
            .filter(|&c| lattice::neighbors_unchecked(self.kind, c).iter().all(|&n| self.contains(n)))
            .collect();
        CellSet { kind: self.kind, cells }
    }

    /// Hull = interior of the extension.
    pub fn hull(&self) -> CellSet {
        self.extension().interior()
    }
}

/// Histogram of induced-graph degrees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeHistogram {
    counts: HashMap<usize, usize>,
}

impl DegreeHistogram {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    /// Number of leaves (degree-1 cells).
    pub fn leaves(&self) -> usize {
        self.count(1)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Sum of degree * count = twice the edge count.
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(d, c)| d * c).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut v: Vec<_> = self.counts.iter().map(|(&d, &c)| (d, c)).collect();
        v.sort_unstable();
        v.into_iter()
    }
}

/// Symmetry mode for canonical forms and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// Up to translation.
    Fixed,
    /// Up to any lattice isometry.
    Free,
}

impl Symmetry {
    pub fn parse(s: &str) -> Option<Symmetry> {
        match s {
            "fixed" => Some(Symmetry::Fixed),
            "free" => Some(Symmetry::Free),
            _ => None,
        }
    }
}

/// Non-empty set of cells on one lattice, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyform {
    kind: LatticeKind,
    cells: Vec<Cell>,
}

impl Polyform {
    pub fn new(kind: LatticeKind, cells: Vec<Cell>) -> Result<Polyform, PolyformError> {
        let set = CellSet::new(kind, cells)?;
        set.into_polyform().ok_or(PolyformError::Empty)
    }

    /// Internal constructor for cells that are already valid, sorted, unique.
    pub(crate) fn from_sorted_unchecked(kind: LatticeKind, cells: Vec<Cell>) -> Polyform {
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!cells.is_empty());
        Polyform { kind, cells }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn as_cell_set(&self) -> CellSet {
        CellSet { kind: self.kind, cells: self.cells.clone() }
    }

    /// Neighbors of `c` inside the polyform.
    pub fn internal_neighbors(&self, c: Cell) -> Vec<Cell> {
        lattice::neighbors_unchecked(self.kind, c)
            .into_iter()
            .filter(|&n| self.contains(n))
            .collect()
    }

    pub fn degree(&self, c: Cell) -> usize {
        self.internal_neighbors(c).len()
    }

    /// Number of edges of the induced graph.
    pub fn edge_count(&self) -> usize {
        let twice: usize = self.cells.iter().map(|&c| self.degree(c)).sum();
        twice / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen: HashSet<Cell> = HashSet::with_capacity(self.cells.len());
        let mut queue = VecDeque::new();
        queue.push_back(self.cells[0]);
        seen.insert(self.cells[0]);
        while let Some(c) = queue.pop_front() {
            for n in self.internal_neighbors(c) {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// Connected with edge count n - 1, i.e. the induced graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() == self.len() - 1
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &c in &self.cells {
            *counts.entry(self.degree(c)).or_insert(0) += 1;
        }
        DegreeHistogram { counts }
    }

    /// Leaf count of the induced graph.
    pub fn leaf_count(&self) -> usize {
        self.cells.iter().filter(|&&c| self.degree(c) == 1).count()
    }

    pub fn leaves(&self) -> Vec<Cell> {
        self.cells.iter().copied().filter(|&c| self.degree(c) == 1).collect()
    }

    /// Leaf-stripping depth of `c`: 0 for cells of degree <= 1, otherwise
    /// 1 + depth in the tree with all leaves removed. Requires a tree.
    pub fn depth(&self, c: Cell) -> Result<u32, PolyformError> {
        if !self.contains(c) {
            return Err(PolyformError::CellNotPresent((c.0, c.1, c.2)));
        }
        if !self.is_tree() {
            return Err(PolyformError::NotATree);
        }
        let mut alive: HashSet<Cell> = self.cells.iter().copied().collect();
        let mut depth = 0u32;
        loop {
            let deg_in = |s: &HashSet<Cell>, x: Cell| {
                lattice::neighbors_unchecked(self.kind, x).iter().filter(|n| s.contains(n)).count()
            };
            if deg_in(&alive, c) <= 1 {
                return Ok(depth);
            }
            let leaves: Vec<Cell> = alive.iter().copied().filter(|&x| deg_in(&alive, x) <= 1).collect();
            for l in leaves {
                alive.remove(&l);
            }
            depth += 1;
        }
    }

    pub fn extension(&self) -> CellSet {
        self.as_cell_set().extension()
    }

    pub fn interior(&self) -> CellSet {
        self.as_cell_set().interior()
    }

    pub fn hull(&self) -> CellSet {
        self.as_cell_set().hull()
    }

    pub fn translate(&self, d: (i64, i64, i64)) -> Polyform {
        // Translation moves (x, y) only for Tri; orientation is preserved.
        let cells = match self.kind {
            LatticeKind::Tri => self.cells.iter().map(|c| Cell(c.0 + d.0, c.1 + d.1, c.2)).collect(),
            _ => self.cells.iter().map(|c| c.offset(d)).collect(),
        };
        Polyform { kind: self.kind, cells }
    }

    pub fn transform(&self, iso: &Isometry) -> Result<Polyform, PolyformError> {
        if iso.kind != self.kind {
            return Err(crate::error::LatticeError::LatticeMismatch {
                expected: self.kind,
                got: iso.kind,
            }
            .into());
        }
        let mut cells: Vec<Cell> = self.cells.iter().map(|&c| iso.apply_unchecked(c)).collect();
        cells.sort_unstable();
        Ok(Polyform { kind: self.kind, cells })
    }

    /// Translate so the lexicographically smallest cell sits at the origin of
    /// the translatable coordinates (orientation untouched for Tri).
    pub fn canonical_fixed(&self) -> Polyform {
        let first = self.cells[0];
        match self.kind {
            LatticeKind::Tri => self.translate((-first.0, -first.1, 0)),
            _ => self.translate((-first.0, -first.1, -first.2)),
        }
    }

    /// Minimum over all point-group images of the fixed form.
    pub fn canonical_free(&self) -> Polyform {
        lattice::isometry_group(self.kind)
            .iter()
            .map(|iso| self.transform(iso).expect("same lattice").canonical_fixed())
            .min()
            .expect("group is non-empty")
    }

    pub fn canonical(&self, sym: Symmetry) -> Polyform {
        match sym {
            Symmetry::Fixed => self.canonical_fixed(),
            Symmetry::Free => self.canonical_free(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(cells: &[(i64, i64)]) -> Polyform {
        Polyform::new(LatticeKind::Square, cells.iter().map(|&(x, y)| Cell(x, y, 0)).collect())
            .unwrap()
    }

    fn cross5() -> Polyform {
        square(&[(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)])
    }

    #[test]
    fn connectivity() {
        assert!(square(&[(0, 0)]).is_connected());
        assert!(!square(&[(0, 0), (2, 0)]).is_connected());
        assert!(cross5().is_connected());
    }

    #[test]
    fn tree_recognition() {
        let block = square(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(!block.is_tree());
        assert!(cross5().is_tree());
        let path: Vec<(i64, i64)> = (0..7).map(|i| (i, 0)).collect();
        assert!(square(&path).is_tree());
    }

    #[test]
    fn degree_histograms() {
        let h = cross5().degree_histogram();
        assert_eq!(h.count(1), 4);
        assert_eq!(h.count(4), 1);
        assert_eq!(h.total(), 5);

        let domino = square(&[(0, 0), (1, 0)]);
        assert_eq!(domino.degree_histogram().count(1), 2);

        let star: Vec<Cell> = std::iter::once(Cell(0, 0, 0))
            .chain(lattice::neighbors_unchecked(LatticeKind::Cubic, Cell(0, 0, 0)))
            .collect();
        let star = Polyform::new(LatticeKind::Cubic, star).unwrap();
        let h = star.degree_histogram();
        assert_eq!(h.count(1), 6);
        assert_eq!(h.count(6), 1);
    }

    #[test]
    fn depth_examples() {
        let p3 = square(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(p3.depth(Cell(1, 0, 0)).unwrap(), 1);
        assert_eq!(p3.depth(Cell(0, 0, 0)).unwrap(), 0);

        let p5 = square(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
        assert_eq!(p5.depth(Cell(2, 0, 0)).unwrap(), 2);

        assert_eq!(cross5().depth(Cell(0, 0, 0)).unwrap(), 1);

        let block = square(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(block.depth(Cell(0, 0, 0)).is_err());
    }

    #[test]
    fn ext_int_hull() {
        let single = square(&[(0, 0)]);
        let ext = single.extension();
        assert_eq!(ext.len(), 5);
        let int = cross5().interior();
        assert_eq!(int.cells(), &[Cell(0, 0, 0)]);
        // Hull of a single cell: Int(cross) = {origin}.
        let hull = single.hull();
        assert_eq!(hull.cells(), &[Cell(0, 0, 0)]);
        // Definitional identity.
        let p = square(&[(0, 0), (1, 0), (1, 1), (2, 1)]);
        assert_eq!(p.hull(), p.extension().interior());
    }

    #[test]
    fn interior_may_be_empty() {
        let domino = square(&[(0, 0), (1, 0)]);
        assert!(domino.interior().is_empty());
        assert!(domino.interior().into_polyform().is_none());
    }

    #[test]
    fn canonical_fixed_translates_lex_min_to_origin() {
        let p = square(&[(5, 7), (6, 7)]);
        assert_eq!(p.canonical_fixed().cells(), &[Cell(0, 0, 0), Cell(1, 0, 0)]);
    }

    #[test]
    fn free_canonical_identifies_rotations() {
        let horiz = square(&[(0, 0), (1, 0)]);
        let vert = square(&[(3, 3), (3, 4)]);
        assert_eq!(horiz.canonical_free(), vert.canonical_free());

        // L-tromino in all 4 rotations.
        let l = square(&[(0, 0), (1, 0), (0, 1)]);
        let group = lattice::isometry_group(LatticeKind::Square);
        for iso in &group {
            let img = l.transform(iso).unwrap();
            assert_eq!(img.canonical_free(), l.canonical_free());
        }
    }

    #[test]
    fn canonical_free_idempotent() {
        let p = square(&[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]);
        let c = p.canonical_free();
        assert_eq!(c.canonical_free(), c);
        assert_eq!(c.canonical_fixed(), c);
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let p = cross5();
        assert_eq!(p.degree_histogram().degree_sum(), 2 * p.edge_count());
    }

    #[test]
    fn tri_polyform_basics() {
        let strip = Polyform::new(
            LatticeKind::Tri,
            vec![Cell(0, 0, 0), Cell(0, 0, 1), Cell(1, 0, 0), Cell(1, 0, 1)],
        )
        .unwrap();
        assert!(strip.is_tree());
        assert_eq!(strip.leaf_count(), 2);
        // Free canonical form is invariant across the whole group.
        for iso in lattice::isometry_group(LatticeKind::Tri) {
            assert_eq!(strip.transform(&iso).unwrap().canonical_free(), strip.canonical_free());
        }
    }
}
