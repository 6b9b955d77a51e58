//! Rooted polycube algebra: graft union, branches, substitutability,
//! abundance, the abundant-branch search, and the fully leafed polycube
//! family U_k.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::GraftError;
use crate::lattice::{self, Cell, Isometry, LatticeKind};
use crate::leaffn;
use crate::polyform::Polyform;

pub type Dir = (i64, i64, i64);

fn is_unit(d: Dir) -> bool {
    d.0.abs() + d.1.abs() + d.2.abs() == 1
}

fn neg(d: Dir) -> Dir {
    (-d.0, -d.1, -d.2)
}

/// A cubic tree polyform with a distinguished root cell and unit direction.
///
/// Non-final form: `root + dir` is a leaf. Final form: `root + dir` is an
/// inner cell (the growing direction has been capped by a final graft).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootedPolycube {
    cells: Vec<Cell>,
    root: Cell,
    dir: Dir,
}

impl RootedPolycube {
    /// Build and validate a rooted polycube per the definition: a cubic tree
    /// of size >= 2, root adjacent to at least one leaf, direction pointing
    /// at a cell of the tree.
    pub fn new(tree: Polyform, root: Cell, dir: Dir) -> Result<RootedPolycube, GraftError> {
        if tree.kind() != LatticeKind::Cubic {
            return Err(GraftError::NotCubic);
        }
        if tree.len() < 2 {
            return Err(GraftError::TooSmall);
        }
        if !tree.contains(root) {
            return Err(GraftError::RootNotPresent((root.0, root.1, root.2)));
        }
        if !is_unit(dir) {
            return Err(GraftError::NotUnitDirection(dir));
        }
        if !tree.is_tree() {
            return Err(GraftError::Polyform(crate::error::PolyformError::NotATree));
        }
        let r = RootedPolycube { cells: tree.cells().to_vec(), root, dir };
        if !r.cells_contains(r.head()) {
            return Err(GraftError::DirectionNotLeaf);
        }
        if !r.root_adjacent_to_leaf() {
            return Err(GraftError::RootNotNearLeaf);
        }
        Ok(r)
    }

    /// Strict constructor for non-final rooted polycubes (`root + dir` must
    /// be a leaf, Def. (iii)).
    pub fn new_non_final(tree: Polyform, root: Cell, dir: Dir) -> Result<RootedPolycube, GraftError> {
        let r = Self::new(tree, root, dir)?;
        if r.is_final() {
            return Err(GraftError::DirectionNotLeaf);
        }
        Ok(r)
    }

    fn cells_contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn root(&self) -> Cell {
        self.root
    }

    pub fn dir(&self) -> Dir {
        self.dir
    }

    /// The cell the direction points at.
    pub fn head(&self) -> Cell {
        self.root.offset(self.dir)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn polyform(&self) -> Polyform {
        Polyform::from_sorted_unchecked(LatticeKind::Cubic, self.cells.clone())
    }

    fn degree(&self, c: Cell) -> usize {
        lattice::neighbors_unchecked(LatticeKind::Cubic, c)
            .into_iter()
            .filter(|&n| self.cells_contains(n))
            .count()
    }

    fn is_leaf(&self, c: Cell) -> bool {
        self.cells_contains(c) && self.degree(c) == 1
    }

    fn root_adjacent_to_leaf(&self) -> bool {
        lattice::neighbors_unchecked(LatticeKind::Cubic, self.root)
            .into_iter()
            .any(|n| self.is_leaf(n))
    }

    /// Final form: the direction cell is not a leaf.
    pub fn is_final(&self) -> bool {
        !self.is_leaf(self.head())
    }

    pub fn leaf_count(&self) -> usize {
        self.cells.iter().filter(|&&c| self.degree(c) == 1).count()
    }

    /// Unit vectors v with `root - v` a leaf: the directions along which a
    /// guest may be grafted.
    pub fn free_directions(&self) -> Vec<Dir> {
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
            .into_iter()
            .filter(|&v| self.is_leaf(Cell(self.root.0 - v.0, self.root.1 - v.1, self.root.2 - v.2)))
            .collect()
    }

    /// Maximum path length from the root to a leaf.
    pub fn height(&self) -> u32 {
        let mut dist: HashMap<Cell, u32> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(self.root, 0);
        queue.push_back(self.root);
        let mut best = 0;
        while let Some(c) = queue.pop_front() {
            let d = dist[&c];
            if self.degree(c) == 1 {
                best = best.max(d);
            }
            for n in lattice::neighbors_unchecked(LatticeKind::Cubic, c) {
                if self.cells_contains(n) && !dist.contains_key(&n) {
                    dist.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
        best
    }

    pub fn transform(&self, iso: &Isometry) -> RootedPolycube {
        debug_assert_eq!(iso.kind, LatticeKind::Cubic);
        let mut cells: Vec<Cell> = self.cells.iter().map(|&c| iso.apply_unchecked(c)).collect();
        cells.sort_unstable();
        let origin = iso.apply_unchecked(Cell(0, 0, 0));
        let dir_img = iso.apply_unchecked(Cell(self.dir.0, self.dir.1, self.dir.2));
        RootedPolycube {
            cells,
            root: iso.apply_unchecked(self.root),
            dir: (dir_img.0 - origin.0, dir_img.1 - origin.1, dir_img.2 - origin.2),
        }
    }

    pub fn translate(&self, d: Dir) -> RootedPolycube {
        RootedPolycube {
            cells: self.cells.iter().map(|c| c.offset(d)).collect(),
            root: self.root.offset(d),
            dir: self.dir,
        }
    }

    /// Translate the root to the origin and rotate the direction to +z.
    pub fn aligned(&self) -> RootedPolycube {
        let rot = lattice::cubic_rotation_to_z(self.dir);
        let moved = self.translate((-self.root.0, -self.root.1, -self.root.2));
        let mut out = moved.transform(&rot);
        debug_assert_eq!(out.root, Cell(0, 0, 0));
        debug_assert_eq!(out.dir, (0, 0, 1));
        out.cells.sort_unstable();
        out
    }

    /// Canonical representative of the rooted free class: root at the
    /// origin, direction +z, cell list minimized over the 8 stabilizer
    /// isometries of the z axis.
    pub fn canonical_rooted(&self) -> RootedPolycube {
        let base = self.aligned();
        lattice::cubic_z_stabilizer()
            .iter()
            .map(|iso| {
                let mut t = base.transform(iso);
                t.cells.sort_unstable();
                t
            })
            .min_by(|a, b| a.cells.cmp(&b.cells))
            .expect("stabilizer non-empty")
    }
}

/// Failure modes of a graft union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// The guest's direction is not a free direction of the host.
    DirectionNotFree,
    /// The union's induced graph is not a tree (cycle, or a cell collision
    /// beyond the two shared cells).
    CycleCreated,
    /// The union is a tree but `root + dir` is no longer a leaf without the
    /// graft being final (defensive; unreachable for unit grafts).
    RootDirectionBlocked,
}

/// Outcome of a graft union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraftResult {
    NonFinal(RootedPolycube),
    /// A completed (capped) tree; the payload is unrooted.
    Final(Polyform),
    Invalid(InvalidReason),
}

impl GraftResult {
    pub fn is_well_defined(&self) -> bool {
        !matches!(self, GraftResult::Invalid(_))
    }

    pub fn polyform(&self) -> Option<Polyform> {
        match self {
            GraftResult::NonFinal(r) => Some(r.polyform()),
            GraftResult::Final(p) => Some(p.clone()),
            GraftResult::Invalid(_) => None,
        }
    }
}

/// Graft union host ◁ guest: the guest is translated so its root lands on
/// the host's free-direction leaf `host.root - guest.dir` and its direction
/// cell lands on the host's root. Exactly those two cells are shared in a
/// well-defined graft.
pub fn graft_union(host: &RootedPolycube, guest: &RootedPolycube) -> GraftResult {
    let u = guest.dir;
    let neck = Cell(host.root.0 - u.0, host.root.1 - u.1, host.root.2 - u.2);
    if !host.is_leaf(neck) {
        return GraftResult::Invalid(InvalidReason::DirectionNotFree);
    }
    // tau = translation by (root - guest.root) - guest.dir.
    let t = (
        host.root.0 - guest.root.0 - u.0,
        host.root.1 - guest.root.1 - u.1,
        host.root.2 - guest.root.2 - u.2,
    );
    let mut cells: Vec<Cell> = host.cells.clone();
    cells.extend(guest.cells.iter().map(|c| c.offset(t)));
    cells.sort_unstable();
    cells.dedup();
    // A well-defined graft shares exactly the two cells {root, neck}.
    if cells.len() != host.len() + guest.len() - 2 {
        return GraftResult::Invalid(InvalidReason::CycleCreated);
    }
    let union = Polyform::from_sorted_unchecked(LatticeKind::Cubic, cells);
    if !union.is_tree() {
        return GraftResult::Invalid(InvalidReason::CycleCreated);
    }
    let head = host.head();
    let head_is_leaf = union.degree(head) == 1;
    if head_is_leaf {
        let rooted = RootedPolycube {
            cells: union.cells().to_vec(),
            root: host.root,
            dir: host.dir,
        };
        GraftResult::NonFinal(rooted)
    } else if u == neg(host.dir) {
        GraftResult::Final(union)
    } else {
        GraftResult::Invalid(InvalidReason::RootDirectionBlocked)
    }
}

/// All branch / co-branch pairs of a cubic tree: one pair per edge per
/// orientation. The branch at edge (a, b) contains a's side plus b, rooted
/// at a with direction toward b.
pub fn branches(tree: &Polyform) -> Result<Vec<(RootedPolycube, RootedPolycube)>, GraftError> {
    if tree.kind() != LatticeKind::Cubic {
        return Err(GraftError::NotCubic);
    }
    if !tree.is_tree() {
        return Err(GraftError::Polyform(crate::error::PolyformError::NotATree));
    }
    let mut out = Vec::new();
    for &a in tree.cells() {
        for b in tree.internal_neighbors(a) {
            // Each unordered edge appears twice in this loop, giving both
            // orientations naturally.
            let side_a = component_without_edge(tree, a, b);
            let side_b: Vec<Cell> =
                tree.cells().iter().copied().filter(|c| !side_a.contains(c)).collect();
            let mut b_cells: Vec<Cell> = side_a.iter().copied().collect();
            b_cells.push(b);
            b_cells.sort_unstable();
            let mut c_cells = side_b;
            c_cells.push(a);
            c_cells.sort_unstable();
            let dir = (b.0 - a.0, b.1 - a.1, b.2 - a.2);
            let branch = RootedPolycube { cells: b_cells, root: a, dir };
            let cobranch = RootedPolycube { cells: c_cells, root: b, dir: neg(dir) };
            out.push((branch, cobranch));
        }
    }
    Ok(out)
}

/// Cells reachable from `a` without using the edge (a, b).
fn component_without_edge(tree: &Polyform, a: Cell, b: Cell) -> HashSet<Cell> {
    let mut seen = HashSet::new();
    seen.insert(a);
    let mut queue = VecDeque::new();
    queue.push_back(a);
    while let Some(c) = queue.pop_front() {
        for n in tree.internal_neighbors(c) {
            if c == a && n == b {
                continue;
            }
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Proper branches: neither endpoint of the cut edge is a leaf of the tree.
pub fn proper_branches(
    tree: &Polyform,
) -> Result<Vec<(RootedPolycube, RootedPolycube)>, GraftError> {
    Ok(branches(tree)?
        .into_iter()
        .filter(|(b, _)| {
            let a = b.root;
            let hb = b.head();
            tree.degree(a) > 1 && tree.degree(hb) > 1
        })
        .collect())
}

/// Sufficient substitutability test: `guest` minus its root fits inside the
/// hull of `host` minus its root, after aligning roots and directions.
pub fn hull_substitutable(host: &RootedPolycube, guest: &RootedPolycube) -> bool {
    let h = host.aligned();
    let g = guest.aligned();
    let h_rest: Vec<Cell> = h.cells.iter().copied().filter(|&c| c != h.root).collect();
    let g_rest: Vec<Cell> = g.cells.iter().copied().filter(|&c| c != g.root).collect();
    let hull = crate::polyform::CellSet::new(LatticeKind::Cubic, h_rest).unwrap().hull();
    g_rest.iter().all(|&c| hull.contains(c))
}

/// One entry of the abundant catalog.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub rooted: RootedPolycube,
    pub is_final: bool,
    pub height: u32,
}

/// Height-indexed store of abundant rooted polycubes: A (non-final) and F
/// (final), as produced by the abundant-branch search.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    /// Non-final members by height.
    pub a: BTreeMap<u32, Vec<RootedPolycube>>,
    /// Final members by height.
    pub f: BTreeMap<u32, Vec<RootedPolycube>>,
    /// All sizes strictly below this are fully decided.
    pub complete_below: usize,
    /// True when the build hit a resource cap before exhausting sizes.
    pub truncated: bool,
}

impl Catalog {
    pub fn a_count(&self, height: u32) -> usize {
        self.a.get(&height).map_or(0, Vec::len)
    }

    pub fn f_count(&self, height: u32) -> usize {
        self.f.get(&height).map_or(0, Vec::len)
    }

    pub fn non_final_members(&self) -> impl Iterator<Item = &RootedPolycube> {
        self.a.values().flatten()
    }

    pub fn members(&self) -> impl Iterator<Item = (&RootedPolycube, bool)> {
        self.a
            .values()
            .flatten()
            .map(|r| (r, false))
            .chain(self.f.values().flatten().map(|r| (r, true)))
    }

    fn smaller_non_final(&self, n: usize) -> Vec<&RootedPolycube> {
        self.non_final_members().filter(|r| r.len() < n).collect()
    }
}

/// Is `r` abundant with respect to `catalog`?
///
/// True for the two-cell polycube; otherwise true iff no strictly smaller
/// non-final abundant member, in any orientation fixing the direction,
/// both fits the hull condition and loses at most delta-ell leaves.
pub fn is_abundant(r: &RootedPolycube, catalog: &Catalog) -> Result<bool, GraftError> {
    if r.len() == 2 {
        return Ok(true);
    }
    if catalog.complete_below < r.len() {
        return Err(GraftError::IncompleteCatalog(catalog.complete_below));
    }
    Ok(!has_sparse_witness(r, &catalog.smaller_non_final(r.len())))
}

fn has_sparse_witness(r: &RootedPolycube, smaller: &[&RootedPolycube]) -> bool {
    let aligned = r.aligned();
    let n = r.len() as i64;
    let n1 = r.leaf_count() as i64;
    let rest: Vec<Cell> = aligned.cells.iter().copied().filter(|&c| c != aligned.root).collect();
    let hull = crate::polyform::CellSet::new(LatticeKind::Cubic, rest).unwrap().hull();
    let stab = lattice::cubic_z_stabilizer();
    smaller.iter().any(|cand| {
        let dn = n - cand.len() as i64;
        let deficit = n1 - cand.leaf_count() as i64;
        if deficit > leaffn::delta_ell(LatticeKind::Cubic, dn).expect("dn >= 1") {
            return false;
        }
        let c_aligned = cand.aligned();
        stab.iter().any(|iso| {
            let img = c_aligned.transform(iso);
            img.cells.iter().filter(|&&c| c != img.root).all(|&c| hull.contains(c))
        })
    })
}

/// All atomic (height-1) rooted polycubes up to the rooted free equivalence:
/// a root plus a non-empty subset of its neighbors, the direction pointing
/// at one of them. There are 12 classes including the graft-neutral rooted
/// domino, 11 without it.
pub fn atomic_rooted_free() -> Vec<RootedPolycube> {
    let dirs: [Dir; 6] = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)];
    let mut seen: HashSet<Vec<Cell>> = HashSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << 6) {
        let arms: Vec<Dir> = (0..6).filter(|&i| mask >> i & 1 == 1).map(|i| dirs[i]).collect();
        let mut cells = vec![Cell(0, 0, 0)];
        cells.extend(arms.iter().map(|&d| Cell(d.0, d.1, d.2)));
        cells.sort_unstable();
        for &u in &arms {
            let r = RootedPolycube { cells: cells.clone(), root: Cell(0, 0, 0), dir: u };
            let canon = r.canonical_rooted();
            if seen.insert(canon.cells.clone()) {
                out.push(canon);
            }
        }
    }
    out.sort_by(|a, b| a.cells.len().cmp(&b.cells.len()).then(a.cells.cmp(&b.cells)));
    out
}

/// Seeding mode for the abundant search (the paper's Algorithm 1 line 3
/// reads "size 5 and 6"; the inclusive mode seeds every atomic).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomicSeeding {
    All,
    Size56,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_height: u32,
    pub max_size: usize,
    pub seeding: AtomicSeeding,
}

impl SearchConfig {
    pub fn new(max_height: u32) -> SearchConfig {
        SearchConfig { max_height, max_size: 40, seeding: AtomicSeeding::All }
    }
}

/// Generation of all abundant rooted polycubes up to a height budget.
///
/// Size-stratified closure: candidates of size n are the atomic stars plus
/// every well-defined graft of two strictly smaller non-final members plus
/// all rootings of surviving trees; each candidate is kept iff abundant
/// against the frozen catalog of smaller sizes. Final results go to F,
/// non-final to A, keyed by height.
pub fn abundant_branches(config: &SearchConfig) -> Catalog {
    let mut catalog = Catalog::default();
    let mut seen_a: HashSet<Vec<Cell>> = HashSet::new();
    let mut seen_f: HashSet<Polyform> = HashSet::new();

    let atomics = atomic_rooted_free();
    let seeded: Vec<&RootedPolycube> = atomics
        .iter()
        .filter(|a| match config.seeding {
            AtomicSeeding::All => true,
            AtomicSeeding::Size56 => a.len() == 5 || a.len() == 6,
        })
        .collect();

    // The rooted domino is abundant by definition and seeds size 2.
    for a in &seeded {
        if a.len() == 2 {
            store(&mut catalog, &mut seen_a, &mut seen_f, a, false, config.max_height);
        }
    }
    catalog.complete_below = 3;

    let mut n = 3usize;
    while n <= config.max_size {
        // Reachability: grafts of existing members cannot exceed this size.
        let max_member = catalog.non_final_members().map(RootedPolycube::len).max().unwrap_or(2);
        let reachable = 2 * max_member.max(7);
        if n > reachable {
            break;
        }

        let mut candidates: HashSet<RootedPolycube> = HashSet::new();
        for a in &seeded {
            if a.len() == n {
                candidates.insert((*a).clone());
            }
        }
        // Grafts of smaller members (guests exclude the neutral domino).
        let smaller: Vec<&RootedPolycube> =
            catalog.non_final_members().filter(|r| r.len() < n).collect();
        let pairs: Vec<(&RootedPolycube, &RootedPolycube)> = smaller
            .iter()
            .flat_map(|&h| {
                smaller
                    .iter()
                    .filter(move |&&g| g.len() > 2 && h.len() + g.len() == n + 2)
                    .map(move |&g| (h, g))
            })
            .collect();
        let grafted: Vec<RootedPolycube> = pairs
            .par_iter()
            .flat_map_iter(|&(h, g)| {
                let mut found = Vec::new();
                let stab = lattice::cubic_z_stabilizer();
                for free_dir in h.free_directions() {
                    let rot = orient_to(free_dir);
                    for s in &stab {
                        let guest = g.transform(s).transform(&rot);
                        match graft_union(h, &guest) {
                            GraftResult::NonFinal(r) => found.push(r.canonical_rooted()),
                            GraftResult::Final(p) => {
                                // Keep the root/direction of the host for the
                                // stored final entry.
                                found.push(RootedPolycube {
                                    cells: p.cells().to_vec(),
                                    root: h.root,
                                    dir: h.dir,
                                }),
                            }
                            GraftResult::Invalid(_) => {}
                        }
                    }
                }
                found
            })
            .collect();
        candidates.extend(grafted);

        // Abundance filter against the frozen catalog.
        let smaller_refs: Vec<&RootedPolycube> = catalog.smaller_non_final(n);
        let mut survivors: Vec<RootedPolycube> = candidates
            .into_par_iter()
            .filter(|c| c.len() == n && !has_sparse_witness(c, &smaller_refs))
            .collect();
        survivors.sort_by(|a, b| a.cells.cmp(&b.cells));

        // Close the wave under rerooting of surviving trees.
        let trees: HashSet<Polyform> =
            survivors.iter().map(|r| r.polyform().canonical_free()).collect();
        let rootings: Vec<RootedPolycube> = trees
            .par_iter()
            .flat_map_iter(|t| all_rootings(t))
            .map(|r| r.canonical_rooted())
            .collect();
        let extra: Vec<RootedPolycube> = rootings
            .into_par_iter()
            .filter(|c| !has_sparse_witness(c, &smaller_refs))
            .collect();
        survivors.extend(extra);
        survivors.sort_by(|a, b| a.cells.cmp(&b.cells));
        survivors.dedup();

        for s in &survivors {
            store(&mut catalog, &mut seen_a, &mut seen_f, s, s.is_final(), config.max_height);
        }
        catalog.complete_below = n + 1;
        n += 1;
    }
    if n <= config.max_size {
        // Stopped because no larger size is reachable: fully decided.
        catalog.complete_below = usize::MAX;
    } else {
        catalog.truncated = true;
    }
    catalog
}

fn store(
    catalog: &mut Catalog,
    seen_a: &mut HashSet<Vec<Cell>>,
    seen_f: &mut HashSet<Polyform>,
    r: &RootedPolycube,
    is_final: bool,
    max_height: u32,
) {
    let canon = r.canonical_rooted();
    let h = canon.height();
    if h > max_height {
        return;
    }
    if is_final {
        let tree = canon.polyform().canonical_free();
        if seen_f.insert(tree) {
            catalog.f.entry(h).or_default().push(canon);
        }
    } else if seen_a.insert(canon.cells.clone()) {
        catalog.a.entry(h).or_default().push(canon);
    }
}

/// Every valid (root, direction) pair of a cubic tree.
pub fn all_rootings(tree: &Polyform) -> Vec<RootedPolycube> {
    let mut out = Vec::new();
    if tree.len() < 2 {
        return out;
    }
    for &r in tree.cells() {
        for l in tree.internal_neighbors(r) {
            if tree.degree(l) == 1 {
                out.push(RootedPolycube {
                    cells: tree.cells().to_vec(),
                    root: r,
                    dir: (l.0 - r.0, l.1 - r.1, l.2 - r.2),
                });
            }
        }
    }
    out
}

/// An isometry rotating +z onto `d` (identity when d = +z).
fn orient_to(d: Dir) -> Isometry {
    // cubic_rotation_to_z maps d -> +z; invert by searching the group.
    for iso in lattice::isometry_group(LatticeKind::Cubic) {
        let img = iso.apply_unchecked(Cell(0, 0, 1));
        if (img.0, img.1, img.2) == d {
            return iso;
        }
    }
    unreachable!("not a unit direction: {d:?}")
}

// ---------------------------------------------------------------------------
// The fully leafed polycube family U_k.
// ---------------------------------------------------------------------------

/// A chain piece: cells in a local frame whose entry pair is
/// (head at (0,0,1), root at origin); `exit` names the (attach, tip) pair
/// where the next piece is grafted, None for terminal pieces.
struct Piece {
    cells: Vec<Cell>,
    exit: Option<(Cell, Cell)>,
}

fn piece_r3() -> Piece {
    Piece {
        cells: vec![Cell(0, 0, 1), Cell(0, 0, 0), Cell(0, 0, -1)],
        exit: Some((Cell(0, 0, 0), Cell(0, 0, -1))),
    }
}

fn piece_r4() -> Piece {
    Piece {
        cells: vec![Cell(0, 0, 1), Cell(0, 0, 0), Cell(1, 0, 0), Cell(0, 0, -1)],
        exit: Some((Cell(0, 0, 0), Cell(0, 0, -1))),
    }
}

fn piece_r5() -> Piece {
    Piece {
        cells: vec![Cell(0, 0, 1), Cell(0, 0, 0), Cell(1, 0, 0), Cell(-1, 0, 0), Cell(0, 0, -1)],
        exit: Some((Cell(0, 0, 0), Cell(0, 0, -1))),
    }
}

/// Leading H cap (net 10 cells, 7 leaves): middle cell of degree 3 between
/// two degree-5 cells whose extra arms point up, plus the hosting tail.
/// Used only as the first piece, so it has no head cell.
fn piece_r12_top() -> Piece {
    let mut cells = vec![Cell(0, 0, 0), Cell(0, 0, -1)];
    for sx in [1i64, -1] {
        cells.push(Cell(sx, 0, 0));
        cells.push(Cell(2 * sx, 0, 0));
        cells.push(Cell(sx, 1, 0));
        cells.push(Cell(sx, -1, 0));
        cells.push(Cell(sx, 0, 1));
    }
    Piece { cells, exit: Some((Cell(0, 0, 0), Cell(0, 0, -1))) }
}

/// Trailing H cap: extra arms point down; terminal (no exit).
fn piece_r12_bottom() -> Piece {
    let mut cells = vec![Cell(0, 0, 1), Cell(0, 0, 0)];
    for sx in [1i64, -1] {
        cells.push(Cell(sx, 0, 0));
        cells.push(Cell(2 * sx, 0, 0));
        cells.push(Cell(sx, 1, 0));
        cells.push(Cell(sx, -1, 0));
        cells.push(Cell(sx, 0, -1));
    }
    Piece { cells, exit: None }
}

/// One 41-cell period: the phi image of a path cross — a U_17 whose two
/// side arms are capped with U_15 pieces, entered through the up arm and
/// exited through the down arm.
fn piece_r43() -> Piece {
    let mut cells: Vec<Cell> = Vec::with_capacity(43);
    // Axis: head, up-arm center (root), U17 center, down-arm center, exit tail.
    cells.extend([Cell(0, 0, 1), Cell(0, 0, 0), Cell(0, 0, -1), Cell(0, 0, -2), Cell(0, 0, -3)]);
    // Perpendicular pairs of the up and down arm-crosses (normal to xz).
    cells.extend([Cell(0, 1, 0), Cell(0, -1, 0), Cell(0, 1, -2), Cell(0, -1, -2)]);
    // Side arm-crosses of the U17 at (±1, 0, -1).
    for sx in [1i64, -1] {
        cells.push(Cell(sx, 0, -1));
        cells.push(Cell(sx, 1, -1));
        cells.push(Cell(sx, -1, -1));
        cells.push(Cell(2 * sx, 0, -1));
        // U15 cap beyond the side outer cell (2sx, 0, -1): see `u15_cells`.
        for c in u15_cells() {
            // U15 frame port is toward -x; east side uses it as-is shifted,
            // west side mirrors x.
            let b = Cell(sx * (c.0 + 3), c.1, c.2 - 1);
            cells.push(b);
        }
    }
    cells.sort_unstable();
    cells.dedup();
    Piece { cells, exit: Some((Cell(0, 0, -2), Cell(0, 0, -3))) }
}

/// The 15-cell fully leafed piece U_15 in its local frame: port pair at
/// (-2,0,0) (direction leaf) and (-1,0,0) (root, degree 4), inner tree
/// 4 - 3 - {5, 5} with the degree-5 cells along ±y.
fn u15_cells() -> Vec<Cell> {
    let mut v = vec![
        Cell(-2, 0, 0),
        Cell(-1, 0, 0),
        Cell(-1, 0, 1),
        Cell(-1, 0, -1),
        Cell(0, 0, 0),
    ];
    for sy in [1i64, -1] {
        v.push(Cell(0, sy, 0));
        v.push(Cell(0, 2 * sy, 0));
        v.push(Cell(0, sy, 1));
        v.push(Cell(0, sy, -1));
        v.push(Cell(1, sy, 0));
    }
    v
}

/// The U_15 piece as a rooted polycube (root at the port bridge, direction
/// toward the port leaf).
pub fn u15_piece() -> RootedPolycube {
    let p = Polyform::new(LatticeKind::Cubic, u15_cells()).unwrap();
    RootedPolycube::new(p, Cell(-1, 0, 0), (-1, 0, 0)).unwrap()
}

/// The 17-cell 4-tree piece U_17: central 4-cross in the xy plane with a
/// perpendicular arm-cross on each arm.
pub fn u17_cells() -> Vec<Cell> {
    let mut v = vec![Cell(0, 0, 0)];
    for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
        v.push(Cell(dx, dy, 0));
        v.push(Cell(2 * dx, 2 * dy, 0));
        v.push(Cell(dx, dy, 1));
        v.push(Cell(dx, dy, -1));
    }
    v
}

fn indicator(b: bool) -> i64 {
    i64::from(b)
}

/// The indicator decomposition of k: quotient/remainder of (k-2)/41 and the
/// counts (a, b, c, d, e) of cap, single, double, triple and cap pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyDecomposition {
    pub q: i64,
    pub r: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
}

pub fn family_decomposition(k: i64) -> Result<FamilyDecomposition, GraftError> {
    if k < 2 {
        return Err(GraftError::FamilyIndexTooSmall(k));
    }
    let q = (k - 2) / 41;
    let r = (k - 2) % 41;
    let a = indicator(r >= 10);
    let e = indicator(r >= 26);
    let l = r - 10 * (a + e);
    let b = indicator(l % 3 == 1);
    let c = indicator(l % 3 == 2);
    let d = l / 3;
    debug_assert_eq!(10 * (a + e) + b + 2 * c + 3 * d, r);
    Ok(FamilyDecomposition { q, r, a, b, c, d, e })
}

/// The fully leafed polycube U_k: n = k cells and ell_cub(k) leaves.
///
/// Special shapes for k in {6, 7, 13, 19, 25} (star/bridge chains); all
/// other sizes are built as a graft chain of the pieces prescribed by the
/// indicator decomposition, rotating each successive piece 90 degrees about
/// the chain axis.
pub fn family_polycube(k: i64) -> Result<Polyform, GraftError> {
    if k < 2 {
        return Err(GraftError::FamilyIndexTooSmall(k));
    }
    match k {
        6 | 7 => return Ok(star_polycube(k as usize)),
        13 | 19 | 25 => return Ok(star_bridge_chain((k as usize - 1) / 6)),
        _ => {}
    }
    let d = family_decomposition(k)?;
    let mut seq: Vec<fn() -> Piece> = Vec::new();
    for _ in 0..d.a {
        seq.push(piece_r12_top);
    }
    for _ in 0..d.q {
        seq.push(piece_r43);
    }
    for _ in 0..d.b {
        seq.push(piece_r3);
    }
    for _ in 0..d.c {
        seq.push(piece_r4);
    }
    for _ in 0..d.d {
        seq.push(piece_r5);
    }
    for _ in 0..d.e {
        seq.push(piece_r12_bottom);
    }

    if seq.is_empty() {
        // U_2: the empty graft product is the domino.
        return Ok(Polyform::new(LatticeKind::Cubic, vec![Cell(0, 0, 0), Cell(0, 0, 1)]).unwrap());
    }

    let rho = lattice::cubic_rot90_z();
    let mut rotation = Isometry::identity(LatticeKind::Cubic);
    let mut cells: HashSet<Cell> = HashSet::new();
    // Tip pair (attach, tip): the next piece's head lands on `attach`, its
    // root on `tip`. Initialized one step above the first piece so that the
    // first piece's head cell becomes the surplus two-cell base.
    let mut attach = Cell(0, 0, 1);
    let mut tip = Cell(0, 0, 0);
    cells.insert(attach);
    cells.insert(tip);
    for (i, mk) in seq.iter().enumerate() {
        let piece = mk();
        if i == 0 && piece.exit.is_some() && piece.cells.iter().all(|&c| c != Cell(0, 0, 1)) {
            // Top cap carries no head: shift the frame so its root replaces
            // the initial tip. Drop the artificial base pair first.
            cells.clear();
        }
        let place = |c: Cell| -> Cell {
            let r = rotation.apply_unchecked(c);
            // Map frame root (origin) onto `tip`.
            Cell(r.0 + tip.0, r.1 + tip.1, r.2 + tip.2)
        };
        for &c in &piece.cells {
            cells.insert(place(c));
        }
        if let Some((a, t)) = piece.exit {
            attach = place(a);
            tip = place(t);
        }
        let _ = attach;
        rotation = rho.compose(&rotation);
    }
    let mut v: Vec<Cell> = cells.into_iter().collect();
    v.sort_unstable();
    Ok(Polyform::from_sorted_unchecked(LatticeKind::Cubic, v))
}

/// Star of `n` cells: a center plus n-1 of its neighbors.
fn star_polycube(n: usize) -> Polyform {
    assert!((2..=7).contains(&n));
    let mut cells = vec![Cell(0, 0, 0)];
    let nbrs = lattice::neighbors_unchecked(LatticeKind::Cubic, Cell(0, 0, 0));
    cells.extend(nbrs.into_iter().take(n - 1));
    Polyform::new(LatticeKind::Cubic, cells).unwrap()
}

/// Alternating full-star / bridge chain with `stars` degree-6 centers:
/// sizes 6 stars + (stars - 1) bridges + ... = 7 * stars - 1 cells... built
/// along the z axis: centers at z = 2i, bridges between.
fn star_bridge_chain(stars: usize) -> Polyform {
    let mut cells = Vec::new();
    for i in 0..stars {
        let z = 2 * i as i64;
        let c = Cell(0, 0, z);
        cells.push(c);
        cells.push(Cell(1, 0, z));
        cells.push(Cell(-1, 0, z));
        cells.push(Cell(0, 1, z));
        cells.push(Cell(0, -1, z));
        if i == 0 {
            cells.push(Cell(0, 0, -1));
        }
        if i + 1 == stars {
            cells.push(Cell(0, 0, z + 1));
        } else {
            cells.push(Cell(0, 0, z + 1)); // bridge to the next center
        }
    }
    Polyform::new(LatticeKind::Cubic, cells).unwrap()
}
