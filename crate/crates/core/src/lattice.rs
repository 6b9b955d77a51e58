//! The four regular lattices: cells, adjacency, point isometry groups.
//!
//! Cells are stored as integer triples. The interpretation depends on the
//! lattice: square `(x, y, 0)`, hex axial `(q, r, 0)`, triangular `(x, y, o)`
//! with orientation `o ∈ {0, 1}` (0 = upward triangle), cubic `(x, y, z)`.
//!
//! Triangular isometries act on scaled centroid coordinates
//! `(3x+1+o, 3y+1+o)`, where the twelve hexagonal point-group matrices
//! permute the two centroid classes mod 3. This keeps every linear part an
//! integer 2x2/3x3 matrix and makes adjacency preservation checkable.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::LatticeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Hex,
    Tri,
    Cubic,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 4] = [
        LatticeKind::Square,
        LatticeKind::Hex,
        LatticeKind::Tri,
        LatticeKind::Cubic,
    ];

    /// Number of neighbors of every cell.
    pub fn coordination(self) -> usize {
        match self {
            LatticeKind::Square => 4,
            LatticeKind::Hex => 6,
            LatticeKind::Tri => 3,
            LatticeKind::Cubic => 6,
        }
    }

    /// Order of the point group.
    pub fn group_order(self) -> usize {
        match self {
            LatticeKind::Square => 8,
            LatticeKind::Hex => 12,
            LatticeKind::Tri => 12,
            LatticeKind::Cubic => 48,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Square => "square",
            LatticeKind::Hex => "hex",
            LatticeKind::Tri => "tri",
            LatticeKind::Cubic => "cubic",
        }
    }

    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        match s {
            "square" => Ok(LatticeKind::Square),
            "hex" => Ok(LatticeKind::Hex),
            "tri" => Ok(LatticeKind::Tri),
            "cubic" => Ok(LatticeKind::Cubic),
            _ => Err(LatticeError::UnknownLattice(s.to_string())),
        }
    }

    pub fn is_2d(self) -> bool {
        !matches!(self, LatticeKind::Cubic)
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A lattice site. Component meaning depends on the lattice kind; unused
/// components are zero. Lexicographic order on `(a, b, c)` is the canonical
/// cell order (orientation bit last for Tri).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell(pub i64, pub i64, pub i64);

impl Cell {
    #[inline]
    pub fn offset(self, d: (i64, i64, i64)) -> Cell {
        Cell(self.0 + d.0, self.1 + d.1, self.2 + d.2)
    }

    /// Validity of the raw coordinates for a lattice.
    pub fn is_valid(self, kind: LatticeKind) -> bool {
        match kind {
            LatticeKind::Square | LatticeKind::Hex => self.2 == 0,
            LatticeKind::Tri => self.2 == 0 || self.2 == 1,
            LatticeKind::Cubic => true,
        }
    }
}

const SQUARE_OFFSETS: [(i64, i64, i64); 4] = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)];
const HEX_OFFSETS: [(i64, i64, i64); 6] = [
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 0),
    (0, -1, 0),
    (1, -1, 0),
    (-1, 1, 0),
];
const CUBIC_OFFSETS: [(i64, i64, i64); 6] = [
    (1, 0, 0),
    (-1, 0, 0),
    (0, 1, 0),
    (0, -1, 0),
    (0, 0, 1),
    (0, 0, -1),
];

/// Neighbors of `c` in lattice `kind`. Errors on malformed cells
/// (Tri orientation outside {0,1}, nonzero unused components).
pub fn neighbors(kind: LatticeKind, c: Cell) -> Result<Vec<Cell>, LatticeError> {
    if !c.is_valid(kind) {
        return Err(LatticeError::InvalidCell { kind, cell: (c.0, c.1, c.2) });
    }
    Ok(neighbors_unchecked(kind, c))
}

/// Like [`neighbors`] but assumes the cell is valid. Hot path for enumeration.
#[inline]
pub fn neighbors_unchecked(kind: LatticeKind, c: Cell) -> Vec<Cell> {
    match kind {
        LatticeKind::Square => SQUARE_OFFSETS.iter().map(|&d| c.offset(d)).collect(),
        LatticeKind::Hex => HEX_OFFSETS.iter().map(|&d| c.offset(d)).collect(),
        LatticeKind::Cubic => CUBIC_OFFSETS.iter().map(|&d| c.offset(d)).collect(),
        LatticeKind::Tri => {
            let Cell(x, y, o) = c;
            if o == 0 {
                vec![Cell(x, y, 1), Cell(x - 1, y, 1), Cell(x, y - 1, 1)]
            } else {
                vec![Cell(x, y, 0), Cell(x + 1, y, 0), Cell(x, y + 1, 0)]
            }
        }
    }
}

#[inline]
pub fn are_adjacent(kind: LatticeKind, a: Cell, b: Cell) -> bool {
    match kind {
        LatticeKind::Square => {
            let (dx, dy) = (a.0 - b.0, a.1 - b.1);
            dx.abs() + dy.abs() == 1
        }
        LatticeKind::Cubic => {
            let (dx, dy, dz) = (a.0 - b.0, a.1 - b.1, a.2 - b.2);
            dx.abs() + dy.abs() + dz.abs() == 1
        }
        LatticeKind::Hex => {
            let (dq, dr) = (a.0 - b.0, a.1 - b.1);
            matches!((dq, dr), (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1))
        }
        LatticeKind::Tri => {
            if a.2 == b.2 {
                return false;
            }
            let (u, d) = if a.2 == 0 { (a, b) } else { (b, a) };
            let (dx, dy) = (d.0 - u.0, d.1 - u.1);
            matches!((dx, dy), (0, 0) | (-1, 0) | (0, -1))
        }
    }
}

/// A lattice point isometry: integer linear part plus integer translation.
///
/// For Tri the matrix acts on scaled centroid coordinates; for the other
/// lattices it acts on the raw coordinates. Translations for Tri are in cell
/// coordinates (orientation is never changed by a translation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub kind: LatticeKind,
    /// Row-major 3x3 integer matrix; 2D lattices use the top-left 2x2 block.
    pub linear: [[i64; 3]; 3],
    pub translation: (i64, i64, i64),
}

impl Isometry {
    pub fn identity(kind: LatticeKind) -> Isometry {
        Isometry {
            kind,
            linear: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            translation: (0, 0, 0),
        }
    }

    fn from_2x2(kind: LatticeKind, m: [[i64; 2]; 2]) -> Isometry {
        Isometry {
            kind,
            linear: [[m[0][0], m[0][1], 0], [m[1][0], m[1][1], 0], [0, 0, 1]],
            translation: (0, 0, 0),
        }
    }

    fn mat_apply(&self, v: (i64, i64, i64)) -> (i64, i64, i64) {
        let m = &self.linear;
        (
            m[0][0] * v.0 + m[0][1] * v.1 + m[0][2] * v.2,
            m[1][0] * v.0 + m[1][1] * v.1 + m[1][2] * v.2,
            m[2][0] * v.0 + m[2][1] * v.1 + m[2][2] * v.2,
        )
    }

    /// Apply to a cell. Errors if the cell does not belong to this isometry's
    /// lattice.
    pub fn apply(&self, c: Cell) -> Result<Cell, LatticeError> {
        if !c.is_valid(self.kind) {
            return Err(LatticeError::InvalidCell { kind: self.kind, cell: (c.0, c.1, c.2) });
        }
        Ok(self.apply_unchecked(c))
    }

    #[inline]
    pub fn apply_unchecked(&self, c: Cell) -> Cell {
        let t = self.translation;
        match self.kind {
            LatticeKind::Square | LatticeKind::Hex | LatticeKind::Cubic => {
                let v = self.mat_apply((c.0, c.1, c.2));
                Cell(v.0 + t.0, v.1 + t.1, v.2 + t.2)
            }
            LatticeKind::Tri => {
                // Scaled centroid coordinates: (3x+1+o, 3y+1+o).
                let u = 3 * c.0 + 1 + c.2;
                let v = 3 * c.1 + 1 + c.2;
                let (u2, v2, _) = self.mat_apply((u, v, 0));
                // Image class is (1,1) or (2,2) mod 3; recover (x, y, o).
                let o2 = (u2 - 1).rem_euclid(3);
                debug_assert!(o2 == 0 || o2 == 1, "tri isometry left centroid lattice");
                let x2 = (u2 - 1 - o2) / 3;
                let y2 = (v2 - 1 - o2) / 3;
                Cell(x2 + t.0, y2 + t.1, o2)
            }
        }
    }

    /// Compose: apply `other` first, then `self`. Both linear parts only
    /// (translations compose through the matrix).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.kind, other.kind);
        let mut m = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for (k, row) in other.linear.iter().enumerate() {
                    m[i][j] += self.linear[i][k] * row[j];
                }
            }
        }
        let t = self.mat_apply(other.translation);
        Isometry {
            kind: self.kind,
            linear: m,
            translation: (t.0 + self.translation.0, t.1 + self.translation.1, t.2 + self.translation.2),
        }
    }
}

/// The full point group of a lattice (linear parts only).
///
/// Square: dihedral of order 8. Hex/Tri: dihedral of order 12 acting on axial
/// (resp. centroid) coordinates. Cubic: all 48 signed permutations.
pub fn isometry_group(kind: LatticeKind) -> Vec<Isometry> {
    match kind {
        LatticeKind::Square => {
            let mut out = Vec::with_capacity(8);
            // Signed permutation matrices of Z^2.
            for &swap in &[false, true] {
                for &sx in &[1i64, -1] {
                    for &sy in &[1i64, -1] {
                        let m = if swap { [[0, sx], [sy, 0]] } else { [[sx, 0], [0, sy]] };
                        out.push(Isometry::from_2x2(kind, m));
                    }
                }
            }
            out
        }
        LatticeKind::Hex | LatticeKind::Tri => {
            // rot60 in axial/centroid coordinates, reflection swaps the axes.
            let rot = [[0, -1], [1, 1]];
            let refl = [[0, 1], [1, 0]];
            let mut out = Vec::with_capacity(12);
            let mut r = Isometry::identity(kind);
            let rot = Isometry::from_2x2(kind, rot);
            let refl = Isometry::from_2x2(kind, refl);
            for _ in 0..6 {
                out.push(r);
                out.push(r.compose(&refl));
                r = r.compose(&rot);
            }
            out
        }
        LatticeKind::Cubic => {
            let mut out = Vec::with_capacity(48);
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for p in perms {
                for signs in 0..8 {
                    let mut m = [[0i64; 3]; 3];
                    for (i, &src) in p.iter().enumerate() {
                        m[i][src] = if (signs >> i) & 1 == 1 { -1 } else { 1 };
                    }
                    out.push(Isometry { kind, linear: m, translation: (0, 0, 0) });
                }
            }
            out
        }
    }
}

/// Rotation by 90 degrees about the +z axis of the cubic lattice, mapping
/// +x to +y. Used by the graft chain's rho rule.
pub fn cubic_rot90_z() -> Isometry {
    Isometry {
        kind: LatticeKind::Cubic,
        linear: [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
        translation: (0, 0, 0),
    }
}

/// The 8 cubic isometries fixing the +z axis (stabilizer of a direction).
pub fn cubic_z_stabilizer() -> Vec<Isometry> {
    isometry_group(LatticeKind::Cubic)
        .into_iter()
        .filter(|iso| iso.mat_apply((0, 0, 1)) == (0, 0, 1))
        .collect()
}

/// Map an arbitrary unit direction to an isometry sending it to +z.
pub fn cubic_rotation_to_z(dir: (i64, i64, i64)) -> Isometry {
    for iso in isometry_group(LatticeKind::Cubic) {
        if iso.mat_apply(dir) == (0, 0, 1) {
            return iso;
        }
    }
    unreachable!("direction {:?} is not a unit vector", dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn coordination_numbers() {
        assert_eq!(LatticeKind::Square.coordination(), 4);
        assert_eq!(LatticeKind::Hex.coordination(), 6);
        assert_eq!(LatticeKind::Tri.coordination(), 3);
        assert_eq!(LatticeKind::Cubic.coordination(), 6);
    }

    #[test]
    fn square_neighbors_of_origin() {
        let n: HashSet<_> = neighbors(LatticeKind::Square, Cell(0, 0, 0)).unwrap().into_iter().collect();
        let expect: HashSet<_> =
            [Cell(1, 0, 0), Cell(-1, 0, 0), Cell(0, 1, 0), Cell(0, -1, 0)].into_iter().collect();
        assert_eq!(n, expect);
    }

    #[test]
    fn cubic_neighbors_are_unit_vectors() {
        let n = neighbors(LatticeKind::Cubic, Cell(0, 0, 0)).unwrap();
        assert_eq!(n.len(), 6);
        for c in n {
            assert_eq!(c.0.abs() + c.1.abs() + c.2.abs(), 1);
        }
    }

    #[test]
    fn tri_neighbors_flip_orientation() {
        let n = neighbors(LatticeKind::Tri, Cell(0, 0, 0)).unwrap();
        assert_eq!(n.len(), 3);
        assert!(n.iter().all(|c| c.2 == 1));
    }

    #[test]
    fn tri_invalid_orientation_rejected() {
        assert!(neighbors(LatticeKind::Tri, Cell(0, 0, 2)).is_err());
    }

    #[test]
    fn neighbor_relation_symmetric_on_patch() {
        for kind in LatticeKind::ALL {
            let zrange: Vec<i64> = match kind {
                LatticeKind::Cubic => (-2..=2).collect(),
                LatticeKind::Tri => vec![0, 1],
                _ => vec![0],
            };
            for x in -5..=5i64 {
                for y in -5..=5i64 {
                    for &z in &zrange {
                        let c = Cell(x, y, z);
                        for n in neighbors(kind, c).unwrap() {
                            assert!(
                                neighbors(kind, n).unwrap().contains(&c),
                                "{kind}: {c:?} <-> {n:?}"
                            );
                            assert!(are_adjacent(kind, c, n));
                            assert!(are_adjacent(kind, n, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn neighbors_distinct_and_exclude_self() {
        for kind in LatticeKind::ALL {
            let c = Cell(3, -2, if kind == LatticeKind::Tri { 1 } else { 0 });
            let n = neighbors(kind, c).unwrap();
            let set: HashSet<_> = n.iter().collect();
            assert_eq!(set.len(), kind.coordination());
            assert!(!set.contains(&c));
        }
    }

    #[test]
    fn group_orders() {
        for kind in LatticeKind::ALL {
            assert_eq!(isometry_group(kind).len(), kind.group_order(), "{kind}");
        }
    }

    #[test]
    fn group_closed_under_composition() {
        for kind in LatticeKind::ALL {
            let g = isometry_group(kind);
            let set: HashSet<[[i64; 3]; 3]> = g.iter().map(|i| i.linear).collect();
            assert!(set.contains(&Isometry::identity(kind).linear));
            for a in &g {
                for b in &g {
                    assert!(set.contains(&a.compose(b).linear), "{kind} not closed");
                }
            }
        }
    }

    #[test]
    fn identity_fixes_cells() {
        let id = Isometry::identity(LatticeKind::Square);
        assert_eq!(id.apply(Cell(3, 5, 0)).unwrap(), Cell(3, 5, 0));
    }

    #[test]
    fn square_rot90() {
        // Rotation mapping (1,0) to (0,1).
        let rot = Isometry::from_2x2(LatticeKind::Square, [[0, -1], [1, 0]]);
        assert_eq!(rot.apply(Cell(1, 0, 0)).unwrap(), Cell(0, 1, 0));
        assert!(isometry_group(LatticeKind::Square).iter().any(|i| i.linear == rot.linear));
    }

    #[test]
    fn isometries_preserve_adjacency_on_patch() {
        for kind in LatticeKind::ALL {
            let zrange: Vec<i64> = match kind {
                LatticeKind::Cubic => (-2..=2).collect(),
                LatticeKind::Tri => vec![0, 1],
                _ => vec![0],
            };
            let mut pairs = Vec::new();
            for x in -3..=3i64 {
                for y in -3..=3i64 {
                    for &z in &zrange {
                        let c = Cell(x, y, z);
                        for n in neighbors_unchecked(kind, c) {
                            pairs.push((c, n));
                        }
                    }
                }
            }
            for iso in isometry_group(kind) {
                for &(a, b) in &pairs {
                    let (ia, ib) = (iso.apply_unchecked(a), iso.apply_unchecked(b));
                    assert!(are_adjacent(kind, ia, ib), "{kind}: {a:?},{b:?} -> {ia:?},{ib:?}");
                }
            }
        }
    }

    #[test]
    fn tri_reflection_consistent_orientation() {
        // Any group element maps up-triangles consistently: check one
        // reflection maps adjacent pairs to adjacent pairs with flipped or
        // preserved orientation uniformly.
        let g = isometry_group(LatticeKind::Tri);
        for iso in &g {
            let im0 = iso.apply(Cell(0, 0, 0)).unwrap();
            // All up-cells map to cells of the same orientation as im0.
            for x in -3..=3i64 {
                for y in -3..=3 {
                    assert_eq!(iso.apply(Cell(x, y, 0)).unwrap().2, im0.2);
                }
            }
        }
    }

    #[test]
    fn z_stabilizer_has_8_elements() {
        assert_eq!(cubic_z_stabilizer().len(), 8);
    }
}
