//! Fixed labelling conventions for tetrahedra and cubes.
//!
//! Cube corners are bit-triples `(x, y, z)` packed as `x | y << 1 | z << 2`.
//! Faces are numbered `0 = x-`, `1 = x+`, `2 = y-`, `3 = y+`, `4 = z-`,
//! `5 = z+`. The four corner-slots of a face are listed counterclockwise as
//! seen from outside the cube, starting at the face corner with the smallest
//! bit-triple. A face gluing is a dihedral bijection of those slots.

use std::fmt;
use std::sync::OnceLock;

/// A permutation of the tetrahedron vertex labels `{0, 1, 2, 3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

fn all_perm4() -> &'static [Perm4; 24] {
    static ALL: OnceLock<[Perm4; 24]> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut out = [Perm4([0, 1, 2, 3]); 24];
        let mut k = 0;
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        let img = [a, b, c, d];
                        let mut seen = [false; 4];
                        if img
                            .iter()
                            .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
                        {
                            out[k] = Perm4(img);
                            k += 1;
                        }
                    }
                }
            }
        }
        out
    })
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);
    /// Exchanges labels 0 and 1.
    pub const SWAP01: Perm4 = Perm4([1, 0, 2, 3]);

    /// Builds a permutation from its one-line notation.
    pub fn from_images(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    /// The permutation at position `index` in lexicographic order of one-line notation.
    pub fn from_index(index: usize) -> Option<Perm4> {
        all_perm4().get(index).copied()
    }

    pub fn index(self) -> usize {
        all_perm4()
            .binary_search(&self)
            .expect("every Perm4 appears in the enumeration")
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        all_perm4().iter().copied()
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([0, 1, 2, 3].map(|i| self.apply(other.apply(i))))
    }

    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Sign of the permutation as `+1` / `-1`.
    pub fn sign(self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Perm4({}{}{}{})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Edges of a tetrahedron as vertex pairs; the edge index is the position in this table.
pub const TET_EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn tet_edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    TET_EDGES
        .iter()
        .position(|&e| e == (a, b))
        .expect("distinct tetrahedron vertices")
}

/// Vertices of the tetrahedron face opposite `face`, in increasing order.
pub fn tet_face_vertices(face: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != face {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// A dihedral bijection of the four corner-slots of a square face.
///
/// Code `r` in `0..4` is the cyclic shift `i -> (i + r) mod 4`; code `4 + r`
/// is the reversal `i -> (r - i) mod 4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Dihedral(u8);

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral(0);

    pub fn new(code: u8) -> Option<Dihedral> {
        (code < 8).then_some(Dihedral(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Dihedral> {
        (0..8).map(Dihedral)
    }

    #[inline]
    pub fn apply(self, slot: u8) -> u8 {
        let r = self.0 & 3;
        if self.0 < 4 {
            (slot + r) & 3
        } else {
            (r + 4 - slot) & 3
        }
    }

    pub fn is_reversal(self) -> bool {
        self.0 >= 4
    }

    pub fn inverse(self) -> Dihedral {
        if self.0 < 4 {
            Dihedral((4 - self.0) & 3)
        } else {
            self
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Dihedral) -> Dihedral {
        let map = [0, 1, 2, 3].map(|i| self.apply(other.apply(i)));
        Dihedral::from_slot_map(map).expect("dihedral maps are closed under composition")
    }

    pub fn from_slot_map(map: [u8; 4]) -> Option<Dihedral> {
        Dihedral::all().find(|d| [0u8, 1, 2, 3].map(|i| d.apply(i)) == map)
    }

    /// Whether the map exchanges the two diagonals `{0, 2}` and `{1, 3}`.
    pub fn swaps_diagonals(self) -> bool {
        self.0 & 1 == 1
    }
}

pub type Corner = u8;

pub const FACE_COUNT: usize = 6;

/// Corner-slots of each cube face (see module docs for the convention).
pub const FACE_CORNERS: [[Corner; 4]; 6] = [
    [0, 4, 6, 2],
    [1, 3, 7, 5],
    [0, 1, 5, 4],
    [2, 6, 7, 3],
    [0, 2, 3, 1],
    [4, 5, 7, 6],
];

#[inline]
pub fn face_axis(face: u8) -> u8 {
    face >> 1
}

#[inline]
pub fn face_side(face: u8) -> u8 {
    face & 1
}

#[inline]
pub fn corner_bit(corner: Corner, axis: u8) -> u8 {
    (corner >> axis) & 1
}

/// Slot of `corner` within `face`, if it lies on that face.
pub fn face_slot(face: u8, corner: Corner) -> Option<u8> {
    FACE_CORNERS[face as usize]
        .iter()
        .position(|&c| c == corner)
        .map(|p| p as u8)
}

/// Cube edges as corner pairs `(low, high)`, twelve of them, grouped by axis.
pub fn cube_edges() -> &'static [(Corner, Corner); 12] {
    static EDGES: OnceLock<[(Corner, Corner); 12]> = OnceLock::new();
    EDGES.get_or_init(|| {
        let mut out = [(0, 0); 12];
        let mut k = 0;
        for axis in 0..3u8 {
            for c in 0..8u8 {
                if corner_bit(c, axis) == 0 {
                    out[k] = (c, c | (1 << axis));
                    k += 1;
                }
            }
        }
        out
    })
}

pub fn cube_edge_index(a: Corner, b: Corner) -> usize {
    let key = if a < b { (a, b) } else { (b, a) };
    cube_edges()
        .iter()
        .position(|&e| e == key)
        .expect("corners must span a cube edge")
}

pub fn cube_edge_axis(edge: usize) -> u8 {
    (edge / 4) as u8
}

/// One of the 48 symmetries of the cube, stored as its action on corners.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CubeSymmetry {
    corners: [Corner; 8],
    faces: [u8; 6],
    /// For each source face, the dihedral slot map onto the image face.
    slot_maps: [Dihedral; 6],
}

impl CubeSymmetry {
    fn from_axes(perm: [u8; 3], mask: u8) -> CubeSymmetry {
        let mut corners = [0u8; 8];
        for (c, out) in corners.iter_mut().enumerate() {
            let mut img = 0u8;
            for a in 0..3u8 {
                let bit = corner_bit(c as u8, a) ^ ((mask >> a) & 1);
                img |= bit << perm[a as usize];
            }
            *out = img;
        }
        let mut faces = [0u8; 6];
        let mut slot_maps = [Dihedral::IDENTITY; 6];
        for f in 0..6u8 {
            let a = face_axis(f);
            let side = face_side(f) ^ ((mask >> a) & 1);
            let g = perm[a as usize] * 2 + side;
            faces[f as usize] = g;
            let map = FACE_CORNERS[f as usize].map(|c| {
                face_slot(g, corners[c as usize]).expect("symmetry maps faces onto faces")
            });
            slot_maps[f as usize] =
                Dihedral::from_slot_map(map).expect("cube symmetries act dihedrally on faces");
        }
        CubeSymmetry {
            corners,
            faces,
            slot_maps,
        }
    }

    pub fn all() -> &'static [CubeSymmetry] {
        static ALL: OnceLock<Vec<CubeSymmetry>> = OnceLock::new();
        ALL.get_or_init(|| {
            let perms = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            let mut out = Vec::with_capacity(48);
            for p in perms {
                for mask in 0..8 {
                    out.push(CubeSymmetry::from_axes(p, mask));
                }
            }
            out
        })
    }

    pub fn identity() -> CubeSymmetry {
        CubeSymmetry::all()[0]
    }

    pub fn corner(&self, c: Corner) -> Corner {
        self.corners[c as usize]
    }

    pub fn face(&self, f: u8) -> u8 {
        self.faces[f as usize]
    }

    /// Slot map from face `f` onto face `self.face(f)`.
    pub fn slot_map(&self, f: u8) -> Dihedral {
        self.slot_maps[f as usize]
    }

    /// The unique symmetry sending face `from` onto face `to` with the given slot map.
    pub fn carrying(from: u8, to: u8, map: Dihedral) -> CubeSymmetry {
        *CubeSymmetry::all()
            .iter()
            .find(|g| g.face(from) == to && g.slot_map(from) == map)
            .expect("the cube group acts simply transitively on (face, slot map) pairs")
    }

    pub fn index(&self) -> usize {
        CubeSymmetry::all()
            .iter()
            .position(|g| g == self)
            .expect("symmetry is enumerated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(c: Corner) -> [i32; 3] {
        [0, 1, 2].map(|a| corner_bit(c, a) as i32)
    }

    fn sub(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    fn cross(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    #[test]
    fn face_slots_are_counterclockwise_from_outside() {
        for f in 0..6u8 {
            let axis = face_axis(f) as usize;
            let mut normal = [0; 3];
            normal[axis] = if face_side(f) == 1 { 1 } else { -1 };
            let cs = FACE_CORNERS[f as usize];
            assert_eq!(cs[0], *cs.iter().min().unwrap());
            for i in 0..4 {
                let p0 = coords(cs[i]);
                let p1 = coords(cs[(i + 1) % 4]);
                let p2 = coords(cs[(i + 2) % 4]);
                let n = cross(sub(p1, p0), sub(p2, p1));
                let dot: i32 = (0..3).map(|k| n[k] * normal[k]).sum();
                assert!(dot > 0, "face {f} slot {i}");
                assert_eq!(corner_bit(cs[i], axis as u8), face_side(f));
            }
        }
    }

    #[test]
    fn dihedral_group_laws() {
        for a in Dihedral::all() {
            assert_eq!(a.compose(a.inverse()), Dihedral::IDENTITY);
            for b in Dihedral::all() {
                for c in Dihedral::all() {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        assert_eq!(Dihedral::new(4).unwrap().apply(1), 3);
        assert_eq!(Dihedral::new(1).unwrap().apply(3), 0);
    }

    #[test]
    fn perm4_enumeration_is_lexicographic() {
        let all: Vec<_> = Perm4::all().collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Perm4::IDENTITY);
        assert_eq!(all[23].images(), [3, 2, 1, 0]);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
        }
        assert_eq!(Perm4::all().filter(|p| p.is_even()).count(), 12);
    }

    #[test]
    fn cube_group_has_48_distinct_elements() {
        let all = CubeSymmetry::all();
        assert_eq!(all.len(), 48);
        for (i, g) in all.iter().enumerate() {
            for h in &all[i + 1..] {
                assert_ne!(g.corners, h.corners);
            }
        }
        assert_eq!(CubeSymmetry::identity().corners, [0, 1, 2, 3, 4, 5, 6, 7]);
        for f in 0..6 {
            for to in 0..6 {
                for d in Dihedral::all() {
                    let g = CubeSymmetry::carrying(f, to, d);
                    assert_eq!((g.face(f), g.slot_map(f)), (to, d));
                }
            }
        }
    }

    #[test]
    fn cube_edges_cover_each_axis_four_times() {
        let edges = cube_edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            assert_eq!((a ^ b).count_ones(), 1);
            assert_eq!(1 << cube_edge_axis(i), a ^ b);
            assert_eq!(cube_edge_index(b, a), i);
        }
    }
}
