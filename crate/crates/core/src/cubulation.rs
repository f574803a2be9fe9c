use std::collections::VecDeque;

use crate::cells::{cube_edge_index, Corner, CubeSymmetry, Dihedral, FACE_CORNERS};
use crate::dsu::Dsu;
use crate::error::GluingError;
use crate::validate::CellCensusCounts;

/// Gluing of one cube face onto another by a dihedral map of corner-slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeGluing {
    pub cube: usize,
    pub face: u8,
    pub sym: Dihedral,
}

/// A cubulation: cubes whose six faces are all glued in pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cubulation {
    gluings: Vec<[CubeGluing; 6]>,
}

pub(crate) type PartialRows = [[Option<CubeGluing>; 6]];

impl Cubulation {
    pub fn empty() -> Cubulation {
        Cubulation::default()
    }

    /// Validates a (possibly incomplete) gluing table; every slot must end up glued.
    pub fn new(rows: Vec<[Option<CubeGluing>; 6]>) -> Result<Cubulation, GluingError> {
        check_partial(&rows)?;
        let mut gluings = Vec::with_capacity(rows.len());
        for (k, row) in rows.iter().enumerate() {
            let mut out = [CubeGluing {
                cube: 0,
                face: 0,
                sym: Dihedral::IDENTITY,
            }; 6];
            for f in 0..6 {
                out[f] = row[f].ok_or(GluingError::Unglued {
                    cell: k,
                    slot: f as u8,
                })?;
            }
            gluings.push(out);
        }
        Ok(Cubulation { gluings })
    }

    pub fn from_rows(rows: Vec<[CubeGluing; 6]>) -> Result<Cubulation, GluingError> {
        Cubulation::new(rows.into_iter().map(|r| r.map(Some)).collect())
    }

    pub fn cube_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn face_count(&self) -> usize {
        3 * self.cube_count()
    }

    pub fn gluing(&self, cube: usize, face: u8) -> CubeGluing {
        self.gluings[cube][face as usize]
    }

    pub fn rows(&self) -> &[[CubeGluing; 6]] {
        &self.gluings
    }

    pub(crate) fn partial_rows(&self) -> Vec<[Option<CubeGluing>; 6]> {
        self.gluings.iter().map(|r| r.map(Some)).collect()
    }

    /// Corner of the target cube that corner-slot `slot` of `face` is glued to.
    pub fn glued_corner(&self, cube: usize, face: u8, slot: u8) -> (usize, Corner) {
        let g = self.gluing(cube, face);
        (
            g.cube,
            FACE_CORNERS[g.face as usize][g.sym.apply(slot) as usize],
        )
    }

    /// Some face of a cube is glued to another face of the same cube.
    pub fn has_self_adjacency(&self) -> bool {
        self.gluings
            .iter()
            .enumerate()
            .any(|(k, row)| row.iter().any(|g| g.cube == k))
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = Dsu::new(self.cube_count());
        for (k, row) in self.gluings.iter().enumerate() {
            for g in row {
                dsu.union(k, g.cube);
            }
        }
        dsu.count()
    }

    /// Orbit counts `(v, e, f, c)` of corners, edges, faces and cubes.
    pub fn counts(&self) -> CellCensusCounts {
        let rows = self.partial_rows();
        let (_, vertices) = corner_classes(&rows);
        let orbits = edge_orbits(&rows);
        CellCensusCounts {
            vertices,
            edges: orbits.count,
            faces: self.face_count(),
            cells: self.cube_count(),
        }
    }

    /// Renames cube `k` to `order[k]` and re-expresses it through `frames[k]`.
    pub fn relabeled(&self, order: &[usize], frames: &[CubeSymmetry]) -> Cubulation {
        let n = self.cube_count();
        let mut rows = vec![[None; 6]; n];
        for k in 0..n {
            for f in 0..6u8 {
                let g = self.gluing(k, f);
                let sym = frames[g.cube]
                    .slot_map(g.face)
                    .compose(g.sym)
                    .compose(frames[k].slot_map(f).inverse());
                rows[order[k]][frames[k].face(f) as usize] = Some(CubeGluing {
                    cube: order[g.cube],
                    face: frames[g.cube].face(g.face),
                    sym,
                });
            }
        }
        Cubulation::new(rows).expect("relabelling preserves the involution")
    }
}

/// Involution and self-gluing checks on a table that may contain open slots.
pub(crate) fn check_partial(rows: &PartialRows) -> Result<(), GluingError> {
    let n = rows.len();
    for (k, row) in rows.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            let f = f as u8;
            let Some(g) = g else { continue };
            if g.cube >= n {
                return Err(GluingError::TargetOutOfRange {
                    cell: k,
                    slot: f,
                    target: g.cube,
                    count: n,
                });
            }
            if g.cube == k && g.face == f {
                return Err(GluingError::SelfGlued { cell: k, slot: f });
            }
            let back = rows[g.cube][g.face as usize];
            let ok = back.is_some_and(|b| b.cube == k && b.face == f && b.sym == g.sym.inverse());
            if !ok {
                return Err(GluingError::NotInvolution {
                    cell: k,
                    slot: f,
                    target: g.cube,
                    target_slot: g.face,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn corner_classes(rows: &PartialRows) -> (Vec<usize>, usize) {
    let mut dsu = Dsu::new(8 * rows.len());
    for (k, row) in rows.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            let Some(g) = g else { continue };
            for slot in 0..4u8 {
                let here = FACE_CORNERS[f][slot as usize];
                let there = FACE_CORNERS[g.face as usize][g.sym.apply(slot) as usize];
                dsu.union(8 * k + here as usize, 8 * g.cube + there as usize);
            }
        }
    }
    dsu.classes()
}

/// Orbits of cube-edge slots under the face gluings.
pub(crate) struct EdgeOrbits {
    pub count: usize,
    /// Some edge class is identified with itself in reverse.
    pub reversed: bool,
}

pub(crate) fn edge_orbits(rows: &PartialRows) -> EdgeOrbits {
    let n = rows.len();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); 12 * n];
    for (k, row) in rows.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            let Some(g) = g else { continue };
            let here = FACE_CORNERS[f];
            let there = FACE_CORNERS[g.face as usize];
            for i in 0..4u8 {
                let (p, q) = (here[i as usize], here[((i + 1) & 3) as usize]);
                let p2 = there[g.sym.apply(i) as usize];
                let q2 = there[g.sym.apply((i + 1) & 3) as usize];
                // true when low->high orientation is preserved
                let same = (p < q) == (p2 < q2);
                adj[12 * k + cube_edge_index(p, q)]
                    .push((12 * g.cube + cube_edge_index(p2, q2), same));
            }
        }
    }
    let mut class_of = vec![usize::MAX; 12 * n];
    let mut orient = vec![false; 12 * n];
    let mut count = 0;
    let mut reversed = false;
    let mut queue = VecDeque::new();
    for start in 0..12 * n {
        if class_of[start] != usize::MAX {
            continue;
        }
        class_of[start] = count;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &(y, same) in &adj[x] {
                let want = orient[x] ^ !same;
                if class_of[y] == usize::MAX {
                    class_of[y] = count;
                    orient[y] = want;
                    queue.push_back(y);
                } else if orient[y] != want {
                    reversed = true;
                }
            }
        }
        count += 1;
    }
    EdgeOrbits { count, reversed }
}
