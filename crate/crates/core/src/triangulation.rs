use std::collections::VecDeque;

use crate::cells::{tet_edge_index, tet_face_vertices, Perm4};
use crate::dsu::Dsu;
use crate::error::GluingError;
use crate::validate::CellCensusCounts;

/// Gluing of one tetrahedron face onto another.
///
/// `perm` maps every vertex label of the source tetrahedron to a label of
/// the target, and sends the source face onto `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TetGluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm4,
}

/// A generalized triangulation: tetrahedra with face-slots glued in pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Triangulation {
    gluings: Vec<[Option<TetGluing>; 4]>,
}

impl Triangulation {
    pub fn empty() -> Triangulation {
        Triangulation::default()
    }

    /// Checks the involution invariants and wraps the gluing table.
    pub fn new(gluings: Vec<[Option<TetGluing>; 4]>) -> Result<Triangulation, GluingError> {
        let n = gluings.len();
        for (t, row) in gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                let f = f as u8;
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(GluingError::TargetOutOfRange {
                        cell: t,
                        slot: f,
                        target: g.tet,
                        count: n,
                    });
                }
                if g.face > 3 || g.perm.apply(f) != g.face {
                    return Err(GluingError::FaceMismatch {
                        cell: t,
                        slot: f,
                        target_slot: g.face,
                        perm: g.perm.to_string(),
                    });
                }
                if g.tet == t && g.face == f {
                    return Err(GluingError::SelfGlued { cell: t, slot: f });
                }
                let back = gluings[g.tet][g.face as usize];
                let ok =
                    back.is_some_and(|b| b.tet == t && b.face == f && b.perm == g.perm.inverse());
                if !ok {
                    return Err(GluingError::NotInvolution {
                        cell: t,
                        slot: f,
                        target: g.tet,
                        target_slot: g.face,
                    });
                }
            }
        }
        Ok(Triangulation { gluings })
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<TetGluing> {
        self.gluings[tet][face as usize]
    }

    pub fn rows(&self) -> &[[Option<TetGluing>; 4]] {
        &self.gluings
    }

    pub fn is_closed(&self) -> bool {
        self.gluings
            .iter()
            .all(|row| row.iter().all(Option::is_some))
    }

    /// Applies a relabelling: tetrahedron `t` becomes `order[t]`, with its
    /// vertex labels renamed by `frames[t]`.
    pub fn relabeled(&self, order: &[usize], frames: &[Perm4]) -> Triangulation {
        let n = self.tet_count();
        let mut out = vec![[None; 4]; n];
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = self.gluing(t, f) {
                    let perm = frames[g.tet].compose(g.perm).compose(frames[t].inverse());
                    out[order[t]][frames[t].apply(f) as usize] = Some(TetGluing {
                        tet: order[g.tet],
                        face: frames[g.tet].apply(g.face),
                        perm,
                    });
                }
            }
        }
        Triangulation::new(out).expect("relabelling preserves the involution")
    }

    /// Orbit counts of vertices, edges, faces and tetrahedra.
    pub fn counts(&self) -> CellCensusCounts {
        let sk = Skeleton::build(self);
        CellCensusCounts {
            vertices: sk.vertex_count,
            edges: sk.edge_count,
            faces: sk.face_count,
            cells: self.tet_count(),
        }
    }

    /// Union-find over tetrahedra adjacency; returns component count.
    pub fn component_count(&self) -> usize {
        let mut dsu = Dsu::new(self.tet_count());
        for (t, row) in self.gluings.iter().enumerate() {
            for g in row.iter().flatten() {
                dsu.union(t, g.tet);
            }
        }
        dsu.count()
    }
}

/// Incrementally assembles a triangulation from two-sided joins.
#[derive(Clone, Debug)]
pub struct TriangulationBuilder {
    gluings: Vec<[Option<TetGluing>; 4]>,
}

impl TriangulationBuilder {
    pub fn new(tets: usize) -> TriangulationBuilder {
        TriangulationBuilder {
            gluings: vec![[None; 4]; tets],
        }
    }

    pub fn add_tet(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_glued(&self, tet: usize, face: u8) -> bool {
        self.gluings[tet][face as usize].is_some()
    }

    /// Glues face `face` of `tet` to `other` via `perm`, both directions.
    pub fn join(
        &mut self,
        tet: usize,
        face: u8,
        other: usize,
        perm: Perm4,
    ) -> Result<(), GluingError> {
        let target_face = perm.apply(face);
        if other == tet && target_face == face {
            return Err(GluingError::SelfGlued {
                cell: tet,
                slot: face,
            });
        }
        if self.is_glued(tet, face) || self.is_glued(other, target_face) {
            return Err(GluingError::NotInvolution {
                cell: tet,
                slot: face,
                target: other,
                target_slot: target_face,
            });
        }
        self.gluings[tet][face as usize] = Some(TetGluing {
            tet: other,
            face: target_face,
            perm,
        });
        self.gluings[other][target_face as usize] = Some(TetGluing {
            tet,
            face,
            perm: perm.inverse(),
        });
        Ok(())
    }

    pub fn build(self) -> Result<Triangulation, GluingError> {
        Triangulation::new(self.gluings)
    }
}

/// Orbit classes of the skeleta of a triangulation, with orientation signs
/// of each face-slot and edge-slot relative to its class representative.
#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    pub vertex_of: Vec<usize>,
    pub vertex_count: usize,
    pub edge_of: Vec<usize>,
    pub edge_sign: Vec<i32>,
    pub edge_count: usize,
    /// Edge classes identified with themselves in reverse.
    pub reversed_edges: Vec<usize>,
    pub face_of: Vec<usize>,
    pub face_sign: Vec<i32>,
    pub face_count: usize,
}

impl Skeleton {
    pub fn build(tri: &Triangulation) -> Skeleton {
        let n = tri.tet_count();

        let mut vdsu = Dsu::new(4 * n);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    for v in tet_face_vertices(f) {
                        vdsu.union(4 * t + v as usize, 4 * g.tet + g.perm.apply(v) as usize);
                    }
                }
            }
        }
        let (vertex_of, vertex_count) = vdsu.classes();

        // Edge slots linked through face gluings, carrying orientation signs.
        let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); 6 * n];
        for t in 0..n {
            for f in 0..4u8 {
                let Some(g) = tri.gluing(t, f) else { continue };
                let [a, b, c] = tet_face_vertices(f);
                for (x, y) in [(a, b), (a, c), (b, c)] {
                    let (px, py) = (g.perm.apply(x), g.perm.apply(y));
                    let sign = if px < py { 1 } else { -1 };
                    adj[6 * t + tet_edge_index(x, y)]
                        .push((6 * g.tet + tet_edge_index(px, py), sign));
                }
            }
        }
        let mut edge_of = vec![usize::MAX; 6 * n];
        let mut edge_sign = vec![0; 6 * n];
        let mut edge_count = 0;
        let mut reversed_edges = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..6 * n {
            if edge_of[start] != usize::MAX {
                continue;
            }
            let class = edge_count;
            edge_count += 1;
            edge_of[start] = class;
            edge_sign[start] = 1;
            queue.push_back(start);
            let mut broken = false;
            while let Some(x) = queue.pop_front() {
                for &(y, s) in &adj[x] {
                    let want = edge_sign[x] * s;
                    if edge_of[y] == usize::MAX {
                        edge_of[y] = class;
                        edge_sign[y] = want;
                        queue.push_back(y);
                    } else if edge_sign[y] != want {
                        broken = true;
                    }
                }
            }
            if broken {
                reversed_edges.push(class);
            }
        }

        let mut face_of = vec![usize::MAX; 4 * n];
        let mut face_sign = vec![0; 4 * n];
        let mut face_count = 0;
        for t in 0..n {
            for f in 0..4u8 {
                let slot = 4 * t + f as usize;
                if face_of[slot] != usize::MAX {
                    continue;
                }
                face_of[slot] = face_count;
                face_sign[slot] = 1;
                if let Some(g) = tri.gluing(t, f) {
                    let other = 4 * g.tet + g.face as usize;
                    let images = tet_face_vertices(f).map(|v| g.perm.apply(v));
                    face_of[other] = face_count;
                    face_sign[other] = ordering_sign(images);
                }
                face_count += 1;
            }
        }

        Skeleton {
            vertex_of,
            vertex_count,
            edge_of,
            edge_sign,
            edge_count,
            reversed_edges,
            face_of,
            face_sign,
            face_count,
        }
    }

    pub fn vertex(&self, tet: usize, v: u8) -> usize {
        self.vertex_of[4 * tet + v as usize]
    }

    /// Class and sign of the edge `a -> b` of `tet`.
    pub fn edge(&self, tet: usize, a: u8, b: u8) -> (usize, i32) {
        let slot = 6 * tet + tet_edge_index(a, b);
        let dir = if a < b { 1 } else { -1 };
        (self.edge_of[slot], self.edge_sign[slot] * dir)
    }

    pub fn face(&self, tet: usize, f: u8) -> (usize, i32) {
        let slot = 4 * tet + f as usize;
        (self.face_of[slot], self.face_sign[slot])
    }
}

/// Sign of the permutation sorting three distinct values.
fn ordering_sign(v: [u8; 3]) -> i32 {
    let mut inv = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
