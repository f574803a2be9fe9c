//! Closed 3-manifold recognition for triangulations and cubulations.
//!
//! A complex with every face glued is a pseudo-manifold when no edge is
//! identified with itself in reverse; then every edge link is a single
//! cycle and every vertex link is a closed surface. It is a closed manifold
//! when additionally every vertex link has Euler characteristic 2.

use std::collections::VecDeque;
use std::fmt;

use crate::cells::tet_face_vertices;
use crate::cubulation::Cubulation;
use crate::dsu::Dsu;
use crate::subdivide::{barycentric_subdivision, cone_subdivision};
use crate::triangulation::{Skeleton, Triangulation};

/// Orbit counts: vertices, edges, faces and top-dimensional cells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CellCensusCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
}

impl CellCensusCounts {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.cells as i64
    }
}

impl fmt::Display for CellCensusCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v={} e={} f={} c={}",
            self.vertices, self.edges, self.faces, self.cells
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Empty,
    UngluedFace { tet: usize, face: u8 },
    ReversedEdge { edge_class: usize },
    VertexLink { vertex_class: usize, euler: i64 },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Empty => write!(f, "empty complex"),
            Failure::UngluedFace { tet, face } => write!(f, "face {tet}:{face} is unglued"),
            Failure::ReversedEdge { edge_class } => write!(
                f,
                "edge class {edge_class} is identified with itself in reverse; its link is not a cycle"
            ),
            Failure::VertexLink { vertex_class, euler } => write!(
                f,
                "link of vertex class {vertex_class} has Euler characteristic {euler}, not a 2-sphere"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldReport {
    pub is_pseudo_manifold: bool,
    pub is_closed_manifold: bool,
    /// Only meaningful when `is_closed_manifold`.
    pub orientable: bool,
    pub counts: CellCensusCounts,
    pub components: usize,
    pub failure_witness: Option<Failure>,
}

impl ManifoldReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.counts.euler_characteristic()
    }
}

pub fn validate_closed_3manifold(tri: &Triangulation) -> ManifoldReport {
    let counts = tri.counts();
    let mut report = ManifoldReport {
        is_pseudo_manifold: false,
        is_closed_manifold: false,
        orientable: false,
        counts,
        components: tri.component_count(),
        failure_witness: None,
    };
    if tri.tet_count() == 0 {
        report.failure_witness = Some(Failure::Empty);
        return report;
    }
    for t in 0..tri.tet_count() {
        for f in 0..4u8 {
            if tri.gluing(t, f).is_none() {
                report.failure_witness = Some(Failure::UngluedFace { tet: t, face: f });
                return report;
            }
        }
    }
    let sk = Skeleton::build(tri);
    if let Some(&edge_class) = sk.reversed_edges.first() {
        report.failure_witness = Some(Failure::ReversedEdge { edge_class });
        return report;
    }
    report.is_pseudo_manifold = true;
    report.orientable = orientability(tri);

    let euler = vertex_link_euler(tri, &sk);
    if let Some((vertex_class, &e)) = euler.iter().enumerate().find(|(_, &e)| e != 2) {
        report.failure_witness = Some(Failure::VertexLink {
            vertex_class,
            euler: e,
        });
        return report;
    }
    report.is_closed_manifold = true;
    report
}

/// Euler characteristic of the link of each vertex class.
///
/// The link of a vertex is assembled from one triangle per tetrahedron
/// corner; link vertices are edge-ends, link edges are face-corners.
fn vertex_link_euler(tri: &Triangulation, sk: &Skeleton) -> Vec<i64> {
    let n = tri.tet_count();
    // edge-end (t, at, towards): 12 per tetrahedron
    let end = |t: usize, at: u8, towards: u8| {
        12 * t + 3 * at as usize + (towards - (towards > at) as u8) as usize
    };
    let mut ends = Dsu::new(12 * n);
    for t in 0..n {
        for f in 0..4u8 {
            let g = tri.gluing(t, f).expect("closed complex");
            let vs = tet_face_vertices(f);
            for &a in &vs {
                for &b in &vs {
                    if a != b {
                        ends.union(end(t, a, b), end(g.tet, g.perm.apply(a), g.perm.apply(b)));
                    }
                }
            }
        }
    }
    let mut triangles = vec![0i64; sk.vertex_count];
    for t in 0..n {
        for v in 0..4u8 {
            triangles[sk.vertex(t, v)] += 1;
        }
    }
    let mut link_vertices = vec![0i64; sk.vertex_count];
    let (class_of, count) = ends.classes();
    let mut seen = vec![false; count];
    for t in 0..n {
        for at in 0..4u8 {
            for towards in (0..4u8).filter(|&b| b != at) {
                let c = class_of[end(t, at, towards)];
                if !std::mem::replace(&mut seen[c], true) {
                    link_vertices[sk.vertex(t, at)] += 1;
                }
            }
        }
    }
    (0..sk.vertex_count)
        .map(|v| link_vertices[v] - 3 * triangles[v] / 2 + triangles[v])
        .collect()
}

/// True when the tetrahedra admit orientations agreeing across every glued
/// face. A gluing is orientation-compatible between equally oriented
/// tetrahedra exactly when its vertex bijection is odd.
pub fn orientability(tri: &Triangulation) -> bool {
    let n = tri.tet_count();
    let mut sign = vec![0i32; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        queue.push_back(start);
        while let Some(t) = queue.pop_front() {
            for g in tri.rows()[t].iter().flatten() {
                let want = -sign[t] * g.perm.sign();
                if sign[g.tet] == 0 {
                    sign[g.tet] = want;
                    queue.push_back(g.tet);
                } else if sign[g.tet] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Validates a cubulation through its cone subdivision, refined once more
/// barycentrically when some cube is glued to itself. Counts are those of
/// the cubulation.
pub fn validate_cubulation(cub: &Cubulation) -> ManifoldReport {
    let cone = cone_subdivision(cub);
    let tri = if cub.has_self_adjacency() {
        barycentric_subdivision(&cone)
    } else {
        cone
    };
    let mut report = validate_closed_3manifold(&tri);
    report.counts = cub.counts();
    report.components = cub.component_count();
    if report.is_closed_manifold {
        debug_assert_eq!(
            report.counts.edges,
            report.counts.vertices + 2 * cub.cube_count()
        );
    }
    report
}

/// Cube-level test equivalent to `validate_cubulation(..).is_closed_manifold`
/// for non-empty cubulations: no edge identified with itself in reverse and
/// Euler characteristic zero (which, for a closed pseudo-manifold, forces
/// every vertex link to be a sphere).
pub fn cubulation_is_closed_manifold(cub: &Cubulation) -> bool {
    if cub.cube_count() == 0 {
        return false;
    }
    let rows = cub.partial_rows();
    let orbits = crate::cubulation::edge_orbits(&rows);
    !orbits.reversed && cub.counts().euler_characteristic() == 0
}
