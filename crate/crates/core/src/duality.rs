//! The filling Dehn surface dual to a cubulation.
//!
//! Inside each cube the surface is the union of the three mid-squares; the
//! sheet surface is the quad complex obtained by gluing mid-squares across
//! the cube faces.

use std::fmt::{self, Write};

use crate::cells::{cube_edge_axis, cube_edge_index, face_slot, FACE_CORNERS};
use crate::cubulation::Cubulation;
use crate::error::PreconditionError;
use crate::polygon::{PolygonComplex, SurfaceComponent};
use crate::validate::validate_cubulation;

/// Triple points are the cubes; arcs are the face orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularGraph {
    pub nodes: usize,
    /// `(cube, face, cube, face)` per glued face pair.
    pub arcs: Vec<(usize, u8, usize, u8)>,
}

impl SingularGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.arcs
            .iter()
            .map(|&(a, _, b, _)| (a == node) as usize + (b == node) as usize)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheetSurface {
    pub components: Vec<SurfaceComponent>,
    pub square_count: usize,
    /// Corner orbits of the quad complex.
    pub vertex_count: usize,
}

impl SheetSurface {
    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }

    /// `chi:o|n:genus` per component, comma-separated.
    pub fn summary(&self) -> String {
        self.components
            .iter()
            .map(|c| {
                format!(
                    "{}:{}:{}",
                    c.euler,
                    if c.orientable { "o" } else { "n" },
                    c.genus()
                )
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnSurfaceReport {
    pub triple_points: usize,
    pub singular_graph: SingularGraph,
    /// Regions of the surface, one per cubulation edge.
    pub region_count: usize,
    /// Complementary balls, one per cubulation vertex.
    pub ball_count: usize,
    pub sheet: SheetSurface,
    /// `(genus, orientable, triple points)` when the sheet is connected: an
    /// upper bound for the triple point spectrum at that genus.
    pub spectrum_note: Option<(i64, bool, usize)>,
    /// The manifold is orientable but some sheet component is not.
    pub nonorientable_sheet_in_orientable: bool,
}

/// Corner `i` of the mid-square of `axis`: the cube edge parallel to `axis`
/// at position `(0,0), (1,0), (1,1), (0,1)` in the two remaining coordinates.
fn square_corner(axis: u8, i: usize) -> usize {
    let (b, c) = other_axes(axis);
    let (xb, xc) = [(0, 0), (1, 0), (1, 1), (0, 1)][i];
    let low = (xb << b) | (xc << c);
    cube_edge_index(low, low | (1 << axis))
}

fn other_axes(axis: u8) -> (u8, u8) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Cube face holding edge `j` of the mid-square of `axis`.
fn square_edge_face(axis: u8, j: usize) -> u8 {
    let (b, c) = other_axes(axis);
    let (a, side) = [(c, 0), (b, 1), (c, 1), (b, 0)][j];
    2 * a + side
}

pub(crate) fn sheet_complex(cub: &Cubulation) -> PolygonComplex {
    let edges = crate::cells::cube_edges();
    let mut pc = PolygonComplex::new();
    for _ in 0..3 * cub.cube_count() {
        pc.add_polygon(4);
    }
    // image of a cube edge lying on `face` of `cube` under that face's gluing
    let carry = |cube: usize, face: u8, edge: usize| -> (usize, usize) {
        let g = cub.gluing(cube, face);
        let (p, q) = edges[edge];
        let to = |c: u8| {
            let slot = face_slot(face, c).expect("edge lies on the face");
            FACE_CORNERS[g.face as usize][g.sym.apply(slot) as usize]
        };
        (g.cube, cube_edge_index(to(p), to(q)))
    };
    for k in 0..cub.cube_count() {
        for axis in 0..3u8 {
            for j in 0..4 {
                let face = square_edge_face(axis, j);
                let (e1, e2) = (square_corner(axis, j), square_corner(axis, (j + 1) % 4));
                let (m, f1) = carry(k, face, e1);
                let (_, f2) = carry(k, face, e2);
                let target_axis = cube_edge_axis(f1);
                let pos = |e: usize| {
                    (0..4)
                        .find(|&i| square_corner(target_axis, i) == e)
                        .expect("parallel edges")
                };
                let (i1, i2) = (pos(f1), pos(f2));
                let (edge, reversed) = if i2 == (i1 + 1) % 4 {
                    (i1, false)
                } else {
                    (i2, true)
                };
                pc.glue(
                    3 * k + axis as usize,
                    j,
                    3 * m + target_axis as usize,
                    edge,
                    reversed,
                );
            }
        }
    }
    pc
}

pub fn dual_dehn_surface(cub: &Cubulation) -> Result<DehnSurfaceReport, PreconditionError> {
    let report = validate_cubulation(cub);
    if cub.cube_count() > 0 && !report.is_closed_manifold {
        return Err(PreconditionError(format!(
            "not a closed 3-manifold: {}",
            report
                .failure_witness
                .map_or_else(|| "unknown".to_string(), |w| w.to_string())
        )));
    }
    let counts = cub.counts();
    let mut arcs = Vec::with_capacity(cub.face_count());
    for k in 0..cub.cube_count() {
        for f in 0..6u8 {
            let g = cub.gluing(k, f);
            if (k, f) < (g.cube, g.face) {
                arcs.push((k, f, g.cube, g.face));
            }
        }
    }
    let pc = sheet_complex(cub);
    let mut components = pc.components();
    components.sort();
    let sheet = SheetSurface {
        square_count: pc.polygon_count(),
        vertex_count: pc.vertex_count(),
        components,
    };
    let spectrum_note = match sheet.components.as_slice() {
        [only] => Some((only.genus(), only.orientable, cub.cube_count())),
        _ => None,
    };
    let nonorientable_sheet_in_orientable =
        cub.cube_count() > 0 && report.orientable && sheet.components.iter().any(|c| !c.orientable);
    Ok(DehnSurfaceReport {
        triple_points: cub.cube_count(),
        singular_graph: SingularGraph {
            nodes: cub.cube_count(),
            arcs,
        },
        region_count: counts.edges,
        ball_count: counts.vertices,
        sheet,
        spectrum_note,
        nonorientable_sheet_in_orientable,
    })
}

/// Checks `t = c`, `arcs = f = 3c`, `regions = e`, `balls = v`,
/// `v - e + f - c = 0` and `χ(S) = v - c`.
pub fn verify_duality_counts(cub: &Cubulation, r: &DehnSurfaceReport) -> bool {
    let k = cub.counts();
    let c = cub.cube_count();
    let chi_s = r.sheet.euler_characteristic();
    let regular = (0..r.singular_graph.nodes).all(|n| r.singular_graph.degree(n) == 6);
    r.triple_points == c
        && r.singular_graph.nodes == c
        && r.singular_graph.arcs.len() == 3 * c
        && k.faces == 3 * c
        && regular
        && r.region_count == k.edges
        && r.ball_count == k.vertices
        && r.sheet.square_count == 3 * c
        && k.euler_characteristic() == 0
        && chi_s == k.vertices as i64 - c as i64
        && chi_s == 3 * r.triple_points as i64 - 6 * c as i64 + r.region_count as i64
        && r.sheet.vertex_count == r.region_count
}

impl fmt::Display for DehnSurfaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "triple_points={}", self.triple_points);
        let _ = writeln!(s, "arcs={}", self.singular_graph.arcs.len());
        let _ = writeln!(s, "regions={}", self.region_count);
        let _ = writeln!(s, "balls={}", self.ball_count);
        let _ = writeln!(
            s,
            "sheet squares={} components={} chi={}",
            self.sheet.square_count,
            self.sheet.components.len(),
            self.sheet.euler_characteristic()
        );
        for (i, c) in self.sheet.components.iter().enumerate() {
            let _ = writeln!(
                s,
                "component {i}: chi={}, orientable={}, genus={}",
                c.euler,
                c.orientable,
                c.genus()
            );
        }
        if let Some((g, o, t)) = self.spectrum_note {
            let kind = if o { "orientable" } else { "nonorientable" };
            let _ = writeln!(
                s,
                "spectrum: {kind} genus {g} realized with {t} triple points"
            );
        }
        if self.nonorientable_sheet_in_orientable {
            let _ = writeln!(s, "note: non-orientable sheet in an orientable manifold");
        }
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::corner_bit;
    use crate::fixtures;

    #[test]
    fn square_geometry() {
        for axis in 0..3u8 {
            for j in 0..4 {
                let face = square_edge_face(axis, j);
                let (a, side) = (face / 2, face % 2);
                for e in [square_corner(axis, j), square_corner(axis, (j + 1) % 4)] {
                    let (p, q) = crate::cells::cube_edges()[e];
                    assert_eq!(corner_bit(p, a), side);
                    assert_eq!(corner_bit(q, a), side);
                }
            }
        }
    }

    #[test]
    fn coordinate_planes() {
        let cub = fixtures::coordinate_planes_sphere();
        let r = dual_dehn_surface(&cub).unwrap();
        assert_eq!(r.triple_points, 2);
        assert_eq!(r.sheet.components.len(), 3);
        for c in &r.sheet.components {
            assert_eq!((c.euler, c.orientable, c.genus()), (2, true, 0));
        }
        assert_eq!(r.sheet.euler_characteristic(), 6);
        assert!(verify_duality_counts(&cub, &r));
        assert_eq!(r.spectrum_note, None);
    }

    #[test]
    fn one_cube_torus() {
        let cub = fixtures::torus_one_cube();
        let r = dual_dehn_surface(&cub).unwrap();
        assert_eq!(r.sheet.square_count, 3);
        assert_eq!(r.sheet.components.len(), 3);
        for c in &r.sheet.components {
            assert_eq!((c.euler, c.orientable, c.genus()), (0, true, 1));
        }
        assert!(verify_duality_counts(&cub, &r));
    }

    #[test]
    fn fig5_and_perturbation() {
        let cub = fixtures::torus_two_cubes();
        let mut r = dual_dehn_surface(&cub).unwrap();
        assert_eq!(r.triple_points, 2);
        assert_eq!(r.sheet.euler_characteristic(), 0);
        assert_eq!(r.region_count, 6);
        assert!(verify_duality_counts(&cub, &r));
        r.region_count += 1;
        assert!(!verify_duality_counts(&cub, &r));
    }

    #[test]
    fn empty_is_vacuous() {
        let cub = Cubulation::empty();
        let r = dual_dehn_surface(&cub).unwrap();
        assert_eq!(r.triple_points, 0);
        assert!(r.sheet.components.is_empty());
        assert!(verify_duality_counts(&cub, &r));
    }
}
