//! Subdivisions: cubes into 24 coned tetrahedra, and barycentric subdivision
//! of a triangulation.

use crate::cells::{Perm4, FACE_CORNERS};
use crate::cubulation::Cubulation;
use crate::triangulation::{Triangulation, TriangulationBuilder};

const SWAP01: Perm4 = Perm4::SWAP01;

/// Index of the cone tetrahedron over the face-edge `slot -> slot + 1` of `face`.
#[inline]
pub fn cone_tet(cube: usize, face: u8, slot: u8) -> usize {
    24 * cube + 4 * face as usize + slot as usize
}

/// Cones every face from its centre over its four edges, then the cube
/// boundary from the cube centre: 24 tetrahedra per cube.
///
/// Tetrahedron `cone_tet(k, f, i)` has vertices `0 = slot i of f`,
/// `1 = slot i + 1 of f`, `2 = centre of f`, `3 = centre of cube k`.
pub fn cone_subdivision(cub: &Cubulation) -> Triangulation {
    let mut b = TriangulationBuilder::new(24 * cub.cube_count());
    for k in 0..cub.cube_count() {
        for f in 0..6u8 {
            for i in 0..4u8 {
                let t = cone_tet(k, f, i);
                let next = (i + 1) & 3;
                if !b.is_glued(t, 0) {
                    b.join(t, 0, cone_tet(k, f, next), SWAP01)
                        .expect("fresh slots inside a cube");
                }
                if !b.is_glued(t, 2) {
                    let (a, c) = (
                        FACE_CORNERS[f as usize][i as usize],
                        FACE_CORNERS[f as usize][next as usize],
                    );
                    let (other, perm) = (0..6u8)
                        .filter(|&g| g != f)
                        .find_map(|g| {
                            let cs = FACE_CORNERS[g as usize];
                            (0..4u8).find_map(|j| {
                                let (p, q) = (cs[j as usize], cs[((j + 1) & 3) as usize]);
                                if (p, q) == (a, c) {
                                    Some((cone_tet(k, g, j), Perm4::IDENTITY))
                                } else if (p, q) == (c, a) {
                                    Some((cone_tet(k, g, j), SWAP01))
                                } else {
                                    None
                                }
                            })
                        })
                        .expect("every cube edge lies on two faces");
                    b.join(t, 2, other, perm)
                        .expect("fresh slots inside a cube");
                }
                if !b.is_glued(t, 3) {
                    let g = cub.gluing(k, f);
                    let (j0, j1) = (g.sym.apply(i), g.sym.apply(next));
                    let (other, perm) = if g.sym.is_reversal() {
                        (cone_tet(g.cube, g.face, j1), SWAP01)
                    } else {
                        (cone_tet(g.cube, g.face, j0), Perm4::IDENTITY)
                    };
                    b.join(t, 3, other, perm)
                        .expect("cube face gluings form an involution");
                }
            }
        }
    }
    b.build().expect("cone subdivision is a valid gluing")
}

/// Barycentric subdivision: tetrahedron `t` becomes the 24 flag simplices
/// `24 t + π`, where new vertex `k` is the barycentre of `{π(0), .., π(k)}`.
pub fn barycentric_subdivision(tri: &Triangulation) -> Triangulation {
    let mut b = TriangulationBuilder::new(24 * tri.tet_count());
    let flag = |t: usize, pi: Perm4| 24 * t + pi.index();
    for t in 0..tri.tet_count() {
        for pi in Perm4::all() {
            let here = flag(t, pi);
            for k in 0..3u8 {
                if !b.is_glued(here, k) {
                    let mut img = pi.images();
                    img.swap(k as usize, k as usize + 1);
                    let other = flag(t, Perm4::from_images(img).expect("swap of a permutation"));
                    b.join(here, k, other, Perm4::IDENTITY)
                        .expect("fresh slots inside a tetrahedron");
                }
            }
            if !b.is_glued(here, 3) {
                if let Some(g) = tri.gluing(t, pi.apply(3)) {
                    b.join(here, 3, flag(g.tet, g.perm.compose(pi)), Perm4::IDENTITY)
                        .expect("face gluings form an involution");
                }
            }
        }
    }
    b.build()
        .expect("barycentric subdivision is a valid gluing")
}
