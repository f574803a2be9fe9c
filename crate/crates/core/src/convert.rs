//! Conversions between triangulations and cubulations.
//!
//! Triangulation to cubulation: tetrahedron `t` is cut into the four cubes
//! `4t + i` around its vertices. In cube `4t + i`, with `j1 < j2 < j3` the
//! other vertices of the tetrahedron, the corner with bit set `B` is the
//! barycentre of the simplex `{i} ∪ {j_a : a ∈ B}`. Face `(a, 0)` lies on the
//! tetrahedron face opposite `j_a`; face `(a, 1)` is shared with the cube of
//! `j_a`.
//!
//! Cubulation to triangulation: a cube with parity bit `b` is cut into the
//! four corner tetrahedra at its corners of bit-sum parity `b` and one central
//! tetrahedron. Each face then carries the diagonal joining its two corners of
//! the other parity; where glued faces disagree, one tetrahedron is inserted
//! between the two triangulated squares.

use std::collections::HashMap;
use std::fmt;

use crate::cells::{face_slot, Corner, Dihedral, Perm4, FACE_CORNERS};
use crate::cubulation::{CubeGluing, Cubulation};
use crate::error::PreconditionError;
use crate::triangulation::{Triangulation, TriangulationBuilder};
use crate::validate::{validate_closed_3manifold, validate_cubulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Exhaustive,
    Greedy,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Greedy => "greedy",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(format!(
                "unknown strategy '{other}' (expected exhaustive or greedy)"
            )),
        }
    }
}

/// Largest cube count searched exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionStats {
    pub input_cells: usize,
    pub output_cells: usize,
    pub inserted_cells: usize,
    /// Strategy actually used; `None` for triangulation to cubulation.
    pub strategy: Option<Strategy>,
    pub orientation_vector: Vec<u8>,
}

impl fmt::Display for ConversionStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input_cells={} output_cells={} inserted_cells={}",
            self.input_cells, self.output_cells, self.inserted_cells
        )?;
        if let Some(s) = self.strategy {
            let bits: String = self
                .orientation_vector
                .iter()
                .map(|b| char::from(b'0' + b))
                .collect();
            write!(f, " strategy={s} parity={bits}")?;
        }
        Ok(())
    }
}

/// Vertex bitmask of the simplex at `corner` of the cube around `vertex`.
fn simplex_of(vertex: u8, corner: Corner) -> u8 {
    let others: Vec<u8> = (0..4).filter(|&j| j != vertex).collect();
    let mut mask = 1 << vertex;
    for (a, &j) in others.iter().enumerate() {
        if corner >> a & 1 == 1 {
            mask |= 1 << j;
        }
    }
    mask
}

/// Corner of the cube around `vertex` at the simplex `mask` (which contains `vertex`).
fn corner_of(vertex: u8, mask: u8) -> Corner {
    let others: Vec<u8> = (0..4).filter(|&j| j != vertex).collect();
    let mut corner = 0;
    for (a, &j) in others.iter().enumerate() {
        if mask >> j & 1 == 1 {
            corner |= 1 << a;
        }
    }
    corner
}

fn axis_of(vertex: u8, other: u8) -> u8 {
    (0..4u8)
        .filter(|&j| j != vertex)
        .position(|j| j == other)
        .expect("distinct vertices") as u8
}

fn map_mask(p: Perm4, mask: u8) -> u8 {
    (0..4u8)
        .filter(|&v| mask >> v & 1 == 1)
        .map(|v| 1 << p.apply(v))
        .sum()
}

/// Slot map between two faces given by a corner correspondence.
fn slot_map(from: u8, to: u8, corner_map: impl Fn(Corner) -> Corner) -> Dihedral {
    let map = FACE_CORNERS[from as usize]
        .map(|c| face_slot(to, corner_map(c)).expect("corner lands on the face"));
    Dihedral::from_slot_map(map).expect("face maps are dihedral")
}

pub fn triangulation_to_cubulation(
    tri: &Triangulation,
) -> Result<(Cubulation, ConversionStats), PreconditionError> {
    let report = validate_closed_3manifold(tri);
    if !report.is_closed_manifold {
        return Err(PreconditionError(format!(
            "not a closed 3-manifold: {}",
            report
                .failure_witness
                .map_or_else(|| "unknown".to_string(), |w| w.to_string())
        )));
    }
    let n = tri.tet_count();
    let mut rows = vec![[None; 6]; 4 * n];
    for t in 0..n {
        for i in 0..4u8 {
            let k = 4 * t + i as usize;
            let others: Vec<u8> = (0..4).filter(|&j| j != i).collect();
            for (a, &j) in others.iter().enumerate() {
                let a = a as u8;
                // internal face shared with the cube of j
                let back = axis_of(j, i);
                let sym = slot_map(2 * a + 1, 2 * back + 1, |c| corner_of(j, simplex_of(i, c)));
                rows[k][2 * a as usize + 1] = Some(CubeGluing {
                    cube: 4 * t + j as usize,
                    face: 2 * back + 1,
                    sym,
                });
                // external face on the tetrahedron face opposite j
                let g = tri.gluing(t, j).expect("closed triangulation");
                let (i2, j2) = (g.perm.apply(i), g.perm.apply(j));
                let axis2 = axis_of(i2, j2);
                let sym = slot_map(2 * a, 2 * axis2, |c| {
                    corner_of(i2, map_mask(g.perm, simplex_of(i, c)))
                });
                rows[k][2 * a as usize] = Some(CubeGluing {
                    cube: 4 * g.tet + i2 as usize,
                    face: 2 * axis2,
                    sym,
                });
            }
        }
    }
    let cub = Cubulation::new(rows).expect("subdivision gluings form an involution");
    let stats = ConversionStats {
        input_cells: n,
        output_cells: cub.cube_count(),
        inserted_cells: 0,
        strategy: None,
        orientation_vector: Vec::new(),
    };
    Ok((cub, stats))
}

fn parity(c: Corner) -> u8 {
    (c.count_ones() & 1) as u8
}

/// Diagonal used on `face` by a cube of parity `b`: 0 for slots {0, 2}, 1 for {1, 3}.
pub fn face_diagonal(face: u8, b: u8) -> u8 {
    if parity(FACE_CORNERS[face as usize][0]) == 1 - b {
        0
    } else {
        1
    }
}

/// One entry per glued face pair `(k, f) <= (m, g)`.
fn face_pairs(cub: &Cubulation) -> Vec<(usize, u8, CubeGluing)> {
    let mut out = Vec::new();
    for k in 0..cub.cube_count() {
        for f in 0..6u8 {
            let g = cub.gluing(k, f);
            if (k, f) < (g.cube, g.face) {
                out.push((k, f, g));
            }
        }
    }
    out
}

fn mismatched(k: usize, f: u8, g: &CubeGluing, bits: &[u8]) -> bool {
    face_diagonal(f, bits[k]) ^ (g.sym.code() & 1) != face_diagonal(g.face, bits[g.cube])
}

/// Number of tetrahedra inserted for a parity vector.
pub fn insertion_count(cub: &Cubulation, bits: &[u8]) -> usize {
    face_pairs(cub)
        .iter()
        .filter(|(k, f, g)| mismatched(*k, *f, g, bits))
        .count()
}

fn exhaustive_parity(cub: &Cubulation) -> Vec<u8> {
    let c = cub.cube_count();
    let pairs = face_pairs(cub);
    let mut bits = vec![0u8; c];
    let mut best = (usize::MAX, 0u64);
    // vector (b_0, .., b_{c-1}) read as a binary number with b_0 most significant
    for v in 0..1u64 << c {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = (v >> (c - 1 - i) & 1) as u8;
        }
        let cost = pairs
            .iter()
            .filter(|(k, f, g)| mismatched(*k, *f, g, &bits))
            .count();
        if cost < best.0 {
            best = (cost, v);
            if cost == 0 {
                break;
            }
        }
    }
    (0..c).map(|i| (best.1 >> (c - 1 - i) & 1) as u8).collect()
}

fn greedy_parity(cub: &Cubulation) -> Vec<u8> {
    let mut bits = vec![0u8; cub.cube_count()];
    let mut cost = insertion_count(cub, &bits);
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..bits.len() {
            bits[i] ^= 1;
            let c = insertion_count(cub, &bits);
            bits[i] ^= 1;
            if c < cost && best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, i));
            }
        }
        match best {
            Some((c, i)) => {
                bits[i] ^= 1;
                cost = c;
            }
            None => return bits,
        }
    }
}

pub fn cubulation_to_triangulation(
    cub: &Cubulation,
    strategy: Strategy,
) -> Result<(Triangulation, ConversionStats), PreconditionError> {
    let report = validate_cubulation(cub);
    if !report.is_closed_manifold {
        return Err(PreconditionError(format!(
            "not a closed 3-manifold: {}",
            report
                .failure_witness
                .map_or_else(|| "unknown".to_string(), |w| w.to_string())
        )));
    }
    let used = if strategy == Strategy::Exhaustive && cub.cube_count() > EXHAUSTIVE_LIMIT {
        Strategy::Greedy
    } else {
        strategy
    };
    let bits = match used {
        Strategy::Exhaustive => exhaustive_parity(cub),
        Strategy::Greedy => greedy_parity(cub),
    };
    let tri = triangulate_with_parity(cub, &bits);
    let c = cub.cube_count();
    let stats = ConversionStats {
        input_cells: c,
        output_cells: tri.tet_count(),
        inserted_cells: tri.tet_count() - 5 * c,
        strategy: Some(used),
        orientation_vector: bits,
    };
    Ok((tri, stats))
}

/// Vertex corners of the five tetrahedra of a cube with parity `b`.
fn cube_tets(b: u8) -> [[Corner; 4]; 5] {
    let mut out = [[0; 4]; 5];
    let apexes: Vec<Corner> = (0..8).filter(|&x| parity(x) == b).collect();
    for (j, &x) in apexes.iter().enumerate() {
        out[j] = [x, x ^ 1, x ^ 2, x ^ 4];
    }
    let mut centre = [0; 4];
    for (slot, x) in (0..8).filter(|&x| parity(x) != b).enumerate() {
        centre[slot] = x;
    }
    out[4] = centre;
    out
}

fn sorted3(mut v: [Corner; 3]) -> [Corner; 3] {
    v.sort_unstable();
    v
}

fn face_without(tet: &[Corner; 4], v: usize) -> [Corner; 3] {
    let mut out = [0; 3];
    let mut i = 0;
    for (w, &c) in tet.iter().enumerate() {
        if w != v {
            out[i] = c;
            i += 1;
        }
    }
    out
}

/// Vertex bijection gluing face `fa` of a tetrahedron with vertices `a` onto
/// face `fb` of one with vertices `b`, through the point map `to`.
fn perm_between<P: PartialEq + Copy, Q: PartialEq + Copy>(
    a: &[P; 4],
    fa: u8,
    b: &[Q; 4],
    fb: u8,
    to: impl Fn(P) -> Q,
) -> Perm4 {
    let mut img = [0u8; 4];
    for v in 0..4u8 {
        img[v as usize] = if v == fa {
            fb
        } else {
            let q = to(a[v as usize]);
            b.iter().position(|&x| x == q).expect("matching triangle") as u8
        };
    }
    Perm4::from_images(img).expect("vertex correspondence is a bijection")
}

pub fn triangulate_with_parity(cub: &Cubulation, bits: &[u8]) -> Triangulation {
    let c = cub.cube_count();
    let pairs = face_pairs(cub);
    let inserted = pairs
        .iter()
        .filter(|(k, f, g)| mismatched(*k, *f, g, bits))
        .count();
    let mut b = TriangulationBuilder::new(5 * c + inserted);
    let tets: Vec<[[Corner; 4]; 5]> = bits.iter().map(|&p| cube_tets(p)).collect();

    // triangles on cube faces, keyed by their sorted corners
    let mut boundary: Vec<HashMap<[Corner; 3], (usize, u8)>> = vec![HashMap::new(); c];
    for k in 0..c {
        let mut internal: HashMap<[Corner; 3], (usize, u8)> = HashMap::new();
        for (j, tet) in tets[k].iter().enumerate() {
            for v in 0..4u8 {
                let tri = face_without(tet, v as usize);
                let on_face = (0..3).any(|a| tri.iter().all(|&x| x >> a & 1 == tri[0] >> a & 1));
                let key = sorted3(tri);
                if on_face {
                    boundary[k].insert(key, (5 * k + j, v));
                } else if let Some((t2, v2)) = internal.remove(&key) {
                    let j2 = t2 - 5 * k;
                    let perm = perm_between(&tets[k][j2], v2, tet, v, |x| x);
                    b.join(t2, v2, 5 * k + j, perm)
                        .expect("internal faces pair up");
                } else {
                    internal.insert(key, (5 * k + j, v));
                }
            }
        }
        debug_assert!(internal.is_empty());
    }

    let vertices = |t: usize| tets[t / 5][t % 5];
    let mut next = 5 * c;
    for (k, f, g) in pairs {
        let m = g.cube;
        let to_m = |x: Corner| {
            let s = face_slot(f, x).expect("corner on the face");
            FACE_CORNERS[g.face as usize][g.sym.apply(s) as usize]
        };
        let apexes = |cube: usize, face: u8| {
            FACE_CORNERS[face as usize]
                .iter()
                .filter(|&&x| parity(x) == bits[cube])
                .copied()
                .collect::<Vec<_>>()
        };
        if !mismatched(k, f, &g, bits) {
            for x in apexes(k, f) {
                let s = face_slot(f, x).expect("apex on face");
                let tri = [s + 3, s, s + 1].map(|i| FACE_CORNERS[f as usize][(i & 3) as usize]);
                let (ta, va) = boundary[k][&sorted3(tri)];
                let (tb, vb) = boundary[m][&sorted3(tri.map(to_m))];
                let perm = perm_between(&vertices(ta), va, &vertices(tb), vb, to_m);
                b.join(ta, va, tb, perm).expect("matched triangles pair up");
            }
            continue;
        }
        // inserted tetrahedron: vertex i is slot i of face f
        let ins = next;
        next += 1;
        let slots: [u8; 4] = [0, 1, 2, 3];
        let k_diag = face_diagonal(f, bits[k]);
        for opposite in 0..4u8 {
            // faces opposite 1 and 3 contain the diagonal {0, 2}
            let diag = opposite & 1 ^ 1;
            let tri = face_without(&slots, opposite as usize);
            let (cube, key, to) = if diag == k_diag {
                (k, tri.map(|i| FACE_CORNERS[f as usize][i as usize]), None)
            } else {
                (
                    m,
                    tri.map(|i| FACE_CORNERS[g.face as usize][g.sym.apply(i) as usize]),
                    Some(g),
                )
            };
            let (t, v) = boundary[cube][&sorted3(key)];
            let perm = perm_between(&slots, opposite, &vertices(t), v, |i: u8| match to {
                None => FACE_CORNERS[f as usize][i as usize],
                Some(g) => FACE_CORNERS[g.face as usize][g.sym.apply(i) as usize],
            });
            b.join(ins, opposite, t, perm)
                .expect("inserted tetrahedron faces are fresh");
        }
    }
    b.build().expect("conversion yields a closed triangulation")
}
