//! Small complexes shipped with the crate; the text lives under `fixtures/`.

use crate::cubulation::Cubulation;
use crate::format::{parse_cubulation, parse_triangulation};
use crate::triangulation::Triangulation;

pub const FIG5_TORUS: &str = include_str!("../fixtures/fig5_torus.cub");
pub const TORUS_ONE_CUBE: &str = include_str!("../fixtures/torus_one_cube.cub");
pub const PLANES_S3: &str = include_str!("../fixtures/planes_s3.cub");
pub const KLEIN_S1: &str = include_str!("../fixtures/klein_s1.cub");
pub const S3_TWO_TETS: &str = include_str!("../fixtures/s3_two_tets.tri");
pub const TREFOIL: &str = include_str!("../fixtures/trefoil.gauss");
pub const UNKNOT: &str = include_str!("../fixtures/unknot.gauss");
pub const UNKNOT_PLUS1: &str = include_str!("../fixtures/unknot_plus1.gauss");

/// Two cubes stacked along z, every face pair glued by translation: the 3-torus.
pub fn torus_two_cubes() -> Cubulation {
    parse_cubulation(FIG5_TORUS).expect("shipped fixture parses")
}

pub fn torus_one_cube() -> Cubulation {
    parse_cubulation(TORUS_ONE_CUBE).expect("shipped fixture parses")
}

/// The cubulation of S^3 dual to the three coordinate planes.
pub fn coordinate_planes_sphere() -> Cubulation {
    parse_cubulation(PLANES_S3).expect("shipped fixture parses")
}

/// A one-cube cubulation of the trivial circle bundle over the Klein bottle.
pub fn klein_bottle_times_circle() -> Cubulation {
    parse_cubulation(KLEIN_S1).expect("shipped fixture parses")
}

pub fn two_tet_sphere() -> Triangulation {
    parse_triangulation(S3_TWO_TETS).expect("shipped fixture parses")
}
