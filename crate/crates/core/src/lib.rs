pub mod bounds;
pub mod canon;
pub mod cells;
pub mod census;
pub mod cli;
pub mod convert;
pub mod cubulation;
mod dsu;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod homology;
pub mod loops2d;
pub mod polygon;
pub mod subdivide;
pub mod triangulation;
pub mod validate;
