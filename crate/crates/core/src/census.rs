//! Census of connected closed cubulations with a fixed number of cubes.

use std::fmt::Write;

use crate::canon::{
    canonical_form, canonical_signature, glue_to_cubulation, orderly, Glue, Partial, Scheme,
};
use crate::cubulation::{edge_orbits, CubeGluing, Cubulation};
use crate::duality::{dual_dehn_surface, verify_duality_counts};
use crate::error::{ParseError, PreconditionError};
use crate::format::{cube_row_tokens, parse_cubulation};
use crate::homology::{cubulation_homology, HomologyProfile};
use crate::polygon::SurfaceComponent;
use crate::validate::{cubulation_is_closed_manifold, validate_cubulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub signature: String,
    pub cube_count: usize,
    /// The representative whose gluing table is the signature stream.
    pub cubulation: Cubulation,
    pub orientable: bool,
    pub homology: HomologyProfile,
    pub sheet: Vec<SurfaceComponent>,
    pub euler_ok: bool,
}

impl CensusRecord {
    pub fn gluing_tokens(&self) -> String {
        self.cubulation
            .rows()
            .iter()
            .flat_map(cube_row_tokens)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn sheet_summary(&self) -> String {
        self.sheet
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

    pub fn line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.signature,
            self.gluing_tokens(),
            self.orientable,
            self.homology,
            self.sheet_summary()
        )
    }
}

pub fn fingerprint(cub: &Cubulation) -> Result<CensusRecord, PreconditionError> {
    fingerprint_form(canonical_form(cub))
}

/// Fingerprint of a cubulation already in canonical form.
fn fingerprint_form(cub: Cubulation) -> Result<CensusRecord, PreconditionError> {
    let report = validate_cubulation(&cub);
    if !report.is_closed_manifold {
        return Err(PreconditionError(format!(
            "fingerprint needs a closed 3-manifold: {}",
            report
                .failure_witness
                .map_or_else(|| "empty complex".to_string(), |w| w.to_string())
        )));
    }
    let dual = dual_dehn_surface(&cub)?;
    let counts = report.counts;
    let euler_ok = counts.euler_characteristic() == 0
        && counts.edges == counts.vertices + 2 * cub.cube_count()
        && verify_duality_counts(&cub, &dual);
    Ok(CensusRecord {
        signature: canonical_signature(&cub),
        cube_count: cub.cube_count(),
        orientable: report.orientable,
        homology: cubulation_homology(&cub),
        sheet: dual.sheet.components,
        euler_ok,
        cubulation: cub,
    })
}

fn partial_rows(p: &Partial) -> Vec<[Option<CubeGluing>; 6]> {
    p.glue
        .chunks(6)
        .map(|chunk| {
            let mut row = [None; 6];
            for (f, g) in chunk.iter().enumerate() {
                if let Glue::To { cell, slot, label } = *g {
                    row[f] = Some(CubeGluing {
                        cube: cell as usize,
                        face: slot,
                        sym: crate::cells::Dihedral::new(label).expect("dihedral code"),
                    });
                }
            }
            row
        })
        .collect()
}

/// All connected closed cubulations with `cubes` cubes, one per
/// isomorphism class, sorted by signature. Runs on the global thread pool.
pub fn enumerate_cubulations(cubes: usize) -> Vec<CensusRecord> {
    assert!(cubes >= 1, "a census needs at least one cube");
    // an edge identified with itself in reverse stays so in every completion
    let keep = |p: &Partial| !edge_orbits(&partial_rows(p)).reversed;
    let leaf = |p: &Partial| {
        let cub = glue_to_cubulation(&p.glue);
        if !cubulation_is_closed_manifold(&cub) {
            return None;
        }
        Some(fingerprint_form(cub).expect("closed manifold"))
    };
    let mut records = orderly(Scheme::cubes(), cubes, &keep, &leaf, 2);
    records.sort_by(|a, b| a.signature.cmp(&b.signature));
    records.dedup_by(|a, b| a.signature == b.signature);
    records
}

/// As [`enumerate_cubulations`] on a dedicated pool of `workers` threads.
pub fn enumerate_cubulations_with_workers(cubes: usize, workers: usize) -> Vec<CensusRecord> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| enumerate_cubulations(cubes))
}

pub fn write_census(cubes: usize, records: &[CensusRecord]) -> String {
    let mut out = format!("census c={cubes} records={}\n", records.len());
    for r in records {
        let _ = writeln!(out, "{}", r.line());
    }
    out
}

/// Cubulation stored in the gluing column of a census line.
pub fn parse_census_gluing(line: &str) -> Result<Cubulation, ParseError> {
    let col = line
        .split('\t')
        .nth(1)
        .ok_or_else(|| ParseError::syntax(1, 1, "missing gluing column"))?;
    let tokens: Vec<&str> = col.split_whitespace().collect();
    if tokens.len() % 6 != 0 {
        return Err(ParseError::syntax(
            1,
            1,
            "gluing column must hold six tokens per cube",
        ));
    }
    let mut text = format!("{}\n", tokens.len() / 6);
    for row in tokens.chunks(6) {
        let _ = writeln!(text, "{}", row.join(" "));
    }
    parse_cubulation(&text)
}

/// Perfect matchings of `0..n`, each as pairs `(low, high)`.
pub fn slot_pairings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        free: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    assert!(n % 2 == 0);
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pairing_counts() {
        assert_eq!(slot_pairings(2).len(), 1);
        assert_eq!(slot_pairings(6).len(), 15);
        assert_eq!(slot_pairings(8).len(), 105);
    }

    #[test]
    fn fixture_fingerprints() {
        let r = fingerprint(&fixtures::torus_two_cubes()).unwrap();
        assert_eq!(r.homology.to_string(), "Z|Z^3|Z^3|Z");
        assert!(r.orientable && r.euler_ok);
        let r = fingerprint(&fixtures::coordinate_planes_sphere()).unwrap();
        assert_eq!(r.homology.to_string(), "Z|0|0|Z");
        assert_eq!(r.sheet_summary(), "2:o:0,2:o:0,2:o:0");
        assert!(fingerprint(&Cubulation::empty()).is_err());
    }

    #[test]
    fn non_manifold_is_rejected() {
        // every face glued to its opposite by a quarter turn
        let text = "1\n0:1:1 0:0:3 0:3:1 0:2:3 0:5:1 0:4:3\n";
        let cub = parse_cubulation(text).unwrap();
        assert!(!validate_cubulation(&cub).is_closed_manifold);
        assert!(fingerprint(&cub).is_err());
    }

    #[test]
    fn census_line_round_trip() {
        let r = fingerprint(&fixtures::klein_bottle_times_circle()).unwrap();
        let back = parse_census_gluing(&r.line()).unwrap();
        assert_eq!(back, r.cubulation);
        assert_eq!(canonical_signature(&back), r.signature);
    }
}
