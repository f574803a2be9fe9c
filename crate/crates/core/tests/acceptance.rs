mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use surfcx::bounds::{
    heegaard_bound, matveev_relation, parse_gauss_code, surgery_bound, Exception, FramingMode,
    HeegaardData, Known,
};
use surfcx::canon::{canonical_signature, triangulation_signature};
use surfcx::cells::{CubeSymmetry, Perm4};
use surfcx::census::{
    enumerate_cubulations, enumerate_cubulations_with_workers, write_census, CensusRecord,
};
use surfcx::convert::{cubulation_to_triangulation, triangulation_to_cubulation, Strategy};
use surfcx::cubulation::Cubulation;
use surfcx::duality::{dual_dehn_surface, verify_duality_counts};
use surfcx::fixtures;
use surfcx::homology::{
    cubulation_homology, homology_groups, smith_normal_form, HomologyProfile, IntegerMatrix,
};
use surfcx::loops2d::{enumerate_dehn_loops, verify_lc, SurfaceType};
use surfcx::subdivide::cone_subdivision;
use surfcx::triangulation::Triangulation;
use surfcx::validate::{validate_closed_3manifold, validate_cubulation};

use common::{
    assert_euler_identities, boundary_squares_vanish, determinantal_factors, elementary_factors,
    random_cubulation, random_triangulation,
};

const FIG5_LIMIT: Duration = Duration::from_secs(1);
const CENSUS_LIMIT: Duration = Duration::from_secs(60);
const LOOPS_LIMIT: Duration = Duration::from_secs(300);
const SNF_SAMPLES: usize = 10_000;
const RELABELINGS: usize = 128;
const CENSUS_H1: [&str; 6] = ["Z^3", "Z^2 + Z/2", "Z/6", "Z/8", "Z/12", "Z/14"];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fig5() -> Outcome {
    let t = Instant::now();
    let cub = fixtures::torus_two_cubes();
    let report = validate_cubulation(&cub);
    let h = cubulation_homology(&cub);
    let elapsed = t.elapsed();
    ensure(report.is_closed_manifold, "not closed")?;
    ensure(report.orientable, "not orientable")?;
    ensure(
        report.euler_characteristic() == 0,
        format!("chi={}", report.euler_characteristic()),
    )?;
    ensure(h.to_string() == "Z|Z^3|Z^3|Z", format!("homology {h}"))?;
    ensure(elapsed < FIG5_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("closed orientable chi=0 H={h} in {elapsed:?}"))
}

fn planes() -> Outcome {
    let cub = fixtures::coordinate_planes_sphere();
    let h = cubulation_homology(&cub);
    ensure(h.to_string() == "Z|0|0|Z", format!("homology {h}"))?;
    let c = validate_cubulation(&cub).counts;
    ensure(
        (c.vertices, c.edges, c.faces, c.cells) == (8, 12, 6, 2),
        format!("counts {c}"),
    )?;
    let dual = dual_dehn_surface(&cub).map_err(|e| e.to_string())?;
    ensure(
        dual.triple_points == 2,
        format!("{} triple points", dual.triple_points),
    )?;
    let comps = &dual.sheet.components;
    ensure(
        comps.len() == 3,
        format!("{} sheet components", comps.len()),
    )?;
    ensure(
        comps.iter().all(|s| s.orientable && s.euler == 2),
        format!("sheet {}", dual.sheet.summary()),
    )?;
    ensure(dual.sheet.euler_characteristic() == 6, "chi(S) != 6")?;
    ensure(verify_duality_counts(&cub, &dual), "duality counts")?;
    Ok(format!(
        "H={h} triple_points=2 sheet={} v=8 e=12 f=6 c=2",
        dual.sheet.summary()
    ))
}

fn census_invariants(r: &CensusRecord) -> Result<(), String> {
    let report = validate_cubulation(&r.cubulation);
    ensure(
        report.is_closed_manifold,
        format!("{} invalid", r.signature),
    )?;
    let dual = dual_dehn_surface(&r.cubulation).map_err(|e| e.to_string())?;
    ensure(
        verify_duality_counts(&r.cubulation, &dual),
        format!("{} duality counts", r.signature),
    )?;
    let h = &r.homology;
    let [b0, b1, b2, b3] = h.betti();
    let tor2 = &h.h(2).torsion;
    let ok = b0 == 1
        && h.euler_characteristic() == 0
        && if r.orientable {
            b3 == 1 && b1 == b2 && tor2.is_empty()
        } else {
            b3 == 0 && b1 == b2 + 1 && *tor2 == vec![BigInt::from(2)]
        };
    ensure(
        ok && r.euler_ok,
        format!("{} homology constraints fail: {h}", r.signature),
    )
}

fn census(records: &[CensusRecord], elapsed: Duration) -> Outcome {
    ensure(elapsed < CENSUS_LIMIT, format!("took {elapsed:?}"))?;
    for r in records {
        census_invariants(r)?;
    }
    let h1: BTreeSet<String> = records
        .iter()
        .map(|r| r.homology.h(1).to_string())
        .collect();
    for want in CENSUS_H1 {
        ensure(h1.contains(want), format!("H1 {want} missing"))?;
    }
    let text = write_census(1, records);
    ensure(
        text == write_census(1, &enumerate_cubulations(1)),
        "second run differs",
    )?;
    for workers in [2, 4] {
        ensure(
            text == write_census(1, &enumerate_cubulations_with_workers(1, workers)),
            format!("workers={workers} differs"),
        )?;
    }
    Ok(format!(
        "{} records in {elapsed:?}, deterministic across runs and workers",
        records.len()
    ))
}

fn preserved_tri(tri: &Triangulation, h: &HomologyProfile, orientable: bool) -> Result<(), String> {
    let r = validate_closed_3manifold(tri);
    ensure(
        r.is_closed_manifold && r.orientable == orientable,
        "triangulation invalid or orientability changed",
    )?;
    ensure(homology_groups(tri) == *h, "homology changed")
}

fn preserved_cub(cub: &Cubulation, h: &HomologyProfile, orientable: bool) -> Result<(), String> {
    let r = validate_cubulation(cub);
    ensure(
        r.is_closed_manifold && r.orientable == orientable,
        "cubulation invalid or orientability changed",
    )?;
    ensure(cubulation_homology(cub) == *h, "homology changed")
}

fn cub_both_ways(cub: &Cubulation, h: &HomologyProfile, orientable: bool) -> Result<usize, String> {
    let (tri, _) =
        cubulation_to_triangulation(cub, Strategy::Exhaustive).map_err(|e| e.to_string())?;
    preserved_tri(&tri, h, orientable)?;
    let (back, _) = triangulation_to_cubulation(&tri).map_err(|e| e.to_string())?;
    ensure(
        back.cube_count() == 4 * tri.tet_count(),
        "not 4 cubes per tetrahedron",
    )?;
    preserved_cub(&back, h, orientable)?;
    Ok(tri.tet_count())
}

fn conversion(records: &[CensusRecord]) -> Outcome {
    let (mut lo, mut hi) = (usize::MAX, 0);
    for r in records {
        let n = cub_both_ways(&r.cubulation, &r.homology, r.orientable)
            .map_err(|e| format!("{}: {e}", r.signature))?;
        ensure(
            (5..=8).contains(&n),
            format!("{}: {n} tetrahedra", r.signature),
        )?;
        lo = lo.min(n);
        hi = hi.max(n);
    }
    let mut fig5_tets = 0;
    for (name, cub) in [
        ("fig5", fixtures::torus_two_cubes()),
        ("torus1", fixtures::torus_one_cube()),
        ("planes", fixtures::coordinate_planes_sphere()),
        ("klein", fixtures::klein_bottle_times_circle()),
    ] {
        let h = cubulation_homology(&cub);
        let orientable = validate_cubulation(&cub).orientable;
        let n = cub_both_ways(&cub, &h, orientable).map_err(|e| format!("{name}: {e}"))?;
        if name == "fig5" {
            ensure((10..=16).contains(&n), format!("fig5: {n} tetrahedra"))?;
            fig5_tets = n;
        }
    }
    let tri = fixtures::two_tet_sphere();
    let h = homology_groups(&tri);
    let (cub, _) = triangulation_to_cubulation(&tri).map_err(|e| e.to_string())?;
    ensure(
        cub.cube_count() == 8,
        "two-tet sphere does not give 8 cubes",
    )?;
    preserved_cub(&cub, &h, true)?;
    let (again, _) =
        cubulation_to_triangulation(&cub, Strategy::Exhaustive).map_err(|e| e.to_string())?;
    preserved_tri(&again, &h, true)?;
    Ok(format!(
        "c=1 tets in [{lo}, {hi}], fig5 {fig5_tets} tets, 4 cubes per tet, invariants preserved"
    ))
}

fn bounds() -> Outcome {
    let sc = |text: &str, mode| {
        parse_gauss_code(text)
            .map(|l| surgery_bound(&l, mode).bound)
            .map_err(|e| e.to_string())
    };
    ensure(
        sc("comp: ; fr 0\n", FramingMode::Blackboard)? == 4,
        "unknot",
    )?;
    ensure(
        sc(
            "comp: 1o+ 2u+ 3o+ 1u+ 2o+ 3u+ ; fr 0\n",
            FramingMode::Blackboard,
        )? == 24,
        "trefoil",
    )?;
    ensure(
        sc("comp: ; fr 1\n", FramingMode::Explicit)? == 8,
        "+1 unknot",
    )?;

    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for _ in 0..500 {
        let g = rng.gen_range(1..=5);
        let rows: Vec<Vec<u64>> = (0..g)
            .map(|_| (0..g).map(|_| rng.gen_range(0..20)).collect())
            .collect();
        let sum: u64 = rows.iter().flatten().sum();
        let h = HeegaardData::new(rows).map_err(|e| e.to_string())?;
        let b = heegaard_bound(&h).map_err(|e| e.to_string())?.0.bound;
        ensure(b == 4 * sum, format!("heegaard {b} != 4*{sum}"))?;
    }

    for v in 0u64..1000 {
        let (lo, hi) = matveev_relation(Known::Matveev(v), None)
            .interval
            .ok_or("no interval")?;
        ensure(
            hi == 4 * v && 8 * lo >= v && (lo == 0 || 8 * (lo - 1) < v),
            format!("c={v}"),
        )?;
        let (lo, hi) = matveev_relation(Known::Surface(v), None)
            .interval
            .ok_or("no interval")?;
        ensure(
            hi == 8 * v && 4 * lo >= v && (lo == 0 || 4 * (lo - 1) < v),
            format!("sc={v}"),
        )?;
    }
    let l31 = matveev_relation(Known::Matveev(0), Some(Exception::L31));
    let l41 = matveev_relation(Known::Surface(0), Some(Exception::L41));
    ensure(
        l31.interval.is_none() && l31.text.contains("c=0, sc>0"),
        "L31 case",
    )?;
    ensure(
        l41.interval.is_none() && l41.text.contains("c>0, sc=0"),
        "L41 case",
    )?;
    Ok(
        "unknot 4, trefoil 24, +1 unknot 8, heegaard 4*sum, matveev endpoints, L31/L41 reported"
            .into(),
    )
}

fn loops() -> Outcome {
    let t = Instant::now();
    let records = enumerate_dehn_loops(3);
    let rows = verify_lc(&records, 3);
    let elapsed = t.elapsed();
    ensure(elapsed < LOOPS_LIMIT, format!("took {elapsed:?}"))?;
    ensure(rows.iter().all(|r| r.matches()), "some lc row mismatches")?;
    for (s, lc) in [
        (SurfaceType::orientable(0), 0),
        (SurfaceType::nonorientable(1), 0),
        (SurfaceType::orientable(1), 1),
        (SurfaceType::nonorientable(2), 1),
        (SurfaceType::nonorientable(3), 2),
        (SurfaceType::orientable(2), 3),
    ] {
        let row = rows
            .iter()
            .find(|r| r.surface == s)
            .ok_or(format!("{s} missing"))?;
        ensure(row.enumerated == Some(lc), format!("{s}: {row}"))?;
    }
    let zero: BTreeSet<SurfaceType> = records
        .iter()
        .filter(|r| r.crossings == 0)
        .map(|r| r.surface)
        .collect();
    let zero_count = records.iter().filter(|r| r.crossings == 0).count();
    ensure(zero_count == 2, format!("{zero_count} records at V=0"))?;
    ensure(
        zero == [SurfaceType::orientable(0), SurfaceType::nonorientable(1)].into(),
        "V=0 surfaces are not S2 and RP2",
    )?;
    ensure(
        records
            .iter()
            .filter(|r| r.crossings == 0)
            .all(|r| !r.filling),
        "V=0 record is filling",
    )?;
    Ok(format!(
        "{} loops, {} lc rows match, in {elapsed:?}",
        records.len(),
        rows.len()
    ))
}

fn properties(records: &[CensusRecord]) -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..SNF_SAMPLES {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&a));
        let want: Vec<BigInt> = elementary_factors(&a)
            .into_iter()
            .map(BigInt::from)
            .collect();
        let det: Vec<BigInt> = determinantal_factors(&a)
            .into_iter()
            .map(BigInt::from)
            .collect();
        ensure(snf == want && snf == det, format!("SNF mismatch on {a:?}"))?;
    }

    let mut closed = 0;
    for i in 0..600 {
        let tri = random_triangulation(&mut rng, 1 + i % 4, i % 3 == 0);
        ensure(boundary_squares_vanish(&tri), "dd != 0 on a triangulation")?;
        let cubes = 1 + i % 2;
        let cub = random_cubulation(&mut rng, cubes);
        ensure(
            boundary_squares_vanish(&cone_subdivision(&cub)),
            "dd != 0 on a cubulation",
        )?;
        if validate_cubulation(&cub).is_closed_manifold {
            assert_euler_identities(&cub);
            closed += 1;
        }
    }

    let cubs = [
        fixtures::torus_two_cubes(),
        fixtures::torus_one_cube(),
        fixtures::coordinate_planes_sphere(),
        fixtures::klein_bottle_times_circle(),
    ];
    for cub in &cubs {
        let sig = canonical_signature(cub);
        for _ in 0..RELABELINGS {
            let mut order: Vec<usize> = (0..cub.cube_count()).collect();
            order.shuffle(&mut rng);
            let frames: Vec<CubeSymmetry> = (0..cub.cube_count())
                .map(|_| *CubeSymmetry::all().choose(&mut rng).unwrap())
                .collect();
            ensure(
                canonical_signature(&cub.relabeled(&order, &frames)) == sig,
                "signature changed",
            )?;
        }
    }
    let tri = fixtures::two_tet_sphere();
    let sig = triangulation_signature(&tri);
    let perms: Vec<Perm4> = Perm4::all().collect();
    for _ in 0..RELABELINGS {
        let mut order = vec![0, 1];
        order.shuffle(&mut rng);
        let frames = [
            *perms.choose(&mut rng).unwrap(),
            *perms.choose(&mut rng).unwrap(),
        ];
        ensure(
            triangulation_signature(&tri.relabeled(&order, &frames)) == sig,
            "tri signature changed",
        )?;
    }

    for cub in cubs.iter().chain(records.iter().map(|r| &r.cubulation)) {
        assert_euler_identities(cub);
    }
    Ok(format!(
        "{SNF_SAMPLES} SNF samples, dd=0 on 1200 complexes, {RELABELINGS} relabelings per fixture, \
         Euler identities on {} closed cubulations",
        closed + cubs.len() + records.len()
    ))
}

fn main() {
    let t = Instant::now();
    let records = enumerate_cubulations_with_workers(1, 1);
    let census_time = t.elapsed();

    let results: Vec<(usize, Outcome)> = vec![
        (1, fig5()),
        (2, planes()),
        (3, census(&records, census_time)),
        (4, conversion(&records)),
        (5, bounds()),
        (6, loops()),
        (7, properties(&records)),
    ];
    let mut failed = Vec::new();
    for (n, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n}: PASS - {detail}"),
            Err(why) => {
                println!("criterion {n}: FAIL - {why}");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
