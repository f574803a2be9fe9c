use surfcx::census::enumerate_cubulations;
use surfcx::convert::{cubulation_to_triangulation, triangulation_to_cubulation, Strategy};
use surfcx::fixtures;
use surfcx::homology::{cubulation_homology, homology_groups};
use surfcx::validate::{validate_closed_3manifold, validate_cubulation};

#[test]
fn one_cube_records_convert_within_bounds() {
    for r in enumerate_cubulations(1) {
        let (tri, stats) =
            cubulation_to_triangulation(&r.cubulation, Strategy::Exhaustive).unwrap();
        assert!(
            (5..=8).contains(&tri.tet_count()),
            "{}: {} tetrahedra",
            r.signature,
            tri.tet_count()
        );
        assert_eq!(stats.output_cells, tri.tet_count());
        let report = validate_closed_3manifold(&tri);
        assert!(report.is_closed_manifold, "{}", r.signature);
        assert_eq!(report.orientable, r.orientable);
        assert_eq!(homology_groups(&tri), r.homology);

        let (back, stats) = triangulation_to_cubulation(&tri).unwrap();
        assert_eq!(back.cube_count(), 4 * tri.tet_count());
        assert_eq!(stats.output_cells, back.cube_count());
        let report = validate_cubulation(&back);
        assert!(report.is_closed_manifold);
        assert_eq!(report.orientable, r.orientable);
        assert_eq!(cubulation_homology(&back), r.homology);

        let (greedy, _) = cubulation_to_triangulation(&r.cubulation, Strategy::Greedy).unwrap();
        assert!(greedy.tet_count() >= tri.tet_count());
        assert_eq!(homology_groups(&greedy), r.homology);
    }
}

#[test]
fn fixtures_convert_both_ways() {
    for cub in [
        fixtures::torus_two_cubes(),
        fixtures::torus_one_cube(),
        fixtures::coordinate_planes_sphere(),
        fixtures::klein_bottle_times_circle(),
    ] {
        let h = cubulation_homology(&cub);
        let orientable = validate_cubulation(&cub).orientable;
        let (tri, _) = cubulation_to_triangulation(&cub, Strategy::Exhaustive).unwrap();
        assert!(tri.tet_count() >= 5 * cub.cube_count() && tri.tet_count() <= 8 * cub.cube_count());
        assert_eq!(homology_groups(&tri), h);
        assert_eq!(validate_closed_3manifold(&tri).orientable, orientable);
        let (back, _) = triangulation_to_cubulation(&tri).unwrap();
        assert_eq!(back.cube_count(), 4 * tri.tet_count());
        assert_eq!(cubulation_homology(&back), h);
    }
    let s3 = fixtures::two_tet_sphere();
    let (cub, _) = triangulation_to_cubulation(&s3).unwrap();
    assert_eq!(cub.cube_count(), 8);
    assert_eq!(cubulation_homology(&cub), homology_groups(&s3));
    let (tri, _) = cubulation_to_triangulation(&cub, Strategy::Exhaustive).unwrap();
    assert_eq!(homology_groups(&tri), homology_groups(&s3));
}
