use std::path::PathBuf;

use surfcx::cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn surfcx(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("surfcx").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn validate_reports_fig5() {
    let o = surfcx(&["validate", &fixture("fig5_torus.cub")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(
        o.stdout.lines().next(),
        Some("closed=true orientable=true chi=0")
    );
    assert_eq!(
        o.stdout.lines().nth(1),
        Some("v=2 e=6 f=6 c=2 components=1")
    );
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("quarter.cub");
    std::fs::write(&bad, "1\n0:1:1 0:0:3 0:3:1 0:2:3 0:5:1 0:4:3\n").unwrap();
    let o = surfcx(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.starts_with("closed=false"));
    assert!(o.stdout.contains("failure:"));

    let broken = dir.path().join("broken.cub");
    std::fs::write(&broken, "1\n0:1:0 0:0:0\n").unwrap();
    let o = surfcx(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);

    let unknown = dir.path().join("complex.txt");
    std::fs::write(&unknown, "0\n").unwrap();
    assert_eq!(surfcx(&["validate", unknown.to_str().unwrap()]).code, 2);
    assert_eq!(
        surfcx(&["validate", "--format", "cub", unknown.to_str().unwrap()]).code,
        1
    );

    assert_eq!(
        surfcx(&["validate", "--frobnicate", &fixture("fig5_torus.cub")]).code,
        2
    );
    assert_eq!(surfcx(&[]).code, 2);
    assert_eq!(surfcx(&["validate", "/nonexistent/x.cub"]).code, 2);
}

#[test]
fn homology_and_dual() {
    let o = surfcx(&["homology", &fixture("fig5_torus.cub")]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().next(), Some("Z|Z^3|Z^3|Z"));
    let o = surfcx(&["homology", &fixture("s3_two_tets.tri")]);
    assert_eq!(o.stdout.lines().next(), Some("Z|0|0|Z"));

    let o = surfcx(&["dual", &fixture("planes_s3.cub")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("triple_points=2"));
    assert_eq!(
        o.stdout.matches("chi=2, orientable=true, genus=0").count(),
        3
    );
    assert!(o.stdout.ends_with("counts=ok\n"));
    assert_eq!(surfcx(&["dual", &fixture("s3_two_tets.tri")]).code, 2);
}

#[test]
fn every_fixture_runs_through_its_subcommand() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let p = path.to_str().unwrap();
        let o = match path.extension().and_then(|e| e.to_str()) {
            Some("cub") | Some("tri") => {
                let sig = surfcx(&["signature", p]);
                assert_eq!(sig.code, 0);
                surfcx(&["validate", p])
            }
            Some("gauss") => surfcx(&["bound", "--surgery", p, "--explicit"]),
            Some("hee") => surfcx(&["bound", "--heegaard", p]),
            _ => continue,
        };
        assert_eq!(o.code, 0, "{p}: {}", o.stderr);
        seen += 1;
    }
    assert!(seen >= 10);
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = surfcx(&["convert", "--to", "tri", &fixture("fig5_torus.cub")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("# input_cells=2 output_cells="));
    let tri = dir.path().join("fig5.tri");
    std::fs::write(&tri, &o.stdout).unwrap();
    assert_eq!(
        surfcx(&["homology", tri.to_str().unwrap()])
            .stdout
            .lines()
            .next(),
        Some("Z|Z^3|Z^3|Z")
    );

    let o = surfcx(&["convert", "--to", "cub", tri.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let cub = dir.path().join("fig5_back.cub");
    std::fs::write(&cub, &o.stdout).unwrap();
    assert_eq!(surfcx(&["validate", cub.to_str().unwrap()]).code, 0);

    let greedy = surfcx(&[
        "convert",
        "--to",
        "tri",
        "--strategy",
        "greedy",
        &fixture("fig5_torus.cub"),
    ]);
    assert!(greedy.stdout.contains("strategy=greedy"));
    assert_eq!(
        surfcx(&[
            "convert",
            "--to",
            "tri",
            "--strategy",
            "lucky",
            &fixture("fig5_torus.cub")
        ])
        .code,
        2
    );
    assert_eq!(
        surfcx(&["convert", "--to", "cub", &fixture("fig5_torus.cub")]).code,
        2
    );
}

#[test]
fn census_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let o = surfcx(&["census", "--cubes", "1", "--out", a.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("wrote "));
    assert_eq!(
        surfcx(&[
            "census",
            "--cubes",
            "1",
            "--workers",
            "2",
            "--out",
            b.to_str().unwrap()
        ])
        .code,
        0
    );
    let ta = std::fs::read_to_string(&a).unwrap();
    assert!(ta.starts_with("census c=1 records="));
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    assert_eq!(surfcx(&["census", "--cubes", "1"]).stdout, ta);
    assert_eq!(surfcx(&["census", "--cubes", "0"]).code, 2);
}

#[test]
fn bound_subcommand() {
    let o = surfcx(&[
        "bound",
        "--surgery",
        &fixture("trefoil.gauss"),
        "--blackboard",
    ]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "sc <= 24 (n=3, m=0)\n"));
    let o = surfcx(&["bound", "--surgery", &fixture("unknot.gauss")]);
    assert_eq!(o.stdout, "sc <= 4 (n=0, m=1)\n");
    let o = surfcx(&[
        "bound",
        "--surgery",
        &fixture("unknot_plus1.gauss"),
        "--explicit",
    ]);
    assert!(o.stdout.starts_with("sc <= 8 "));
    let o = surfcx(&["bound", "--heegaard", &fixture("l41.hee")]);
    assert_eq!(o.stdout, "sc <= 16 (g=1, n=4)\n");
    let o = surfcx(&[
        "bound",
        "--heegaard",
        &fixture("genus2.hee"),
        "--m",
        "2",
        "--assume-p2",
    ]);
    assert_eq!(
        o.stdout
            .lines()
            .nth(1)
            .map(|l| l.starts_with("sc <= 16 (n=6, m=2)")),
        Some(true)
    );
    assert_eq!(
        surfcx(&["bound", "--heegaard", &fixture("genus2.hee"), "--m", "9"]).code,
        2
    );
    assert_eq!(
        surfcx(&["bound", "--matveev", "--c", "6"]).stdout,
        "sc in [1, 24] (c=6)\n"
    );
    assert_eq!(
        surfcx(&["bound", "--matveev", "--sc", "1"]).stdout,
        "c in [1, 8] (sc=1)\n"
    );
    let o = surfcx(&["bound", "--matveev", "--c", "0", "--special", "l31"]);
    assert_eq!(o.stdout, "c=0, sc>0, relation inapplicable\n");
    assert_eq!(surfcx(&["bound", "--matveev", "--c", "-2"]).code, 2);
    assert_eq!(surfcx(&["bound", "--matveev"]).code, 2);
    assert_eq!(surfcx(&["bound"]).code, 2);
    assert_eq!(
        surfcx(&[
            "bound",
            "--surgery",
            &fixture("trefoil.gauss"),
            "--blackboard",
            "--explicit"
        ])
        .code,
        2
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gauss");
    std::fs::write(&bad, "comp: 1o+ ; fr 0\n").unwrap();
    let o = surfcx(&["bound", "--surgery", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("crossing 1 unmatched"));
}

#[test]
fn loops_subcommand() {
    let o = surfcx(&["loops", "--max-crossings", "3", "--verify"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("verify=ok\n"));
    assert_eq!(
        o.stdout.lines().filter(|l| l.starts_with("V=0 ")).count(),
        2
    );
    assert_eq!(
        o.stdout,
        surfcx(&["loops", "--max-crossings", "3", "--verify"]).stdout
    );
    assert_eq!(surfcx(&["loops", "--max-crossings", "9"]).code, 2);
}
