//! Command-line front end. Exit codes: 0 success, 1 domain failure, 2 usage
//! or parse error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{
    heegaard_bound, matveev_relation, parse_gauss_code, parse_heegaard, surgery_bound, Exception,
    FramingMode, Known,
};
use crate::canon::{canonical_signature, triangulation_signature};
use crate::census::{enumerate_cubulations_with_workers, write_census};
use crate::convert::{cubulation_to_triangulation, triangulation_to_cubulation, Strategy};
use crate::cubulation::Cubulation;
use crate::duality::{dual_dehn_surface, verify_duality_counts};
use crate::format::{parse_cubulation, parse_triangulation, write_cubulation, write_triangulation};
use crate::homology::{cubulation_homology, homology_groups};
use crate::loops2d::{enumerate_dehn_loops, verify_lc, MAX_ENUMERATED_CROSSINGS};
use crate::triangulation::Triangulation;
use crate::validate::{validate_closed_3manifold, validate_cubulation, ManifoldReport};

#[derive(Parser, Debug)]
#[command(
    name = "surfcx",
    version,
    about = "Cubulations, Dehn surfaces and complexity bounds for closed 3-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Cub,
    Tri,
}

#[derive(Args, Debug)]
struct Input {
    /// Input file, or '-' for standard input.
    file: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a complex is a closed 3-manifold.
    Validate(Input),
    /// Integral homology groups H0..H3.
    Homology(Input),
    /// The filling Dehn surface dual to a cubulation.
    Dual(Input),
    /// Canonical isomorphism signature.
    Signature(Input),
    /// Convert between triangulations and cubulations.
    Convert {
        #[arg(long, value_enum)]
        to: Format,
        #[arg(long, default_value = "exhaustive")]
        strategy: Strategy,
        #[command(flatten)]
        input: Input,
    },
    /// Enumerate closed cubulations with a fixed number of cubes.
    Census {
        #[arg(long)]
        cubes: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Upper bounds for surface-complexity.
    Bound(BoundArgs),
    /// Enumerate Dehn loops on surfaces and check loop-complexity.
    Loops {
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Special {
    L31,
    L41,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["heegaard", "surgery", "matveev"]))]
struct BoundArgs {
    /// Heegaard intersection matrix file.
    #[arg(long, value_name = "FILE")]
    heegaard: Option<PathBuf>,
    /// Points in the closure of one complementary region.
    #[arg(long, requires = "heegaard")]
    m: Option<u64>,
    /// Assume every prime summand is P2-irreducible and not L(3,1).
    #[arg(long, requires = "heegaard")]
    assume_p2: bool,
    /// Gauss code file of a framed link.
    #[arg(long, value_name = "FILE")]
    surgery: Option<PathBuf>,
    #[arg(long, requires = "surgery", conflicts_with = "explicit")]
    blackboard: bool,
    #[arg(long, requires = "surgery")]
    explicit: bool,
    /// Relate Matveev complexity and surface-complexity.
    #[arg(long)]
    matveev: bool,
    #[arg(
        long = "c",
        value_name = "V",
        requires = "matveev",
        conflicts_with = "sc",
        allow_negative_numbers = true
    )]
    c: Option<i64>,
    #[arg(
        long = "sc",
        value_name = "V",
        requires = "matveev",
        allow_negative_numbers = true
    )]
    sc: Option<i64>,
    #[arg(long, value_enum, requires = "matveev")]
    special: Option<Special>,
}

enum Failure {
    Domain(String),
    Usage(String),
}

type Outcome = Result<(String, bool), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(usage)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

enum Complex {
    Cub(Cubulation),
    Tri(Triangulation),
}

fn load(input: &Input) -> Result<Complex, Failure> {
    let format = match input.format {
        Some(f) => f,
        None => match input.file.extension().and_then(|e| e.to_str()) {
            Some("cub") => Format::Cub,
            Some("tri") => Format::Tri,
            _ => {
                return Err(Failure::Usage(format!(
                    "cannot infer the format of '{}'; pass --format cub|tri",
                    input.file.display()
                )))
            }
        },
    };
    let text = read_input(&input.file)?;
    let located =
        |e: crate::error::ParseError| Failure::Usage(format!("{}: {e}", input.file.display()));
    Ok(match format {
        Format::Cub => Complex::Cub(parse_cubulation(&text).map_err(located)?),
        Format::Tri => Complex::Tri(parse_triangulation(&text).map_err(located)?),
    })
}

fn render_report(r: &ManifoldReport) -> String {
    let mut s = String::new();
    let orientable = if r.is_closed_manifold {
        r.orientable.to_string()
    } else {
        "-".into()
    };
    let _ = writeln!(
        s,
        "closed={} orientable={orientable} chi={}",
        r.is_closed_manifold,
        r.euler_characteristic()
    );
    let _ = writeln!(s, "{} components={}", r.counts, r.components);
    if let Some(w) = &r.failure_witness {
        let _ = writeln!(s, "failure: {w}");
    }
    s
}

fn validate(input: &Input) -> Outcome {
    let report = match load(input)? {
        Complex::Cub(c) => validate_cubulation(&c),
        Complex::Tri(t) => validate_closed_3manifold(&t),
    };
    Ok((render_report(&report), report.is_closed_manifold))
}

fn homology(input: &Input) -> Outcome {
    let h = match load(input)? {
        Complex::Cub(c) => cubulation_homology(&c),
        Complex::Tri(t) => homology_groups(&t),
    };
    let mut s = format!("{h}\n");
    for i in 0..4 {
        let _ = writeln!(s, "H{i} = {}", h.h(i));
    }
    Ok((s, true))
}

fn dual(input: &Input) -> Outcome {
    let Complex::Cub(cub) = load(input)? else {
        return Err(Failure::Usage("dual needs a cubulation".into()));
    };
    let r = dual_dehn_surface(&cub).map_err(|e| Failure::Domain(e.to_string()))?;
    let ok = verify_duality_counts(&cub, &r);
    Ok((
        format!("{r}counts={}\n", if ok { "ok" } else { "FAILED" }),
        ok,
    ))
}

fn signature(input: &Input) -> Outcome {
    let s = match load(input)? {
        Complex::Cub(c) => canonical_signature(&c),
        Complex::Tri(t) => triangulation_signature(&t),
    };
    Ok((format!("{s}\n"), true))
}

fn convert(to: Format, strategy: Strategy, input: &Input) -> Outcome {
    let domain = |e: crate::error::PreconditionError| Failure::Domain(e.to_string());
    match (load(input)?, to) {
        (Complex::Tri(t), Format::Cub) => {
            let (cub, stats) = triangulation_to_cubulation(&t).map_err(domain)?;
            Ok((format!("# {stats}\n{}", write_cubulation(&cub)), true))
        }
        (Complex::Cub(c), Format::Tri) => {
            let (tri, stats) = cubulation_to_triangulation(&c, strategy).map_err(domain)?;
            Ok((format!("# {stats}\n{}", write_triangulation(&tri)), true))
        }
        _ => Err(Failure::Usage(
            "input is already in the target format".into(),
        )),
    }
}

fn census(cubes: usize, workers: usize, out: Option<&Path>, err: &mut dyn Write) -> Outcome {
    if cubes == 0 {
        return Err(Failure::Usage("--cubes must be at least 1".into()));
    }
    if cubes > 2 {
        let _ = writeln!(
            err,
            "warning: a census with {cubes} cubes may not finish in reasonable time"
        );
    }
    let start = Instant::now();
    let records = enumerate_cubulations_with_workers(cubes, workers);
    let text = write_census(cubes, &records);
    let _ = writeln!(
        err,
        "census c={cubes}: {} records in {:.2?}",
        records.len(),
        start.elapsed()
    );
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok((
                format!("wrote {} records to {}\n", records.len(), path.display()),
                true,
            ))
        }
        None => Ok((text, true)),
    }
}

fn bound(a: &BoundArgs) -> Outcome {
    if let Some(path) = &a.heegaard {
        let text = read_input(path)?;
        let mut h = parse_heegaard(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        h.m = a.m;
        h.assume_p2_irreducible = a.assume_p2;
        let (plain, refined) = heegaard_bound(&h).map_err(usage)?;
        let mut s = format!("{plain}\n");
        if let Some(r) = refined {
            let _ = writeln!(s, "{r}");
        } else if a.m.is_some() {
            let _ = writeln!(s, "note: the 4(n-m) refinement needs --assume-p2");
        }
        return Ok((s, true));
    }
    if let Some(path) = &a.surgery {
        let text = read_input(path)?;
        let link = parse_gauss_code(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let mode = if a.explicit {
            FramingMode::Explicit
        } else {
            FramingMode::Blackboard
        };
        return Ok((format!("{}\n", surgery_bound(&link, mode)), true));
    }
    let known = match (a.c, a.sc) {
        (Some(v), None) if v >= 0 => Known::Matveev(v as u64),
        (None, Some(v)) if v >= 0 => Known::Surface(v as u64),
        (Some(_), None) | (None, Some(_)) => {
            return Err(Failure::Usage(
                "complexity values must be non-negative".into(),
            ))
        }
        _ => {
            return Err(Failure::Usage(
                "--matveev needs exactly one of --c or --sc".into(),
            ))
        }
    };
    let exception = a.special.map(|s| match s {
        Special::L31 => Exception::L31,
        Special::L41 => Exception::L41,
    });
    Ok((
        format!("{}\n", matveev_relation(known, exception).text),
        true,
    ))
}

fn loops(max_crossings: usize, verify: bool) -> Outcome {
    if max_crossings > MAX_ENUMERATED_CROSSINGS {
        return Err(Failure::Usage(format!(
            "--max-crossings is limited to {MAX_ENUMERATED_CROSSINGS}"
        )));
    }
    let records = enumerate_dehn_loops(max_crossings);
    let mut s = String::new();
    for r in &records {
        let _ = writeln!(s, "{r}");
    }
    let mut ok = true;
    if verify {
        let table = verify_lc(&records, max_crossings);
        for row in &table {
            let _ = writeln!(s, "lc {row}");
        }
        ok = table.iter().all(|r| r.matches());
        let _ = writeln!(s, "verify={}", if ok { "ok" } else { "FAILED" });
    }
    Ok((s, ok))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Validate(i) => validate(i),
        Command::Homology(i) => homology(i),
        Command::Dual(i) => dual(i),
        Command::Signature(i) => signature(i),
        Command::Convert {
            to,
            strategy,
            input,
        } => convert(*to, *strategy, input),
        Command::Census {
            cubes,
            workers,
            out,
        } => census(*cubes, *workers, out.as_deref(), err),
        Command::Bound(a) => bound(a),
        Command::Loops {
            max_crossings,
            verify,
        } => loops(*max_crossings, *verify),
    };
    match outcome {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            i32::from(!ok)
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
