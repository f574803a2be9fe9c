//! Dehn loops on closed surfaces, loop-complexity and the dual square
//! complexes of filling loops.
//!
//! A loop with `V >= 1` crossings is a signed rotation system: half-edge
//! `4v + i` is slot `i` of crossing `v` in cyclic order, opposite slots lie
//! on the same strand, and every edge carries a sign. A `-` edge reverses
//! the local orientation between its ends.

use std::collections::BTreeMap;
use std::fmt;

use crate::canon::{canonical_streams, orderly, render, Glue, Partial, Scheme};
use crate::dsu::Dsu;
use crate::error::ParseError;
use crate::polygon::{PolygonComplex, SurfaceComponent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceType {
    pub orientable: bool,
    pub genus: u32,
}

impl SurfaceType {
    pub fn orientable(genus: u32) -> SurfaceType {
        SurfaceType {
            orientable: true,
            genus,
        }
    }

    pub fn nonorientable(genus: u32) -> SurfaceType {
        assert!(genus >= 1, "non-orientable genus starts at 1");
        SurfaceType {
            orientable: false,
            genus,
        }
    }

    pub fn from_euler(euler: i64, orientable: bool) -> Option<SurfaceType> {
        let g = if orientable {
            if euler > 2 || euler % 2 != 0 {
                return None;
            }
            (2 - euler) / 2
        } else {
            if euler > 1 {
                return None;
            }
            2 - euler
        };
        Some(SurfaceType {
            orientable,
            genus: g as u32,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    pub fn name(&self) -> String {
        match (self.orientable, self.genus) {
            (true, 0) => "S2".into(),
            (true, 1) => "T".into(),
            (false, 1) => "RP2".into(),
            (false, 2) => "K".into(),
            (true, g) => format!("orientable genus {g}"),
            (false, g) => format!("non-orientable genus {g}"),
        }
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.orientable {
            "orient"
        } else {
            "nonorient"
        };
        write!(f, "{kind}:{}", self.genus)
    }
}

/// Lower bound for the crossings of a quasi-filling Dehn loop, attained on
/// every closed surface.
pub fn loop_complexity_formula(s: SurfaceType) -> u64 {
    (1 - s.euler_characteristic()).max(0) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error("half-edge data must cover 4 slots per crossing")]
    Shape,
    #[error("half-edge {0} is not paired consistently")]
    Pairing(usize),
    #[error("signs of half-edges {0} and {1} disagree")]
    Sign(usize, usize),
    #[error("the crossings do not form a connected curve system")]
    Disconnected,
    #[error("not filling: a loop without crossings has no crossing squares")]
    NotFilling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DehnLoop {
    /// An embedded circle, one-sided when its neighbourhood is a Möbius band.
    Circle {
        two_sided: bool,
    },
    Crossings {
        pair: Vec<usize>,
        sign: Vec<i8>,
    },
}

impl DehnLoop {
    pub fn new(pair: Vec<usize>, sign: Vec<i8>) -> Result<DehnLoop, LoopError> {
        let n = pair.len();
        if n == 0 || n % 4 != 0 || sign.len() != n {
            return Err(LoopError::Shape);
        }
        for h in 0..n {
            let k = pair[h];
            if k >= n || k == h || pair[k] != h {
                return Err(LoopError::Pairing(h));
            }
            if !matches!(sign[h], 1 | -1) || sign[k] != sign[h] {
                return Err(LoopError::Sign(h, k));
            }
        }
        let mut dsu = Dsu::new(n / 4);
        for h in 0..n {
            dsu.union(h / 4, pair[h] / 4);
        }
        if (0..n / 4).any(|v| dsu.find(v) != dsu.find(0)) {
            return Err(LoopError::Disconnected);
        }
        Ok(DehnLoop::Crossings { pair, sign })
    }

    pub fn crossing_count(&self) -> usize {
        match self {
            DehnLoop::Circle { .. } => 0,
            DehnLoop::Crossings { pair, .. } => pair.len() / 4,
        }
    }

    /// Closed curves obtained by following strands straight through crossings.
    pub fn curve_count(&self) -> usize {
        let DehnLoop::Crossings { pair, .. } = self else {
            return 1;
        };
        let mut seen = vec![false; pair.len()];
        let mut curves = 0;
        for start in 0..pair.len() {
            if seen[start] {
                continue;
            }
            curves += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                let across = h ^ 2;
                seen[across] = true;
                h = pair[across];
            }
        }
        curves
    }

    /// Faces of the complement, traced through the signed rotation system.
    pub fn face_count(&self) -> usize {
        let (pair, sign) = match self {
            DehnLoop::Circle { two_sided } => return if *two_sided { 2 } else { 1 },
            DehnLoop::Crossings { pair, sign } => (pair, sign),
        };
        let n = pair.len();
        let idx = |h: usize, eps: i8| 2 * h + (eps < 0) as usize;
        let mut seen = vec![false; 2 * n];
        let mut orbits = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let (mut h, mut eps) = (start / 2, if start % 2 == 0 { 1i8 } else { -1 });
            while !seen[idx(h, eps)] {
                seen[idx(h, eps)] = true;
                let k = pair[h];
                eps *= sign[h];
                let (v, i) = (k / 4, k % 4);
                h = 4 * v + if eps > 0 { (i + 1) % 4 } else { (i + 3) % 4 };
            }
        }
        orbits / 2
    }

    /// True when vertex flips can make every sign `+`.
    pub fn is_orientable(&self) -> bool {
        let (pair, sign) = match self {
            DehnLoop::Circle { two_sided } => return *two_sided,
            DehnLoop::Crossings { pair, sign } => (pair, sign),
        };
        let v = pair.len() / 4;
        let mut colour: Vec<Option<i8>> = vec![None; v];
        colour[0] = Some(1);
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            let cu = colour[u].expect("coloured before push");
            for h in 4 * u..4 * u + 4 {
                let w = pair[h] / 4;
                let want = cu * sign[h];
                match colour[w] {
                    None => {
                        colour[w] = Some(want);
                        stack.push(w);
                    }
                    Some(c) if c != want => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    pub fn is_filling(&self) -> bool {
        self.crossing_count() >= 1
    }

    /// Canonical encoding, equal exactly for isomorphic loops.
    pub fn code(&self) -> String {
        match self {
            DehnLoop::Circle { two_sided: true } => "loop0:two-sided".into(),
            DehnLoop::Circle { two_sided: false } => "loop0:one-sided".into(),
            DehnLoop::Crossings { .. } => {
                let glue = self.glue();
                let v = self.crossing_count();
                let streams = canonical_streams(Scheme::crossings(), &glue, v);
                render("loop", v, &streams, |l| {
                    if l == 0 {
                        "+".into()
                    } else {
                        "-".into()
                    }
                })
            }
        }
    }

    fn glue(&self) -> Vec<Glue> {
        let DehnLoop::Crossings { pair, sign } = self else {
            return Vec::new();
        };
        pair.iter()
            .zip(sign)
            .map(|(&k, &s)| Glue::To {
                cell: (k / 4) as u32,
                slot: (k % 4) as u8,
                label: (s < 0) as u8,
            })
            .collect()
    }

    fn from_glue(glue: &[Glue]) -> DehnLoop {
        let mut pair = Vec::with_capacity(glue.len());
        let mut sign = Vec::with_capacity(glue.len());
        for g in glue {
            let Glue::To { cell, slot, label } = *g else {
                panic!("complete gluing expected");
            };
            pair.push(4 * cell as usize + slot as usize);
            sign.push(if label == 0 { 1 } else { -1 });
        }
        DehnLoop::Crossings { pair, sign }
    }

    /// Parses the output of [`DehnLoop::code`].
    pub fn from_code(code: &str) -> Result<DehnLoop, ParseError> {
        let err = |m: &str| ParseError::syntax(1, 1, m.to_string());
        match code.trim() {
            "loop0:two-sided" => return Ok(DehnLoop::Circle { two_sided: true }),
            "loop0:one-sided" => return Ok(DehnLoop::Circle { two_sided: false }),
            _ => {}
        }
        let body = code
            .trim()
            .strip_prefix("loop")
            .ok_or_else(|| err("expected 'loop'"))?;
        let (count, tokens) = body.split_once(':').ok_or_else(|| err("expected ':'"))?;
        let v: usize = count.parse().map_err(|_| err("invalid crossing count"))?;
        let mut pair = Vec::with_capacity(4 * v);
        let mut sign = Vec::with_capacity(4 * v);
        for tok in tokens.split(',') {
            let parts: Vec<&str> = tok.split('.').collect();
            let [j, g, s] = parts.as_slice() else {
                return Err(err(&format!("invalid token '{tok}'")));
            };
            let j: usize = j
                .parse()
                .map_err(|_| err(&format!("invalid token '{tok}'")))?;
            let g: usize = g
                .parse()
                .map_err(|_| err(&format!("invalid token '{tok}'")))?;
            if g >= 4 {
                return Err(err(&format!("invalid slot in '{tok}'")));
            }
            pair.push(4 * j + g);
            sign.push(match *s {
                "+" => 1,
                "-" => -1,
                _ => return Err(err(&format!("invalid sign in '{tok}'"))),
            });
        }
        if pair.len() != 4 * v {
            return Err(err("token count does not match the crossing count"));
        }
        DehnLoop::new(pair, sign).map_err(|e| err(&e.to_string()))
    }
}

/// Surface carrying the loop as a quasi-filling curve system, and the
/// number of complementary discs.
pub fn loop_surface(l: &DehnLoop) -> (SurfaceType, usize) {
    let f = l.face_count();
    let euler = f as i64 - l.crossing_count() as i64;
    let s = SurfaceType::from_euler(euler, l.is_orientable())
        .expect("rotation systems describe closed surfaces");
    (s, f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopRecord {
    pub code: String,
    pub crossings: usize,
    pub surface: SurfaceType,
    pub filling: bool,
    pub face_count: usize,
}

impl LoopRecord {
    pub fn of(l: &DehnLoop) -> LoopRecord {
        let (surface, face_count) = loop_surface(l);
        LoopRecord {
            code: l.code(),
            crossings: l.crossing_count(),
            surface,
            filling: l.is_filling(),
            face_count,
        }
    }

    pub fn dehn_loop(&self) -> DehnLoop {
        DehnLoop::from_code(&self.code).expect("records hold valid codes")
    }
}

impl fmt::Display for LoopRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} surface={} faces={} filling={} code={}",
            self.crossings, self.surface, self.face_count, self.filling as u8, self.code
        )
    }
}

pub const MAX_ENUMERATED_CROSSINGS: usize = 4;

/// All Dehn loops with at most `max_v` crossings up to isomorphism, ordered
/// by crossing count and then code.
pub fn enumerate_dehn_loops(max_v: usize) -> Vec<LoopRecord> {
    assert!(
        max_v <= MAX_ENUMERATED_CROSSINGS,
        "enumeration is limited to {MAX_ENUMERATED_CROSSINGS} crossings"
    );
    let mut out = vec![
        LoopRecord::of(&DehnLoop::Circle { two_sided: false }),
        LoopRecord::of(&DehnLoop::Circle { two_sided: true }),
    ];
    for v in 1..=max_v {
        let leaf = |p: &Partial| Some(LoopRecord::of(&DehnLoop::from_glue(&p.glue)));
        let mut level = orderly(Scheme::crossings(), v, &|_| true, &leaf, 2);
        level.sort_by(|a, b| a.code.cmp(&b.code));
        level.dedup_by(|a, b| a.code == b.code);
        out.extend(level);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcRow {
    pub surface: SurfaceType,
    pub formula: u64,
    pub enumerated: Option<usize>,
}

impl LcRow {
    pub fn matches(&self) -> bool {
        self.enumerated == Some(self.formula as usize)
    }
}

impl fmt::Display for LcRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found = self
            .enumerated
            .map_or_else(|| "none".to_string(), |v| v.to_string());
        write!(
            f,
            "{} ({}) lc={} min_V={} {}",
            self.surface,
            self.surface.name(),
            self.formula,
            found,
            if self.matches() { "ok" } else { "MISMATCH" }
        )
    }
}

/// Compares enumerated minimum crossings with the formula for every surface
/// that is realized or has formula value at most `max_v`.
pub fn verify_lc(records: &[LoopRecord], max_v: usize) -> Vec<LcRow> {
    let mut min: BTreeMap<SurfaceType, usize> = BTreeMap::new();
    for r in records.iter().filter(|r| r.crossings <= max_v) {
        let e = min.entry(r.surface).or_insert(r.crossings);
        *e = (*e).min(r.crossings);
    }
    let mut surfaces: Vec<SurfaceType> = min.keys().copied().collect();
    // χ >= 1 - max_v covers every formula value up to max_v
    for g in 0..=(max_v as u32 + 2) {
        for s in [
            SurfaceType {
                orientable: true,
                genus: g,
            },
            SurfaceType {
                orientable: false,
                genus: g,
            },
        ] {
            if (s.orientable || g >= 1)
                && loop_complexity_formula(s) <= max_v as u64
                && !surfaces.contains(&s)
            {
                surfaces.push(s);
            }
        }
    }
    surfaces.sort_by_key(|s| (loop_complexity_formula(*s), !s.orientable, s.genus));
    surfaces
        .into_iter()
        .map(|s| LcRow {
            surface: s,
            formula: loop_complexity_formula(s),
            enumerated: min.get(&s).copied(),
        })
        .collect()
}

/// One square per crossing, glued across the loop's edges; square edge `i`
/// at crossing `v` is crossed by half-edge `4v + i`.
pub fn loop_dual_quadrangulation(
    l: &DehnLoop,
) -> Result<(PolygonComplex, SurfaceComponent), LoopError> {
    let DehnLoop::Crossings { pair, sign } = l else {
        return Err(LoopError::NotFilling);
    };
    let mut pc = PolygonComplex::new();
    for _ in 0..pair.len() / 4 {
        pc.add_polygon(4);
    }
    for h in 0..pair.len() {
        let k = pair[h];
        // a `+` edge matches the angle after `h` with the angle before `k`
        pc.glue(h / 4, h % 4, k / 4, k % 4, sign[h] > 0);
    }
    let mut comps = pc.components();
    assert_eq!(comps.len(), 1, "connected loops have connected duals");
    let comp = comps.pop().expect("one component");
    Ok((pc, comp))
}
