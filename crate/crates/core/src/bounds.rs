//! Upper bounds for surface-complexity from Heegaard diagrams, framed link
//! diagrams and Matveev complexity.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub bound: u64,
    /// Named inputs of the formula, in display order.
    pub terms: Vec<(String, i64)>,
    /// Assumption under which the bound holds, if any.
    pub conditional: Option<String>,
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "sc <= {} ({})", self.bound, terms.join(", "))?;
        if let Some(c) = &self.conditional {
            write!(f, " [assuming {c}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("m = {m} exceeds the intersection count n = {n}")]
    MTooLarge { m: u64, n: u64 },
    #[error("{0}")]
    Invalid(String),
}

/// Intersection counts of the meridian systems of the two handlebodies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardData {
    pub genus: usize,
    pub intersections: Vec<Vec<u64>>,
    /// Points in the closure of one complementary region, supplied by the user.
    pub m: Option<u64>,
    pub assume_p2_irreducible: bool,
}

impl HeegaardData {
    pub fn new(intersections: Vec<Vec<u64>>) -> Result<HeegaardData, BoundError> {
        let g = intersections.len();
        if g == 0 {
            return Err(BoundError::Invalid("genus must be positive".into()));
        }
        if intersections.iter().any(|r| r.len() != g) {
            return Err(BoundError::Invalid(format!(
                "intersection matrix must be {g}x{g}"
            )));
        }
        Ok(HeegaardData {
            genus: g,
            intersections,
            m: None,
            assume_p2_irreducible: false,
        })
    }

    pub fn intersection_count(&self) -> u64 {
        self.intersections.iter().flatten().sum()
    }
}

/// Line 1 holds the genus `g`, then `g` rows of `g` non-negative integers.
pub fn parse_heegaard(text: &str) -> Result<HeegaardData, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, 1, "missing genus"))?;
    let g: usize = first
        .parse()
        .map_err(|_| ParseError::syntax(line, 1, format!("invalid genus '{first}'")))?;
    let mut rows = Vec::with_capacity(g);
    for (line, text) in lines {
        let row: Result<Vec<u64>, _> = text.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| ParseError::syntax(line, 1, "expected non-negative integers"))?;
        if row.len() != g {
            return Err(ParseError::syntax(
                line,
                1,
                format!("expected {g} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != g {
        return Err(ParseError::syntax(
            line,
            1,
            format!("expected {g} rows, found {}", rows.len()),
        ));
    }
    HeegaardData::new(rows).map_err(|e| ParseError::syntax(line, 1, e.to_string()))
}

/// `sc <= 4n`, and `sc <= 4(n - m)` when `m` is given and the
/// irreducibility assumption is set.
pub fn heegaard_bound(h: &HeegaardData) -> Result<(BoundResult, Option<BoundResult>), BoundError> {
    let n = h.intersection_count();
    if let Some(m) = h.m {
        if m > n {
            return Err(BoundError::MTooLarge { m, n });
        }
    }
    let plain = BoundResult {
        bound: 4 * n,
        terms: vec![("g".into(), h.genus as i64), ("n".into(), n as i64)],
        conditional: None,
    };
    let refined = match (h.m, h.assume_p2_irreducible) {
        (Some(m), true) => Some(BoundResult {
            bound: 4 * (n - m),
            terms: vec![("n".into(), n as i64), ("m".into(), m as i64)],
            conditional: Some("every prime summand is P2-irreducible and none is L(3,1)".into()),
        }),
        _ => None,
    };
    Ok((plain, refined))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: String,
    pub over: bool,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkComponent {
    pub passes: Vec<Pass>,
    pub framing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    pub components: Vec<LinkComponent>,
}

impl FramedLink {
    pub fn crossing_count(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.passes.len())
            .sum::<usize>()
            / 2
    }

    /// Components without an overpass (including crossingless ones).
    pub fn underpass_only_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.passes.iter().all(|p| !p.over))
            .count()
    }

    /// Sum of signs of the crossings both of whose passes lie on component `i`.
    pub fn self_writhe(&self, i: usize) -> i64 {
        let mut counts: BTreeMap<&str, (usize, i8)> = BTreeMap::new();
        for p in &self.components[i].passes {
            let e = counts.entry(&p.crossing).or_insert((0, p.sign));
            e.0 += 1;
        }
        counts
            .values()
            .filter(|(n, _)| *n == 2)
            .map(|&(_, s)| s as i64)
            .sum()
    }

    fn check(&self) -> Result<(), String> {
        let mut seen: BTreeMap<&str, Vec<&Pass>> = BTreeMap::new();
        for c in &self.components {
            for p in &c.passes {
                seen.entry(&p.crossing).or_default().push(p);
            }
        }
        for (id, passes) in seen {
            match passes.as_slice() {
                [a, b] => {
                    if a.over == b.over {
                        let kind = if a.over { "overpasses" } else { "underpasses" };
                        return Err(format!("crossing {id} has two {kind}"));
                    }
                    if a.sign != b.sign {
                        return Err(format!("crossing {id} has mismatched signs"));
                    }
                }
                [_] => return Err(format!("crossing {id} unmatched")),
                more => return Err(format!("crossing {id} appears {} times", more.len())),
            }
        }
        Ok(())
    }
}

/// One component per line: `comp: <id><o|u><+|-> ... ; fr <integer>`.
pub fn parse_gauss_code(text: &str) -> Result<FramedLink, ParseError> {
    let mut components = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        last_line = line;
        let lead = body.len() - body.trim_start().len();
        let rest = body.trim_start();
        let Some(rest) = rest.strip_prefix("comp:") else {
            return Err(ParseError::syntax(line, lead + 1, "expected 'comp:'"));
        };
        let Some(semi) = rest.find(';') else {
            return Err(ParseError::syntax(
                line,
                body.len() + 1,
                "expected '; fr <integer>'",
            ));
        };
        let base = lead + "comp:".len();
        let mut passes = Vec::new();
        let pass_text = &rest[..semi];
        let mut offset = 0;
        for tok in pass_text.split_whitespace() {
            let at = pass_text[offset..].find(tok).expect("token from this text") + offset;
            offset = at + tok.len();
            let col = base + at + 1;
            let bytes = tok.as_bytes();
            if bytes.len() < 3 {
                return Err(ParseError::syntax(
                    line,
                    col,
                    format!("invalid pass '{tok}'"),
                ));
            }
            let sign = match bytes[bytes.len() - 1] {
                b'+' => 1,
                b'-' => -1,
                _ => {
                    return Err(ParseError::syntax(
                        line,
                        col,
                        format!("pass '{tok}' must end in + or -"),
                    ))
                }
            };
            let over = match bytes[bytes.len() - 2] {
                b'o' => true,
                b'u' => false,
                _ => {
                    return Err(ParseError::syntax(
                        line,
                        col,
                        format!("pass '{tok}' needs o or u before its sign"),
                    ))
                }
            };
            passes.push(Pass {
                crossing: tok[..tok.len() - 2].to_string(),
                over,
                sign,
            });
        }
        let tail = rest[semi + 1..].trim();
        let tail_col = base + semi + 2;
        let framing = tail
            .strip_prefix("fr")
            .map(str::trim)
            .and_then(|v| v.parse::<i64>().ok())
            .ok_or_else(|| {
                ParseError::syntax(
                    line,
                    tail_col,
                    format!("expected 'fr <integer>', found '{tail}'"),
                )
            })?;
        components.push(LinkComponent { passes, framing });
    }
    let link = FramedLink { components };
    link.check()
        .map_err(|msg| ParseError::syntax(last_line, 1, msg))?;
    Ok(link)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FramingMode {
    Blackboard,
    Explicit,
}

/// `8n + 4m`, plus `4 Σ |fr_i - w_i|` in explicit mode.
pub fn surgery_bound(link: &FramedLink, mode: FramingMode) -> BoundResult {
    let n = link.crossing_count() as u64;
    let m = link.underpass_only_count() as u64;
    let mut terms = vec![("n".to_string(), n as i64), ("m".to_string(), m as i64)];
    let mut bound = 8 * n + 4 * m;
    if mode == FramingMode::Explicit {
        let correction: u64 = (0..link.components.len())
            .map(|i| (link.components[i].framing - link.self_writhe(i)).unsigned_abs())
            .sum();
        terms.push(("sum|fr-w|".to_string(), correction as i64));
        bound += 4 * correction;
    }
    BoundResult {
        bound,
        terms,
        conditional: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Known {
    Matveev(u64),
    Surface(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exception {
    L31,
    L41,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatveevReport {
    /// Interval for the other complexity, absent for the exceptional spaces.
    pub interval: Option<(u64, u64)>,
    pub text: String,
}

/// `sc <= 4c` and `c <= 8 sc` for closed P2-irreducible manifolds other
/// than L(3,1) and L(4,1).
pub fn matveev_relation(known: Known, exception: Option<Exception>) -> MatveevReport {
    match exception {
        Some(Exception::L31) => MatveevReport {
            interval: None,
            text: "c=0, sc>0, relation inapplicable".into(),
        },
        Some(Exception::L41) => MatveevReport {
            interval: None,
            text: "c>0, sc=0, relation inapplicable".into(),
        },
        None => match known {
            Known::Matveev(c) => {
                let (lo, hi) = (c.div_ceil(8), 4 * c);
                MatveevReport {
                    interval: Some((lo, hi)),
                    text: format!("sc in [{lo}, {hi}] (c={c})"),
                }
            }
            Known::Surface(sc) => {
                let (lo, hi) = (sc.div_ceil(4), 8 * sc);
                MatveevReport {
                    interval: Some((lo, hi)),
                    text: format!("c in [{lo}, {hi}] (sc={sc})"),
                }
            }
        },
    }
}
