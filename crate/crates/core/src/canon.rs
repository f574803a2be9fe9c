//! Canonical forms and orderly generation for complexes built from one kind
//! of cell with labelled gluings.
//!
//! A complex is a table of slots. Each cell has a finite group of frames
//! (relabellings of its slots), and every gluing carries a label code that
//! transforms when the frames at its two ends change. A breadth-first walk
//! from a root cell in a chosen frame discovers further cells and fixes their
//! frames by the rule in [`Scheme::fresh`]; the token stream it emits is a
//! complete description of the relabelled complex. The least stream over all
//! roots is a complete isomorphism invariant.

use std::cmp::Ordering;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::cells::{CubeSymmetry, Dihedral, Perm4};
use crate::cubulation::{CubeGluing, Cubulation};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Glue {
    Open,
    Boundary,
    To { cell: u32, slot: u8, label: u8 },
}

/// Frame action tables for one cell kind.
pub(crate) struct Scheme {
    pub slots: usize,
    pub frames: usize,
    pub labels: usize,
    map: Vec<u8>,
    unmap: Vec<u8>,
    relabel: Vec<u8>,
    fresh: Vec<u8>,
    inverse: Vec<u8>,
}

impl Scheme {
    fn build(
        slots: usize,
        frames: usize,
        labels: usize,
        map_slot: impl Fn(usize, u8) -> u8,
        relabel: impl Fn(usize, u8, u8, usize, u8) -> u8,
        fresh: impl Fn(usize, u8, u8, u8) -> usize,
        inverse: impl Fn(u8) -> u8,
    ) -> Scheme {
        let mut map = vec![0; frames * slots];
        let mut unmap = vec![0; frames * slots];
        for f in 0..frames {
            for s in 0..slots as u8 {
                let t = map_slot(f, s);
                map[f * slots + s as usize] = t;
                unmap[f * slots + t as usize] = s;
            }
        }
        let mut rel = Vec::with_capacity(frames * slots * labels * frames * slots);
        let mut fr = Vec::with_capacity(frames * slots * labels * slots);
        for fu in 0..frames {
            for a in 0..slots as u8 {
                for l in 0..labels as u8 {
                    for fw in 0..frames {
                        for b in 0..slots as u8 {
                            rel.push(relabel(fu, a, l, fw, b));
                        }
                    }
                    for b in 0..slots as u8 {
                        fr.push(fresh(fu, a, l, b) as u8);
                    }
                }
            }
        }
        Scheme {
            slots,
            frames,
            labels,
            map,
            unmap,
            relabel: rel,
            fresh: fr,
            inverse: (0..labels as u8).map(inverse).collect(),
        }
    }

    #[inline]
    fn map(&self, frame: u8, slot: u8) -> u8 {
        self.map[frame as usize * self.slots + slot as usize]
    }

    #[inline]
    fn unmap(&self, frame: u8, slot: u8) -> u8 {
        self.unmap[frame as usize * self.slots + slot as usize]
    }

    #[inline]
    fn relabel(&self, fu: u8, a: u8, l: u8, fw: u8, b: u8) -> u8 {
        let s = self.slots;
        let i = (((fu as usize * s + a as usize) * self.labels + l as usize) * self.frames
            + fw as usize)
            * s
            + b as usize;
        self.relabel[i]
    }

    /// Frame of a newly reached cell, entered through its slot `b`.
    #[inline]
    fn fresh(&self, fu: u8, a: u8, l: u8, b: u8) -> u8 {
        let s = self.slots;
        self.fresh[((fu as usize * s + a as usize) * self.labels + l as usize) * s + b as usize]
    }

    pub fn inverse(&self, l: u8) -> u8 {
        self.inverse[l as usize]
    }

    pub fn cubes() -> &'static Scheme {
        static S: OnceLock<Scheme> = OnceLock::new();
        S.get_or_init(|| {
            let syms = CubeSymmetry::all();
            let d = |l: u8| Dihedral::new(l).expect("dihedral code");
            Scheme::build(
                6,
                syms.len(),
                8,
                |f, s| syms[f].face(s),
                |fu, a, l, fw, b| {
                    syms[fw]
                        .slot_map(b)
                        .compose(d(l))
                        .compose(syms[fu].slot_map(a).inverse())
                        .code()
                },
                |fu, a, l, b| {
                    let map = syms[fu].slot_map(a).compose(d(l).inverse());
                    CubeSymmetry::carrying(b, 0, map).index()
                },
                |l| d(l).inverse().code(),
            )
        })
    }

    pub fn tets() -> &'static Scheme {
        static S: OnceLock<Scheme> = OnceLock::new();
        S.get_or_init(|| {
            let p = |i: usize| Perm4::from_index(i).expect("perm index");
            Scheme::build(
                4,
                24,
                24,
                |f, s| p(f).apply(s),
                |fu, _, l, fw, _| {
                    p(fw)
                        .compose(p(l as usize))
                        .compose(p(fu).inverse())
                        .index() as u8
                },
                |fu, _, l, _| p(fu).compose(p(l as usize).inverse()).index(),
                |l| p(l as usize).inverse().index() as u8,
            )
        })
    }

    /// Four-valent vertices with a rotation of their half-edges; frames are
    /// the dihedral relabellings, label codes are edge signs (`0` = `+`).
    pub fn crossings() -> &'static Scheme {
        static S: OnceLock<Scheme> = OnceLock::new();
        S.get_or_init(|| {
            let apply = |f: usize, s: u8| {
                let (r, flip) = ((f & 3) as u8, f >= 4);
                if flip {
                    (r + 4 - s) & 3
                } else {
                    (s + r) & 3
                }
            };
            Scheme::build(
                4,
                8,
                2,
                apply,
                |fu, _, l, fw, _| l ^ (fu >= 4) as u8 ^ (fw >= 4) as u8,
                |fu, _, l, b| {
                    if l ^ (fu >= 4) as u8 == 0 {
                        ((4 - b) & 3) as usize
                    } else {
                        4 + b as usize
                    }
                },
                |l| l,
            )
        })
    }
}

const BOUNDARY_TOKEN: u64 = u64::MAX;

#[inline]
fn token(cell: u32, slot: u8, label: u8) -> u64 {
    (cell as u64) << 16 | (slot as u64) << 8 | label as u64
}

pub(crate) fn decode(t: u64) -> Option<(usize, u8, u8)> {
    (t != BOUNDARY_TOKEN).then(|| ((t >> 16) as usize, (t >> 8) as u8, t as u8))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Less,
    Equal,
    Greater,
}

/// Reusable buffers for walks over one complex.
pub(crate) struct Walker {
    new_index: Vec<u32>,
    frame: Vec<u8>,
    order: Vec<u32>,
    pub out: Vec<u64>,
}

impl Walker {
    pub fn new(cells: usize) -> Walker {
        Walker {
            new_index: vec![u32::MAX; cells],
            frame: vec![0; cells],
            order: Vec::with_capacity(cells),
            out: Vec::new(),
        }
    }

    /// Emits the stream of the walk rooted at `(root, frame)` into `self.out`,
    /// stopping at the first open slot. With a `bound`, the walk stops as soon
    /// as the verdict against it is decided (for `Less` only if `stop_on_less`).
    fn walk(
        &mut self,
        scheme: &Scheme,
        glue: &[Glue],
        root: usize,
        frame: u8,
        bound: Option<&[u64]>,
        stop_on_less: bool,
    ) -> Verdict {
        let s = scheme.slots;
        self.out.clear();
        self.order.clear();
        self.order.push(root as u32);
        self.new_index[root] = 0;
        self.frame[root] = frame;
        let mut verdict = if bound.is_some() {
            Verdict::Equal
        } else {
            Verdict::Less
        };
        let mut i = 0;
        'walk: while i < self.order.len() {
            let u = self.order[i] as usize;
            let fu = self.frame[u];
            for ns in 0..s as u8 {
                let a = scheme.unmap(fu, ns);
                let tok = match glue[u * s + a as usize] {
                    Glue::Open => break 'walk,
                    Glue::Boundary => BOUNDARY_TOKEN,
                    Glue::To {
                        cell,
                        slot: b,
                        label,
                    } => {
                        let w = cell as usize;
                        if self.new_index[w] == u32::MAX {
                            self.new_index[w] = self.order.len() as u32;
                            self.frame[w] = scheme.fresh(fu, a, label, b);
                            self.order.push(cell);
                        }
                        let fw = self.frame[w];
                        token(
                            self.new_index[w],
                            scheme.map(fw, b),
                            scheme.relabel(fu, a, label, fw, b),
                        )
                    }
                };
                if verdict == Verdict::Equal {
                    let bound = bound.expect("Equal only with a bound");
                    let Some(&b) = bound.get(self.out.len()) else {
                        break 'walk;
                    };
                    match tok.cmp(&b) {
                        Ordering::Less => {
                            verdict = Verdict::Less;
                            if stop_on_less {
                                self.out.push(tok);
                                break 'walk;
                            }
                        }
                        Ordering::Greater => {
                            verdict = Verdict::Greater;
                            break 'walk;
                        }
                        Ordering::Equal => {}
                    }
                }
                self.out.push(tok);
            }
            i += 1;
        }
        for &c in &self.order {
            self.new_index[c as usize] = u32::MAX;
        }
        verdict
    }

    fn reached(&self) -> &[u32] {
        &self.order
    }
}

/// Least stream over all roots in the component of `seed`, and the cells of
/// that component.
pub(crate) fn component_min_stream(
    scheme: &Scheme,
    glue: &[Glue],
    seed: usize,
    walker: &mut Walker,
) -> (Vec<u64>, Vec<u32>) {
    walker.walk(scheme, glue, seed, 0, None, false);
    let mut cells = walker.reached().to_vec();
    cells.sort_unstable();
    let mut best = walker.out.clone();
    for &c in &cells {
        for f in 0..scheme.frames as u8 {
            if walker.walk(scheme, glue, c as usize, f, Some(&best), false) == Verdict::Less {
                best.clone_from(&walker.out);
            }
        }
    }
    (best, cells)
}

/// Canonical streams of all components, sorted.
pub(crate) fn canonical_streams(scheme: &Scheme, glue: &[Glue], cells: usize) -> Vec<Vec<u64>> {
    let mut walker = Walker::new(cells);
    let mut seen = vec![false; cells];
    let mut streams = Vec::new();
    for seed in 0..cells {
        if seen[seed] {
            continue;
        }
        let (stream, comp) = component_min_stream(scheme, glue, seed, &mut walker);
        for c in comp {
            seen[c as usize] = true;
        }
        streams.push(stream);
    }
    streams.sort();
    streams
}

/// Renders streams as `prefix{cells}:` followed by `j.g.l` tokens, with
/// components separated by `|`.
pub(crate) fn render(
    prefix: &str,
    cells: usize,
    streams: &[Vec<u64>],
    label: impl Fn(u8) -> String,
) -> String {
    if cells == 0 {
        return format!("{prefix}0");
    }
    let comps: Vec<String> = streams
        .iter()
        .map(|s| {
            s.iter()
                .map(|&t| match decode(t) {
                    Some((j, g, l)) => format!("{j}.{g}.{}", label(l)),
                    None => "-".to_string(),
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("{prefix}{cells}:{}", comps.join("|"))
}

pub(crate) fn cubulation_glue(cub: &Cubulation) -> Vec<Glue> {
    cub.rows()
        .iter()
        .flat_map(|row| {
            row.iter().map(|g| Glue::To {
                cell: g.cube as u32,
                slot: g.face,
                label: g.sym.code(),
            })
        })
        .collect()
}

pub(crate) fn triangulation_glue(tri: &Triangulation) -> Vec<Glue> {
    tri.rows()
        .iter()
        .flat_map(|row| {
            row.iter().map(|g| match g {
                Some(g) => Glue::To {
                    cell: g.tet as u32,
                    slot: g.face,
                    label: g.perm.index() as u8,
                },
                None => Glue::Boundary,
            })
        })
        .collect()
}

/// Printable isomorphism invariant of a cubulation: equal exactly for
/// cubulations related by renumbering cubes and applying cube symmetries.
pub fn canonical_signature(cub: &Cubulation) -> String {
    let streams = canonical_streams(Scheme::cubes(), &cubulation_glue(cub), cub.cube_count());
    render("cub", cub.cube_count(), &streams, |l| l.to_string())
}

/// As [`canonical_signature`], for triangulations (unglued faces render as `-`).
pub fn triangulation_signature(tri: &Triangulation) -> String {
    let streams = canonical_streams(Scheme::tets(), &triangulation_glue(tri), tri.tet_count());
    render("tri", tri.tet_count(), &streams, |l| l.to_string())
}

/// The relabelled cubulation whose gluing table is the canonical stream.
/// Components are laid out in signature order.
pub fn canonical_form(cub: &Cubulation) -> Cubulation {
    let streams = canonical_streams(Scheme::cubes(), &cubulation_glue(cub), cub.cube_count());
    let mut rows = Vec::with_capacity(cub.cube_count());
    for s in &streams {
        let base = rows.len();
        for chunk in s.chunks(6) {
            let mut row = [None; 6];
            for (f, &t) in chunk.iter().enumerate() {
                let (j, g, l) = decode(t).expect("cubulations are closed");
                row[f] = Some(CubeGluing {
                    cube: base + j,
                    face: g,
                    sym: Dihedral::new(l).expect("dihedral code"),
                });
            }
            rows.push(row);
        }
    }
    Cubulation::new(rows).expect("canonical stream describes an isomorphic cubulation")
}

pub(crate) fn glue_to_cubulation(glue: &[Glue]) -> Cubulation {
    let rows = glue
        .chunks(6)
        .map(|chunk| {
            let mut row = [None; 6];
            for (f, g) in chunk.iter().enumerate() {
                if let Glue::To { cell, slot, label } = *g {
                    row[f] = Some(CubeGluing {
                        cube: cell as usize,
                        face: slot,
                        sym: Dihedral::new(label).expect("dihedral code"),
                    });
                }
            }
            row
        })
        .collect();
    Cubulation::new(rows).expect("generated gluings are involutions")
}

/// A partial gluing built in the normal form of the walk rooted at cell 0
/// in frame 0: slots are filled in walk order and each new cell is entered
/// through its slot 0 with label 0.
#[derive(Clone)]
pub(crate) struct Partial {
    pub glue: Vec<Glue>,
    pub cells: usize,
    /// First slot index that may still be open.
    pos: usize,
}

/// Orderly generation of all connected complexes with `cells` cells, one
/// per isomorphism class. `keep` may reject partial gluings whose every
/// completion is unwanted; `leaf` maps accepted complete gluings to outputs.
pub(crate) fn orderly<T: Send>(
    scheme: &'static Scheme,
    cells: usize,
    keep: &(dyn Fn(&Partial) -> bool + Sync),
    leaf: &(dyn Fn(&Partial) -> Option<T> + Sync),
    split_depth: usize,
) -> Vec<T> {
    assert!(cells >= 1);
    let root = Partial {
        glue: vec![Glue::Open; cells * scheme.slots],
        cells: 1,
        pos: 0,
    };
    let mut frontier = Vec::new();
    let mut early = Vec::new();
    collect_frontier(
        scheme,
        cells,
        root,
        split_depth,
        keep,
        &mut frontier,
        &mut early,
    );
    let mut out: Vec<T> = early.iter().filter_map(|p| leaf(p)).collect();
    let nested: Vec<Vec<T>> = frontier
        .into_par_iter()
        .map(|p| {
            let mut gen = Generator {
                scheme,
                target: cells,
                walker: Walker::new(cells),
                keep,
                leaf,
                out: Vec::new(),
            };
            let mut p = p;
            gen.recurse(&mut p);
            gen.out
        })
        .collect();
    out.extend(nested.into_iter().flatten());
    out
}

fn collect_frontier(
    scheme: &'static Scheme,
    target: usize,
    p: Partial,
    depth: usize,
    keep: &(dyn Fn(&Partial) -> bool + Sync),
    frontier: &mut Vec<Partial>,
    leaves: &mut Vec<Partial>,
) {
    if depth == 0 {
        frontier.push(p);
        return;
    }
    let mut walker = Walker::new(target);
    let mut children = Vec::new();
    let complete = for_each_child(scheme, target, &p, &mut walker, keep, &mut |c| {
        children.push(c.clone())
    });
    if complete {
        leaves.push(p);
    }
    for c in children {
        collect_frontier(scheme, target, c, depth - 1, keep, frontier, leaves);
    }
}

struct Generator<'a, T> {
    scheme: &'static Scheme,
    target: usize,
    walker: Walker,
    keep: &'a (dyn Fn(&Partial) -> bool + Sync),
    leaf: &'a (dyn Fn(&Partial) -> Option<T> + Sync),
    out: Vec<T>,
}

impl<T> Generator<'_, T> {
    fn recurse(&mut self, p: &mut Partial) {
        let s = self.scheme.slots;
        while p.pos < p.cells * s && p.glue[p.pos] != Glue::Open {
            p.pos += 1;
        }
        if p.pos == p.cells * s {
            if p.cells == self.target {
                if let Some(t) = (self.leaf)(p) {
                    self.out.push(t);
                }
            }
            return;
        }
        let here = p.pos;
        for q in here + 1..p.cells * s {
            if p.glue[q] != Glue::Open {
                continue;
            }
            for l in 0..self.scheme.labels as u8 {
                set_pair(self.scheme, p, here, q, l);
                if self.admissible(p) {
                    let saved = p.pos;
                    self.recurse(p);
                    p.pos = saved;
                }
                p.glue[here] = Glue::Open;
                p.glue[q] = Glue::Open;
            }
        }
        if p.cells < self.target {
            let fresh = p.cells * s;
            p.cells += 1;
            set_pair(self.scheme, p, here, fresh, 0);
            if self.admissible(p) {
                let saved = p.pos;
                self.recurse(p);
                p.pos = saved;
            }
            p.glue[here] = Glue::Open;
            p.glue[fresh] = Glue::Open;
            p.cells -= 1;
        }
    }

    fn admissible(&mut self, p: &Partial) -> bool {
        (self.keep)(p) && !dominated(self.scheme, p, &mut self.walker)
    }
}

/// Applies `f` to every admissible one-step extension; returns true when
/// `p` is already complete.
fn for_each_child(
    scheme: &'static Scheme,
    target: usize,
    p: &Partial,
    walker: &mut Walker,
    keep: &(dyn Fn(&Partial) -> bool + Sync),
    f: &mut dyn FnMut(&Partial),
) -> bool {
    let s = scheme.slots;
    let mut p = p.clone();
    while p.pos < p.cells * s && p.glue[p.pos] != Glue::Open {
        p.pos += 1;
    }
    if p.pos == p.cells * s {
        return p.cells == target;
    }
    let here = p.pos;
    for q in here + 1..p.cells * s {
        if p.glue[q] != Glue::Open {
            continue;
        }
        for l in 0..scheme.labels as u8 {
            let mut c = p.clone();
            set_pair(scheme, &mut c, here, q, l);
            if keep(&c) && !dominated(scheme, &c, walker) {
                f(&c);
            }
        }
    }
    if p.cells < target {
        let mut c = p.clone();
        let fresh = c.cells * s;
        c.cells += 1;
        set_pair(scheme, &mut c, here, fresh, 0);
        if keep(&c) && !dominated(scheme, &c, walker) {
            f(&c);
        }
    }
    false
}

fn set_pair(scheme: &Scheme, p: &mut Partial, x: usize, y: usize, label: u8) {
    let s = scheme.slots;
    p.glue[x] = Glue::To {
        cell: (y / s) as u32,
        slot: (y % s) as u8,
        label,
    };
    p.glue[y] = Glue::To {
        cell: (x / s) as u32,
        slot: (x % s) as u8,
        label: scheme.inverse(label),
    };
}

/// True when some other root already walks to a strictly smaller stream
/// prefix, so no completion of `p` is in normal form for its least root.
fn dominated(scheme: &Scheme, p: &Partial, walker: &mut Walker) -> bool {
    walker.walk(scheme, &p.glue, 0, 0, None, false);
    let reference = std::mem::take(&mut walker.out);
    let mut result = false;
    'roots: for c in 0..p.cells {
        for f in 0..scheme.frames as u8 {
            if c == 0 && f == 0 {
                continue;
            }
            if walker.walk(scheme, &p.glue, c, f, Some(&reference), true) == Verdict::Less {
                result = true;
                break 'roots;
            }
        }
    }
    walker.out = reference;
    result
}
