//! Integer homology of Δ-complexes through Smith normal form.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cells::{tet_face_vertices, TET_EDGES};
use crate::cubulation::Cubulation;
use crate::subdivide::{barycentric_subdivision, cone_subdivision};
use crate::triangulation::{Skeleton, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().cloned().map(Into::into))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    fn at(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    fn add(&mut self, r: usize, c: usize, v: i32) {
        *self.at(r, c) += v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.at(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for c in from..self.cols {
            let v = self.get(src, c) * q;
            if !v.is_zero() {
                *self.at(dst, c) -= v;
            }
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for r in from..self.rows {
            let v = self.get(r, src) * q;
            if !v.is_zero() {
                *self.at(r, dst) -= v;
            }
        }
    }
}

/// Invariant factors `d1 | d2 | ...` of `a`, padded with zeros to
/// `min(rows, cols)` entries.
pub fn smith_normal_form(a: &IntegerMatrix) -> Vec<BigInt> {
    let n = a.rows.min(a.cols);
    let (units, core) = eliminate_unit_pivots(a);
    let mut diag = vec![BigInt::one(); units];
    diag.extend(dense_smith(core).into_iter().filter(|d| !d.is_zero()));
    diag.resize(n, BigInt::zero());
    diag
}

/// Sparse elimination on entries `±1`, each contributing an invariant
/// factor 1. Pivots are chosen to limit fill-in. Returns the count and the
/// remaining nonzero block.
fn eliminate_unit_pivots(a: &IntegerMatrix) -> (usize, IntegerMatrix) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..a.rows)
        .map(|r| {
            (0..a.cols)
                .filter(|&c| !a.get(r, c).is_zero())
                .map(|c| (c, a.get(r, c).clone()))
                .collect()
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut units = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                if v.magnitude().is_one() {
                    let cost = (row.len() - 1) * (col_rows[c].len() - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, r, c));
                    }
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[r]);
        for &c2 in pivot_row.keys() {
            col_rows[c2].remove(&r);
        }
        let p = &pivot_row[&c];
        let others: Vec<usize> = col_rows[c].iter().copied().collect();
        for k in others {
            // p is a unit, so a_kc / p = a_kc * p
            let q = &rows[k][&c] * p;
            for (&c2, v) in &pivot_row {
                let entry = rows[k].entry(c2).or_insert_with(BigInt::zero);
                *entry -= &q * v;
                if entry.is_zero() {
                    rows[k].remove(&c2);
                    col_rows[c2].remove(&k);
                } else {
                    col_rows[c2].insert(k);
                }
            }
        }
        units += 1;
    }
    let live_rows: Vec<usize> = (0..a.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..a.cols).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut core = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for (j, &c) in live_cols.iter().enumerate() {
            if let Some(v) = rows[r].get(&c) {
                *core.at(i, j) = v.clone();
            }
        }
    }
    (units, core)
}

fn dense_smith(mut m: IntegerMatrix) -> Vec<BigInt> {
    let n = m.rows.min(m.cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        if !move_min_pivot(&mut m, t) {
            break;
        }
        loop {
            let mut dirty = false;
            for r in t + 1..m.rows {
                if !m.get(r, t).is_zero() {
                    let q = m.get(r, t).div_floor(m.get(t, t));
                    m.row_sub(r, t, &q, t);
                    dirty |= !m.get(r, t).is_zero();
                }
            }
            for c in t + 1..m.cols {
                if !m.get(t, c).is_zero() {
                    let q = m.get(t, c).div_floor(m.get(t, t));
                    m.col_sub(c, t, &q, t);
                    dirty |= !m.get(t, c).is_zero();
                }
            }
            if dirty {
                move_min_pivot_in_cross(&mut m, t);
                continue;
            }
            // divisibility repair: fold a row holding a non-multiple into row t
            let p = m.get(t, t).clone();
            let bad =
                (t + 1..m.rows).find(|&r| (t + 1..m.cols).any(|c| !m.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    let one = BigInt::one();
                    m.row_sub(t, r, &-one, t);
                }
                None => break,
            }
        }
        diag.push(m.get(t, t).abs());
    }
    diag.resize(n, BigInt::zero());
    diag
}

/// Brings the entry of least nonzero absolute value in the lower-right block
/// at `t` to position `(t, t)`; false when the block is zero.
fn move_min_pivot(m: &mut IntegerMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows {
        for c in t..m.cols {
            let v = m.get(r, c);
            if !v.is_zero() && best.is_none_or(|(br, bc)| v.magnitude() < m.get(br, bc).magnitude())
            {
                best = Some((r, c));
            }
        }
    }
    let Some((r, c)) = best else { return false };
    m.swap_rows(t, r);
    m.swap_cols(t, c);
    true
}

/// After a reduction pass only row `t` and column `t` hold remainders.
fn move_min_pivot_in_cross(m: &mut IntegerMatrix, t: usize) {
    let mut best = (t, t);
    for r in t + 1..m.rows {
        let v = m.get(r, t);
        if !v.is_zero() && v.magnitude() < m.get(best.0, best.1).magnitude() {
            best = (r, t);
        }
    }
    for c in t + 1..m.cols {
        let v = m.get(t, c);
        if !v.is_zero() && v.magnitude() < m.get(best.0, best.1).magnitude() {
            best = (t, c);
        }
    }
    m.swap_rows(t, best.0);
    m.swap_cols(t, best.1);
}

/// Rank `rank` plus torsion invariants `d1 | d2 | ...`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyProfile {
    pub groups: [AbelianGroup; 4],
}

impl HomologyProfile {
    pub fn h(&self, i: usize) -> &AbelianGroup {
        &self.groups[i]
    }

    pub fn betti(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|i| self.groups[i].rank)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let b = self.betti();
        b[0] as i64 - b[1] as i64 + b[2] as i64 - b[3] as i64
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.groups;
        write!(f, "{a}|{b}|{c}|{d}")
    }
}

/// Cellular boundary maps `[∂1, ∂2, ∂3]` on the orbit cells, oriented by
/// the sorted vertex labels of each class representative. The orbit cells
/// form a chain complex only when no edge is identified with itself in
/// reverse; see [`chain_model`].
pub fn boundary_matrices(tri: &Triangulation) -> [IntegerMatrix; 3] {
    let sk = Skeleton::build(tri);
    let n = tri.tet_count();
    let mut d1 = IntegerMatrix::zeros(sk.vertex_count, sk.edge_count);
    let mut d2 = IntegerMatrix::zeros(sk.edge_count, sk.face_count);
    let mut d3 = IntegerMatrix::zeros(sk.face_count, n);

    let mut edge_done = vec![false; sk.edge_count];
    let mut face_done = vec![false; sk.face_count];
    for t in 0..n {
        for &(a, b) in &TET_EDGES {
            let (e, sign) = sk.edge(t, a, b);
            if sign == 1 && !std::mem::replace(&mut edge_done[e], true) {
                d1.add(sk.vertex(t, b), e, 1);
                d1.add(sk.vertex(t, a), e, -1);
            }
        }
        for f in 0..4u8 {
            let (class, sign) = sk.face(t, f);
            d3.add(class, t, if f % 2 == 0 { sign } else { -sign });
            if sign == 1 && !std::mem::replace(&mut face_done[class], true) {
                let [a, b, c] = tet_face_vertices(f);
                for (x, y, coeff) in [(b, c, 1), (a, c, -1), (a, b, 1)] {
                    let (e, s) = sk.edge(t, x, y);
                    d2.add(e, class, coeff * s);
                }
            }
        }
    }
    [d1, d2, d3]
}

fn rank_and_torsion(m: &IntegerMatrix) -> (usize, Vec<BigInt>) {
    let diag = smith_normal_form(m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    (rank, torsion)
}

/// The complex whose orbit cells compute the homology of `tri`: `tri`
/// itself, or its barycentric subdivision when some edge is reversed.
pub fn chain_model(tri: &Triangulation) -> Cow<'_, Triangulation> {
    if Skeleton::build(tri).reversed_edges.is_empty() {
        Cow::Borrowed(tri)
    } else {
        Cow::Owned(barycentric_subdivision(tri))
    }
}

pub fn homology_groups(tri: &Triangulation) -> HomologyProfile {
    let ds = boundary_matrices(&chain_model(tri));
    let sizes = [ds[0].rows(), ds[0].cols(), ds[1].cols(), ds[2].cols()];
    let mut ranks = [0usize; 5];
    let mut torsion: [Vec<BigInt>; 5] = Default::default();
    for (i, d) in ds.iter().enumerate() {
        let (r, t) = rank_and_torsion(d);
        ranks[i + 1] = r;
        torsion[i + 1] = t;
    }
    let groups = [0, 1, 2, 3].map(|i| AbelianGroup {
        rank: sizes[i] - ranks[i] - ranks[i + 1],
        torsion: std::mem::take(&mut torsion[i + 1]),
    });
    HomologyProfile { groups }
}

/// Homology of a cubulation, computed on its cone subdivision.
pub fn cubulation_homology(cub: &Cubulation) -> HomologyProfile {
    homology_groups(&cone_subdivision(cub))
}
