//! Surfaces assembled from polygons glued edge to edge.

use crate::dsu::Dsu;

/// Edge `e` of a polygon runs from corner `e` to corner `e + 1`. A gluing
/// that is not `reversed` identifies corner `e` with corner `f` and `e + 1`
/// with `f + 1`; a reversed one swaps the ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeGluing {
    pub polygon: usize,
    pub edge: usize,
    pub reversed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct PolygonComplex {
    sides: Vec<usize>,
    offset: Vec<usize>,
    glue: Vec<Option<EdgeGluing>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceComponent {
    pub euler: i64,
    pub orientable: bool,
    pub closed: bool,
    pub polygons: usize,
}

impl SurfaceComponent {
    /// Orientable genus for `χ = 2 - 2g`, non-orientable genus for `χ = 2 - g`.
    pub fn genus(&self) -> i64 {
        if self.orientable {
            (2 - self.euler) / 2
        } else {
            2 - self.euler
        }
    }
}

impl PolygonComplex {
    pub fn new() -> PolygonComplex {
        PolygonComplex::default()
    }

    pub fn add_polygon(&mut self, sides: usize) -> usize {
        self.offset.push(self.glue.len());
        self.sides.push(sides);
        self.glue.extend(std::iter::repeat(None).take(sides));
        self.sides.len() - 1
    }

    pub fn polygon_count(&self) -> usize {
        self.sides.len()
    }

    fn slot(&self, p: usize, e: usize) -> usize {
        self.offset[p] + e
    }

    pub fn gluing(&self, p: usize, e: usize) -> Option<EdgeGluing> {
        self.glue[self.slot(p, e)]
    }

    /// Glues both sides; re-gluing an edge the same way is a no-op.
    pub fn glue(&mut self, p: usize, e: usize, q: usize, f: usize, reversed: bool) {
        let (x, y) = (self.slot(p, e), self.slot(q, f));
        assert_ne!(x, y, "an edge cannot be glued to itself");
        let there = EdgeGluing {
            polygon: q,
            edge: f,
            reversed,
        };
        let back = EdgeGluing {
            polygon: p,
            edge: e,
            reversed,
        };
        assert!(
            self.glue[x].is_none_or(|g| g == there),
            "edge {p}:{e} glued twice"
        );
        assert!(
            self.glue[y].is_none_or(|g| g == back),
            "edge {q}:{f} glued twice"
        );
        self.glue[x] = Some(there);
        self.glue[y] = Some(back);
    }

    fn corner_classes(&self) -> (Vec<usize>, usize) {
        let mut dsu = Dsu::new(self.glue.len());
        for p in 0..self.polygon_count() {
            let k = self.sides[p];
            for e in 0..k {
                let Some(g) = self.gluing(p, e) else { continue };
                let kk = self.sides[g.polygon];
                let (a, b) = (e, (e + 1) % k);
                let (c, d) = (g.edge, (g.edge + 1) % kk);
                let (c, d) = if g.reversed { (d, c) } else { (c, d) };
                dsu.union(self.slot(p, a), self.slot(g.polygon, c));
                dsu.union(self.slot(p, b), self.slot(g.polygon, d));
            }
        }
        dsu.classes()
    }

    pub fn vertex_count(&self) -> usize {
        self.corner_classes().1
    }

    pub fn components(&self) -> Vec<SurfaceComponent> {
        let n = self.polygon_count();
        let mut dsu = Dsu::new(n);
        for (x, g) in self.glue.iter().enumerate() {
            if let Some(g) = g {
                dsu.union(self.polygon_of(x), g.polygon);
            }
        }
        let (comp_of, count) = dsu.classes();
        let mut out = vec![
            SurfaceComponent {
                euler: 0,
                orientable: true,
                closed: true,
                polygons: 0,
            };
            count
        ];
        for p in 0..n {
            out[comp_of[p]].euler += 1;
            out[comp_of[p]].polygons += 1;
        }
        let (corner_of, corners) = self.corner_classes();
        let mut seen = vec![false; corners];
        for (x, &c) in corner_of.iter().enumerate() {
            if !std::mem::replace(&mut seen[c], true) {
                out[comp_of[self.polygon_of(x)]].euler += 1;
            }
        }
        for (x, g) in self.glue.iter().enumerate() {
            let comp = &mut out[comp_of[self.polygon_of(x)]];
            match g {
                // each glued pair is met from both sides
                Some(g) if self.slot(g.polygon, g.edge) > x => comp.euler -= 1,
                Some(_) => {}
                None => {
                    comp.euler -= 1;
                    comp.closed = false;
                }
            }
        }
        for (p, ok) in self.orientations().into_iter().enumerate() {
            if !ok {
                out[comp_of[p]].orientable = false;
            }
        }
        out
    }

    /// Per polygon: false for every polygon whose component admits no
    /// consistent orientation.
    fn orientations(&self) -> Vec<bool> {
        let n = self.polygon_count();
        let mut sign = vec![0i8; n];
        let mut ok = vec![true; n];
        let mut members = Vec::new();
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            members.clear();
            members.push(start);
            let mut consistent = true;
            let mut i = 0;
            while i < members.len() {
                let p = members[i];
                for e in 0..self.sides[p] {
                    let Some(g) = self.gluing(p, e) else { continue };
                    // matching boundary directions force opposite orientations
                    let want = if g.reversed { sign[p] } else { -sign[p] };
                    if sign[g.polygon] == 0 {
                        sign[g.polygon] = want;
                        members.push(g.polygon);
                    } else if sign[g.polygon] != want {
                        consistent = false;
                    }
                }
                i += 1;
            }
            for &p in &members {
                ok[p] = consistent;
            }
        }
        ok
    }

    fn polygon_of(&self, slot: usize) -> usize {
        self.offset.partition_point(|&o| o <= slot) - 1
    }
}
