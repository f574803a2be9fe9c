//! Oracles and generators shared by the integration suites.
#![allow(dead_code)]

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use surfcx::cells::{Dihedral, Perm4};
use surfcx::cubulation::{CubeGluing, Cubulation};
use surfcx::duality::{dual_dehn_surface, verify_duality_counts};
use surfcx::homology::{boundary_matrices, chain_model};
use surfcx::triangulation::{TetGluing, Triangulation};
use surfcx::validate::validate_cubulation;

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_{k-1}`.
pub fn determinantal_factors(a: &[Vec<i64>]) -> Vec<i64> {
    fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
        if rows.len() == 1 {
            return m[rows[0]][cols[0]];
        }
        let mut total = 0;
        for (j, _) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &c)| c)
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * m[rows[0]][cols[j]] * det(m, &rows[1..], &rest);
        }
        total
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let (r, c) = (a.len(), a[0].len());
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=r.min(c) {
        let mut d = 0i64;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                d = d.gcd(&det(a, &rows, &cols));
            }
        }
        if d == 0 {
            out.push(0);
            prev = 0;
        } else {
            out.push(d / prev);
            prev = d;
        }
    }
    out
}

pub fn random_triangulation(rng: &mut impl Rng, tets: usize, open_faces: bool) -> Triangulation {
    let mut slots: Vec<usize> = (0..4 * tets).collect();
    slots.shuffle(rng);
    let mut rows = vec![[None; 4]; tets];
    let mut i = 0;
    while i + 1 < slots.len() {
        let (x, y) = (slots[i], slots[i + 1]);
        i += 2;
        if open_faces && rng.gen_bool(0.2) {
            continue;
        }
        let (f, g) = ((x % 4) as u8, (y % 4) as u8);
        let candidates: Vec<Perm4> = Perm4::all().filter(|p| p.apply(f) == g).collect();
        let p = *candidates.choose(rng).unwrap();
        rows[x / 4][f as usize] = Some(TetGluing {
            tet: y / 4,
            face: g,
            perm: p,
        });
        rows[y / 4][g as usize] = Some(TetGluing {
            tet: x / 4,
            face: f,
            perm: p.inverse(),
        });
    }
    Triangulation::new(rows).expect("random gluings are consistent")
}

pub fn random_cubulation(rng: &mut impl Rng, cubes: usize) -> Cubulation {
    let mut slots: Vec<usize> = (0..6 * cubes).collect();
    slots.shuffle(rng);
    let mut rows = vec![[None; 6]; cubes];
    for pair in slots.chunks(2) {
        let (x, y) = (pair[0], pair[1]);
        let sym = Dihedral::new(rng.gen_range(0..8)).unwrap();
        rows[x / 6][x % 6] = Some(CubeGluing {
            cube: y / 6,
            face: (y % 6) as u8,
            sym,
        });
        rows[y / 6][y % 6] = Some(CubeGluing {
            cube: x / 6,
            face: (x % 6) as u8,
            sym: sym.inverse(),
        });
    }
    Cubulation::new(rows).expect("random gluings are consistent")
}

pub fn boundary_squares_vanish(tri: &Triangulation) -> bool {
    let [d1, d2, d3] = boundary_matrices(&chain_model(tri));
    d1.mul(&d2).is_zero() && d2.mul(&d3).is_zero()
}

/// χ = 0, e = v + 2c and χ(S) = v - c, with the other duality counts.
pub fn assert_euler_identities(cub: &Cubulation) {
    let report = validate_cubulation(cub);
    assert!(report.is_closed_manifold);
    let k = report.counts;
    assert_eq!(k.euler_characteristic(), 0);
    assert_eq!(k.edges, k.vertices + 2 * cub.cube_count());
    let dual = dual_dehn_surface(cub).unwrap();
    assert_eq!(
        dual.sheet.euler_characteristic(),
        k.vertices as i64 - cub.cube_count() as i64
    );
    assert!(verify_duality_counts(cub, &dual));
}

/// Invariant factors by the textbook row/column reduction: move the smallest
/// nonzero entry to the corner, clear its row and column by division with
/// remainder, and fold in any entry it fails to divide.
pub fn elementary_factors(a: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
            else {
                break;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let q = m[i][t] / p;
                for j in t..c {
                    m[i][j] -= q * m[t][j];
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..c {
                let q = m[t][j] / p;
                for i in t..r {
                    m[i][j] -= q * m[i][t];
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..c {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        out.push(m[t][t].abs());
    }
    out
}
